# %% [markdown]
# # Strictifying pro systems
#
# A pro system of finite-dimensional spaces is isomorphic to a strict one,
# obtained by intersecting the images of all longer transition maps.

# %%
from indpro import GF, Mat, ProRoof, ProWindow, roof_compose, roof_equiv, strictify_pro

F = GF(2)
P = Mat.from_array(F, [[1, 0], [0, 0]])
Nil = Mat.from_array(F, [[0, 1], [0, 0]])

# %% [markdown]
# An idempotent keeps a line alive at every stage.

# %%
Y = ProWindow(F, [2, 2, 2, 1], [P, P, Mat.from_array(F, [[1], [0]])])
S = strictify_pro(Y)
print("strict dims:", S.strict.dims)
print("inclusions:", [c.array.T.tolist() for c in S.fwd.components])

# %% [markdown]
# A nilpotent kills everything after two steps.

# %%
Z = ProWindow(F, [2, 2, 2, 0], [Nil, Nil, Mat.zeros(F, 2, 0)])
T = strictify_pro(Z)
print("strict dims:", T.strict.dims, "drops per index:", T.steps)

# %% [markdown]
# Both comparison roofs are inverse to each other up to equivalence.

# %%
print(roof_equiv(roof_compose(S.fwd, S.bwd), ProRoof.identity(Y)))
print(roof_equiv(roof_compose(S.bwd, S.fwd), ProRoof.identity(S.strict)))
