# %% [markdown]
# # Laurent series as a window of lattices
#
# The Tate space GF(p)((t)) is the ind-pro limit of the quotients
# t^-j GF(p)[[t]] / t^-i GF(p)[[t]].  On a finite window [lo, hi] each cell
# (i, j) holds the span of t^-j, ..., t^-(i+1).

# %%
import numpy as np

from indpro import (charac_roundtrip, dualize, is_admissible, is_kato, laurent_window,
                    reversal, shift_lattice, uroof_compose, uroof_equiv, URoof)

L = laurent_window(3, -2, 2)
for i in range(L.lo, L.hi + 1):
    print(" ".join(f"{L.dim(i, j) if j >= i else '.':>2}" for j in range(L.lo, L.hi + 1)))

# %% [markdown]
# The mono pads a deeper power of t, the epi forgets the shallowest one.

# %%
print(L.mono(0, 1).array)
print(L.epi(-1, 1).array)

# %%
print("admissible:", is_admissible(L)[0])
print("kato:", is_kato(L))
print("roundtrip:", charac_roundtrip(L))

# %% [markdown]
# Duality flips the window, and reversing each cell basis identifies the
# result with the Laurent window on [-hi, -lo].

# %%
D = dualize(L)
Y = laurent_window(3, -L.hi, -L.lo)
F = L.field
same = all(reversal(F, Y.dims[(i, j + 1)]) @ m @ reversal(F, D.dims[(i, j)]) == Y.monos[(i, j)]
           for (i, j), m in D.monos.items())
print("dual is Laurent again:", same)

# %% [markdown]
# Multiplication by t^n is a roof; going there and back is the identity.

# %%
there = shift_lattice(L, 1)
back = shift_lattice(there.target, -1)
print(uroof_equiv(uroof_compose(back, there), URoof.identity(L)))
print(np.array([[there.component(i, j).rank() for j in range(-2, 3)] for i in range(-2, 3)]))
