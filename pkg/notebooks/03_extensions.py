# %% [markdown]
# # Extensions of Kato windows
#
# Random extensions 0 -> X -> Y -> Z -> 0 of Kato windows stay Kato.  The
# middle term carries a random cocycle and is then conjugated at every
# cell, so the checkers never see a split presentation.

# %%
import numpy as np

from indpro import is_kato, kato_failure, laurent_window, random_kato_window
from indpro.harness import HARNESSES, HarnessParams, gen_extension, run_trials

rng = np.random.default_rng(0)
X = random_kato_window(3, 0, 4, 4, rng)
Z = laurent_window(3, 0, 4)
Y, ses = gen_extension(X, Z, rng)
print("dims of the corner:", X.dim(0, 4), Y.dim(0, 4), Z.dim(0, 4))
print("middle term is Kato:", is_kato(Y), kato_failure(Y))

# %% [markdown]
# The same check as a seeded property suite, exactly as the command line
# runs it.

# %%
report = run_trials("extension", 5, 7, HARNESSES["extension"](HarnessParams(p=3)))
print(report.text())
