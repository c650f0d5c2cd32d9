# %% [markdown]
# # Roter form and rank-two tensors

# %%
from fractions import Fraction

from ovlab import Spectrum, Sym2, from_spectrum, roter_decompose
from ovlab.identities import verify_prop32, verify_prop34

inst = from_spectrum(Spectrum.from_values([1, 1, 1, 2, 2]))
c = roter_decompose(inst.r_star, inst.h)
print("phi, mu, eta =", c.phi, c.mu, c.eta)

rep = verify_prop32(inst.r_star, inst.h, c)
print(rep.counts())
print("L_B =", rep.get("prop32.pseudosymmetry").params["L_B"])

# %% [markdown]
# For a symmetric tensor of rank two the third power folds back onto the first
# two, and so do the mixed products.

# %%
u, v = [1, 0, 2, -1], [0, 1, 1, Fraction(1, 2)]
A = Sym2.from_array([[u[i] * u[j] - 2 * v[i] * v[j] for j in range(4)] for i in range(4)])
for chk in verify_prop34(A, Sym2.identity(4), seed=1):
    print(chk.status, chk.check_id)
