# %% [markdown]
# # Pointwise affine data
#
# An instance is a positive definite `h` with a symmetric `S`. Building one
# from a spectrum lays the eigenvalues out on the diagonal, or conjugates them
# by a random basis when one is given.

# %%
from ovlab import Spectrum, classify, from_spectrum
from ovlab.affine_verify import verify_section6

for values in ([3, 1, 1, 1], [1, 1, 2, 2], [1, 1, -1, -1], [1, 2, 3, 5, 7]):
    inst = from_spectrum(Spectrum.from_values(values))
    print(values, "->", classify(inst))

# %%
inst = from_spectrum(Spectrum.from_values([1, 1, 2, 2]),
                     basis=[[1, 1, 0, 0], [0, 1, 2, 0], [0, 0, 1, 1], [0, 0, 0, 1]])
print("Ric(R*) in the skewed frame:\n", inst.ric.components())
print("kappa =", inst.kappa)

# %% [markdown]
# The report lists every statement that applies to the point. Checks whose
# hypotheses fail are marked skipped.

# %%
rep = verify_section6(inst)
for c in rep:
    if c.status != "skipped":
        print(f"{c.status:5} {c.check_id}")
