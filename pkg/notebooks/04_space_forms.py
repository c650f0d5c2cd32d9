# %% [markdown]
# # Hypersurfaces of space forms
#
# The curvature comes from the second fundamental form `H` and the ambient
# constant `c`.

# %%
from fractions import Fraction

from ovlab import Spectrum
from ovlab.spaceform import SpaceFormInstance, verify_gauss, verify_thm81

for c in (0, 1, Fraction(-1, 2)):
    inst = SpaceFormInstance.from_spectrum(Spectrum.of([(1, 1), (2, 2), (3, 2)]), c)
    rep = verify_thm81(inst)
    print(f"c = {c}: mu = {rep.get('sf.shape_proportional').params['mu']}, ok = {rep.ok}")

# %%
print(verify_gauss(SpaceFormInstance.from_spectrum(Spectrum.from_values([1, 2, 3, 0]), 1)))
