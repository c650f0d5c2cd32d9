# %% [markdown]
# # Tensors and the product calculus
#
# Components are stored as integer numerators over one shared denominator, so
# every identity below is checked with exact equality.

# %%
from fractions import Fraction

from ovlab import G_tensor, Sym2, curv_action, kulkarni_nomizu, ricci, scalar, tachibana, weyl
from ovlab.tensors import make_curv4, raise_index

g = Sym2.identity(4)
G = G_tensor(g)
print("G[0,1,1,0] =", G[0, 1, 1, 0], " G[0,1,0,1] =", G[0, 1, 0, 1])
print("Ric(G) == 3 g:", ricci(G, g) == g * 3, " scalar:", scalar(G, g))

# %% [markdown]
# A curvature-type tensor from two symmetric forms, and its Weyl part.

# %%
E = Sym2.from_array([[1, 2, 0, 0], [2, 0, 1, 0], [0, 1, Fraction(1, 3), 0], [0, 0, 0, -1]])
F = Sym2.diag([1, 1, 2, 5])
B = kulkarni_nomizu(E, F)
W = weyl(B, g)
print("Weyl is trace free:", ricci(W, g).is_zero())

# %%
# B.g always vanishes; B.B against Q(g, B) usually does not line up
print("B.g == 0:", curv_action(B, g, g).is_zero())
print("B.B == Q(g,B):", curv_action(B, B, g) == tachibana(g, B))

# %% [markdown]
# Hand-typed components are validated on construction.

# %%
try:
    bad = [[[[0] * 3 for _ in range(3)] for _ in range(3)] for _ in range(3)]
    bad[0][1][0][1] = bad[1][0][0][1] = 1
    make_curv4(3, bad)
except ValueError as exc:
    print("rejected:", exc)

print(raise_index(Sym2.diag([2, 5]), Sym2.diag([1, -1])).components())
