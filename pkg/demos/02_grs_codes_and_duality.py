"""Generalized Reed-Solomon generators and the exact dual pairing.

The key fact the channel construction leans on: for evaluation points
alpha and any nonzero multipliers u, there is a closed-form multiplier
vector v that makes the [n, k] code on (alpha, u) and the [n, n-k] code
on (alpha, v) exactly orthogonal, for every k at once.
"""

import numpy as np

from qcsa import GrsSpec, PrimeField, dual_multipliers, grs_generator

gf13 = PrimeField(13)
alpha = (1, 2, 3, 4, 5)
u = (2, 2, 2, 2, 2)

spec = GrsSpec(gf13, n=5, k=3, alpha=alpha, u=u)
g = grs_generator(spec)
print("generator of the [5,3] code on (alpha, u) over GF(13):")
print(g.array)
print("entry (i, j) is u_i * alpha_i**j; columns are u, u*alpha, u*alpha^2")

v = dual_multipliers(gf13, alpha, u)
print(f"\ndual multipliers v = {v}")
print("v_j = 1/u_j * prod over i != j of 1/(alpha_j - alpha_i)")

g_dual = grs_generator(GrsSpec(gf13, 5, 2, alpha, v))
print("\ngenerator of the dual [5,2] code on (alpha, v):")
print(g_dual.array)

product = g.T @ g_dual
print(f"\nG_k^T @ G_(n-k) = {product.array.tolist()}  (exactly zero)")
assert product.is_zero()

# The same v works for every split k + (n - k).
for k in range(1, 5):
    gk = grs_generator(GrsSpec(gf13, 5, k, alpha, u))
    gnk = grs_generator(GrsSpec(gf13, 5, 5 - k, alpha, v))
    assert (gk.T @ gnk).is_zero()
    print(f"k={k}: [5,{k}] x [5,{5 - k}] product is zero")

# Random draws behave identically.
rng = np.random.default_rng(7)
for trial in range(3):
    pts = rng.permutation(13)[:6]
    mults = rng.integers(1, 13, size=6)
    a6 = tuple(int(x) for x in pts)
    u6 = tuple(int(x) for x in mults)
    v6 = dual_multipliers(gf13, a6, u6)
    gk = grs_generator(GrsSpec(gf13, 6, 4, a6, u6))
    gnk = grs_generator(GrsSpec(gf13, 6, 2, a6, v6))
    assert (gk.T @ gnk).is_zero()
    print(f"random draw {trial}: alpha={a6} u={u6} -> duality holds")
