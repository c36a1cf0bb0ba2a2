"""From the classical CSA mixing matrix to its row-scaled QCSA form.

A CSA answer vector is CSA(alpha, f) times the stacked symbols: L desired
symbols ride the Cauchy columns 1/(f_j - alpha_n), the N - L interference
symbols ride the Vandermonde columns.  Scaling row n by a nonzero beta_n
gives the QCSA matrix, whose middle Vandermonde columns form a GRS
generator on (alpha, beta).  That one observation is what lets two such
matrices be paired through dual multipliers.
"""

from qcsa import (
    FieldMatrix,
    GrsSpec,
    PrimeField,
    QcsaParams,
    csa_matrix,
    grs_generator,
    qcsa_cauchy_block,
    qcsa_grs_submatrix,
    qcsa_matrix,
    qcsa_trailing_block,
)
from qcsa.matrix import hstack

gf13 = PrimeField(13)
n, l = 6, 2

params = QcsaParams.default(gf13, n, l)
print(f"N={n} servers, L={l} desired symbols, over GF(13)")
print(f"alpha = {params.alpha}, f = {params.f}")

csa = csa_matrix(gf13, params.alpha, params.f)
print("\nclassical CSA matrix (beta = 1):")
print(csa.array)
print(f"invertible: rank = {csa.rank()}")

beta = (3, 1, 4, 1, 5, 9)
q = qcsa_matrix(params.with_beta(beta))
print(f"\nQCSA matrix with beta = {beta} (each row of CSA scaled):")
print(q.array)
assert q == FieldMatrix.diagonal(gf13, beta) @ csa
print("equals Diag(beta) @ CSA exactly")

# Column anatomy: Cauchy block, GRS block, Vandermonde tail.
params_b = params.with_beta(beta)
cauchy = qcsa_cauchy_block(q, params_b)
grs_block = qcsa_grs_submatrix(q, params_b, width=3)  # ceil(6/2)
tail = qcsa_trailing_block(q, params_b)
print(f"\ncolumns 1..{l}: Cauchy block, shape {cauchy.shape}")
print(f"columns {l + 1}..{l + 3}: GRS block, shape {grs_block.shape}")
print(f"columns {l + 4}..{n}: Vandermonde tail, shape {tail.shape}")

assert grs_block == grs_generator(GrsSpec(gf13, n, 3, params.alpha, beta))
print("the GRS block really is the [6,3] generator on (alpha, beta)")

assert hstack([cauchy, grs_block, tail]) == q
print("and the three blocks reassemble the matrix exactly")
