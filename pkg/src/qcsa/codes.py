"""Generator matrices for GRS codes and the CSA / QCSA matrix family.

The CSA matrix is the Cauchy-Vandermonde mixing matrix used by
cross-subspace alignment schemes: the first L columns carry the desired
symbols along Cauchy dimensions 1/(f_j - alpha_n), the remaining N - L
columns align interference along Vandermonde dimensions.  A QCSA matrix is
the same thing with each row n scaled by a nonzero beta_n, which makes its
middle Vandermonde columns a GRS generator and unlocks the dual-code
pairing the channel construction needs.
"""

from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from .field import PrimeField
from .matrix import FieldMatrix, as_residue_vector


class ParameterError(ValueError):
    """Invalid code or scheme parameters."""


def _canonical(field: PrimeField, values) -> tuple:
    return tuple(int(v) for v in as_residue_vector(field, values))


@dataclass(frozen=True)
class GrsSpec:
    """Parameters of an [n, k] generalized Reed-Solomon generator.

    alpha holds n pairwise distinct evaluation points and u holds n
    nonzero column multipliers; entry (i, j) of the generator is
    u_i * alpha_i**j.
    """

    field: PrimeField
    n: int
    k: int
    alpha: tuple
    u: tuple

    def __post_init__(self):
        object.__setattr__(self, "alpha", _canonical(self.field, self.alpha))
        object.__setattr__(self, "u", _canonical(self.field, self.u))
        if len(self.alpha) != self.n or len(self.u) != self.n:
            raise ParameterError(
                f"expected {self.n} evaluation points and multipliers, "
                f"got {len(self.alpha)} and {len(self.u)}"
            )
        if not 0 <= self.k <= self.n:
            raise ParameterError(f"dimension k={self.k} outside [0, n={self.n}]")
        if self.n > self.field.p:
            raise ParameterError(
                f"length n={self.n} needs {self.n} distinct points but GF({self.field.p}) "
                f"has only {self.field.p}"
            )
        if len(set(self.alpha)) != self.n:
            raise ParameterError(f"evaluation points must be distinct: {self.alpha}")
        if any(x == 0 for x in self.u):
            raise ParameterError(f"multipliers must be nonzero: {self.u}")


def grs_generator(spec: GrsSpec) -> FieldMatrix:
    """The n x k generator matrix of the GRS code given by ``spec``."""
    p = spec.field.p
    alpha = np.array(spec.alpha, dtype=np.int64)
    out = np.zeros((spec.n, spec.k), dtype=np.int64)
    col = np.array(spec.u, dtype=np.int64)
    for j in range(spec.k):
        out[:, j] = col
        col = col * alpha % p
    return FieldMatrix(spec.field, out)


def dual_multipliers(field: PrimeField, alpha, u) -> tuple:
    """Column multipliers of the dual GRS code on the same points.

    For each j:  v_j = u_j**-1 * (prod over i != j of (alpha_j - alpha_i))**-1.
    With these, the [n, k] generator on (alpha, u) is exactly orthogonal to
    the [n, n-k] generator on (alpha, v) for every k.  Each factor is a
    nonzero difference of distinct points, so every v_j is nonzero.
    """
    p = field.p
    a = _canonical(field, alpha)
    uu = _canonical(field, u)
    if len(set(a)) != len(a):
        raise ParameterError(f"evaluation points must be distinct: {a}")
    if any(x == 0 for x in uu):
        raise ParameterError(f"multipliers must be nonzero: {uu}")
    if len(a) != len(uu):
        raise ParameterError("alpha and u lengths differ")
    v = []
    for j in range(len(a)):
        prod = 1
        for i in range(len(a)):
            if i != j:
                prod = prod * (a[j] - a[i]) % p
        v.append(pow(uu[j], -1, p) * pow(prod, -1, p) % p)
    return tuple(v)


def _validate_points(field: PrimeField, alpha, f) -> tuple:
    a = _canonical(field, alpha)
    ff = _canonical(field, f)
    n, l = len(a), len(ff)
    if l < 1:
        raise ParameterError("at least one desired-symbol point f is required")
    if l > n - 1:
        raise ParameterError(f"L={l} leaves no interference dimension (need L <= N-1={n - 1})")
    if len(set(a + ff)) != n + l:
        raise ParameterError(
            f"alpha and f must be {n + l} pairwise distinct elements of GF({field.p}): "
            f"alpha={a}, f={ff}"
        )
    return a, ff


# Matrices are immutable, so caching the repeated rebuilds the simulator
# triggers (one per scheme instance) is safe.
@lru_cache(maxsize=512)
def _csa_cached(p: int, alpha: tuple, f: tuple) -> FieldMatrix:
    n, l = len(alpha), len(f)
    out = np.zeros((n, n), dtype=np.int64)
    for j, fj in enumerate(f):
        for i, ai in enumerate(alpha):
            out[i, j] = pow(fj - ai, -1, p)
    col = np.ones(n, dtype=np.int64)
    avec = np.array(alpha, dtype=np.int64)
    for j in range(n - l):
        out[:, l + j] = col
        col = col * avec % p
    return FieldMatrix(PrimeField(p), out)


def csa_matrix(field: PrimeField, alpha, f) -> FieldMatrix:
    """The N x N Cauchy-Vandermonde matrix of a classical CSA scheme.

    Row n is [1/(f_1 - alpha_n), ..., 1/(f_L - alpha_n), 1, alpha_n, ...,
    alpha_n**(N-L-1)].  Distinctness of the N + L points makes it
    invertible.  Any 1 <= L <= N-1 is accepted here; the tighter L <= N/2
    restriction only applies on the channel-construction path.
    """
    a, ff = _validate_points(field, alpha, f)
    return _csa_cached(field.p, a, ff)


@dataclass(frozen=True)
class QcsaParams:
    """Parameter bundle for one QCSA matrix / channel construction.

    N servers, L desired symbols per instance, evaluation points alpha
    (one per server), row multipliers beta (nonzero; on the channel path
    this is the free multiplier vector u), and desired-symbol points f.
    alpha and f together must be N + L distinct elements, which forces
    q >= N + L; the channel construction additionally needs L <= N/2.
    """

    field: PrimeField
    N: int
    L: int
    alpha: tuple
    beta: tuple
    f: tuple

    def __post_init__(self):
        object.__setattr__(self, "alpha", _canonical(self.field, self.alpha))
        object.__setattr__(self, "beta", _canonical(self.field, self.beta))
        object.__setattr__(self, "f", _canonical(self.field, self.f))
        if self.N < 2:
            raise ParameterError(f"need at least 2 servers, got N={self.N}")
        if len(self.alpha) != self.N:
            raise ParameterError(f"alpha must have N={self.N} entries, got {len(self.alpha)}")
        if len(self.beta) != self.N:
            raise ParameterError(f"beta must have N={self.N} entries, got {len(self.beta)}")
        if len(self.f) != self.L:
            raise ParameterError(f"f must have L={self.L} entries, got {len(self.f)}")
        if self.L < 1:
            raise ParameterError(f"need at least one desired symbol, got L={self.L}")
        if 2 * self.L > self.N:
            raise ParameterError(f"L={self.L} exceeds N/2={self.N / 2}; not constructible")
        if any(b == 0 for b in self.beta):
            raise ParameterError(f"beta entries must be nonzero: {self.beta}")
        if len(set(self.alpha + self.f)) != self.N + self.L:
            raise ParameterError(
                f"alpha and f must be {self.N + self.L} pairwise distinct elements "
                f"of GF({self.field.p}): alpha={self.alpha}, f={self.f}"
            )

    @classmethod
    def default(cls, field: PrimeField, n: int, l: int, beta=None) -> "QcsaParams":
        """Deterministic parameters: alpha_n = n-1, f_j = N+j-1, beta = 1."""
        alpha = tuple(range(n))
        f = tuple(range(n, n + l))
        if beta is None:
            beta = (1,) * n
        return cls(field, n, l, alpha, tuple(beta), f)

    @classmethod
    def random(cls, field: PrimeField, n: int, l: int, rng: np.random.Generator) -> "QcsaParams":
        """Random distinct points and nonzero multipliers from ``rng``."""
        if n + l > field.p:
            raise ParameterError(f"GF({field.p}) has fewer than {n + l} elements")
        points = rng.permutation(field.p)[: n + l]
        beta = rng.integers(1, field.p, size=n)
        return cls(field, n, l, tuple(points[:n]), tuple(beta), tuple(points[n:]))

    def with_beta(self, beta) -> "QcsaParams":
        return replace(self, beta=_canonical(self.field, beta))

    @property
    def half_ceil(self) -> int:
        return (self.N + 1) // 2

    @property
    def half_floor(self) -> int:
        return self.N // 2

    def to_dict(self) -> dict:
        return {
            "p": self.field.p,
            "N": self.N,
            "L": self.L,
            "alpha": list(self.alpha),
            "beta": list(self.beta),
            "f": list(self.f),
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "QcsaParams":
        return cls(
            PrimeField(doc["p"]),
            int(doc["N"]),
            int(doc["L"]),
            tuple(doc["alpha"]),
            tuple(doc["beta"]),
            tuple(doc["f"]),
        )


def qcsa_matrix(params: QcsaParams) -> FieldMatrix:
    """The N x N QCSA matrix, built entry by entry.

    Column layout: L Cauchy columns beta_n/(f_j - alpha_n), then N - L
    scaled Vandermonde columns beta_n * alpha_n**t.  The first ceil(N/2) of
    the Vandermonde columns form the generator of an [N, ceil(N/2)] GRS
    code on (alpha, beta).  Row-scaling an invertible Cauchy-Vandermonde
    matrix by nonzero beta keeps it invertible.
    """
    p = params.field.p
    n, l = params.N, params.L
    out = np.zeros((n, n), dtype=np.int64)
    beta = np.array(params.beta, dtype=np.int64)
    avec = np.array(params.alpha, dtype=np.int64)
    for j, fj in enumerate(params.f):
        for i, ai in enumerate(params.alpha):
            out[i, j] = params.beta[i] * pow(fj - ai, -1, p) % p
    col = beta.copy()
    for j in range(n - l):
        out[:, l + j] = col
        col = col * avec % p
    return FieldMatrix(params.field, out)


def _check_qcsa_shape(q: FieldMatrix, params: QcsaParams) -> None:
    if q.shape != (params.N, params.N):
        raise ParameterError(f"expected a {params.N} x {params.N} QCSA matrix, got {q.shape}")
    if q.field.p != params.field.p:
        raise ParameterError(
            f"matrix over GF({q.field.p}) does not match parameters over GF({params.field.p})"
        )


def qcsa_grs_submatrix(q: FieldMatrix, params: QcsaParams, width: int) -> FieldMatrix:
    """The GRS generator block: columns L+1 .. L+width of the QCSA matrix.

    width must be floor(N/2) or ceil(N/2); those are the two GRS blocks
    the matrix exposes (identical when N is even).
    """
    _check_qcsa_shape(q, params)
    if width not in (params.half_floor, params.half_ceil):
        raise ParameterError(
            f"GRS block width must be {params.half_floor} or {params.half_ceil}, got {width}"
        )
    return q.take_columns(range(params.L, params.L + width))


def qcsa_cauchy_block(q: FieldMatrix, params: QcsaParams) -> FieldMatrix:
    """Columns 1 .. L (the Cauchy part)."""
    _check_qcsa_shape(q, params)
    return q.take_columns(range(params.L))


def qcsa_trailing_block(q: FieldMatrix, params: QcsaParams) -> FieldMatrix:
    """Columns L + ceil(N/2) + 1 .. N (the Vandermonde tail past the GRS block)."""
    _check_qcsa_shape(q, params)
    return q.take_columns(range(params.L + params.half_ceil, params.N))
