"""The N-sum box layer: SSO matrices, feasible channels, QCSA synthesis.

An N-sum box is the classical face of an entanglement-assisted quantum
multiple-access channel: N servers each control two coordinates of a
2N-long input vector x, the receiver measures y = M x over GF(q), and the
whole exchange costs N qudits.  A channel matrix M is feasible exactly
when it can be written

    M = (0_N  I_N) (G  H)^{-1}

with G strongly self-orthogonal (rank N and G^T J G = 0 for the
symplectic form J) and [G H] invertible.  Only this classical functional
contract is modeled here; the stabilizer protocol realizing it is taken
as given.

``build_qcsa_box`` synthesizes the specific feasible box that decodes two
cross-subspace-aligned instances over the air: G stacks the mutually dual
GRS blocks of a QCSA matrix pair (the classic CSS recipe for producing an
SSO matrix), H collects the leftover columns, and the resulting M routes
the desired symbols, plus a fixed tail of interference symbols, straight
to the output.
"""

from dataclasses import dataclass

import numpy as np

from .codes import (
    ParameterError,
    QcsaParams,
    dual_multipliers,
    qcsa_cauchy_block,
    qcsa_grs_submatrix,
    qcsa_matrix,
    qcsa_trailing_block,
)
from .field import PrimeField
from .matrix import (
    FieldMatrix,
    Permutation,
    SingularMatrixError,
    block_diag,
    hstack,
    permutation_matrix,
)


class NotSSOError(ValueError):
    """G is not strongly self-orthogonal."""


class SingularGHError(ValueError):
    """[G H] is not invertible, so no channel matrix exists for the pair."""


class DualityViolationError(ValueError):
    """The supplied QCSA pair's GRS blocks are not mutually orthogonal."""


def symplectic_form(field: PrimeField, n: int) -> FieldMatrix:
    """The 2n x 2n block matrix with -I top-right and I bottom-left."""
    out = np.zeros((2 * n, 2 * n), dtype=np.int64)
    out[:n, n:] = -np.eye(n, dtype=np.int64) % field.p
    out[n:, :n] = np.eye(n, dtype=np.int64)
    return FieldMatrix(field, out)


def is_sso(g: FieldMatrix) -> bool:
    """Strong self-orthogonality: full column rank N and G^T J G = 0."""
    if g.rows != 2 * g.cols:
        raise ValueError(f"expected a 2N x N matrix, got {g.shape}")
    n = g.cols
    if g.rank() != n:
        return False
    j = symplectic_form(g.field, n)
    return (g.T @ j @ g).is_zero()


def selector_row_indices(n: int, l: int) -> tuple:
    """1-based coordinates of x that the QCSA channel forwards to y.

    Four runs: desired symbols of instance 1, trailing interference of
    instance 1, desired symbols of instance 2, trailing interference of
    instance 2.
    """
    if 2 * l > n:
        raise ParameterError(f"L={l} exceeds N/2={n / 2}")
    ceil_half = (n + 1) // 2
    floor_half = n // 2
    return tuple(
        list(range(1, l + 1))
        + list(range(l + ceil_half + 1, n + 1))
        + list(range(n + 1, n + l + 1))
        + list(range(n + l + floor_half + 1, 2 * n + 1))
    )


def selector_matrix(field: PrimeField, n: int, l: int) -> FieldMatrix:
    """The N x 2N row selector the synthesized channel realizes.

    Assembled literally from its four block rows:

        [ I_L  0    0                  | 0    0    0                 ]
        [ 0    0    I_{floor(N/2)-L}   | 0    0    0                 ]
        [ 0    0    0                  | I_L  0    0                 ]
        [ 0    0    0                  | 0    0    I_{ceil(N/2)-L}   ]

    with column group widths (L, ceil(N/2), floor(N/2)-L) on each half.
    Every row is a distinct standard basis vector of length 2N.
    """
    if 2 * l > n:
        raise ParameterError(f"L={l} exceeds N/2={n / 2}")
    ceil_half = (n + 1) // 2
    floor_half = n // 2
    out = np.zeros((n, 2 * n), dtype=np.int64)
    row = 0
    for offset, width in (
        (0, l),
        (l + ceil_half, floor_half - l),
        (n, l),
        (n + l + floor_half, ceil_half - l),
    ):
        for t in range(width):
            out[row, offset + t] = 1
            row += 1
    return FieldMatrix(field, out)


def gh_column_permutation(n: int, l: int) -> Permutation:
    """Column order mapping Block-Diag(Qu, Qv) onto [G | H].

    The first N images pick out the two GRS blocks (these become G), the
    last N sweep up the Cauchy columns, the Vandermonde tails, and, for
    odd N, the one GRS column dropped from G.
    """
    if 2 * l > n:
        raise ParameterError(f"L={l} exceeds N/2={n / 2}")
    ceil_half = (n + 1) // 2
    floor_half = n // 2
    image = (
        list(range(l + 1, l + ceil_half + 1))
        + list(range(n + l + 1, n + l + floor_half + 1))
        + list(range(1, l + 1))
        + list(range(l + ceil_half + 1, n + 1))
        + list(range(n + 1, n + l + 1))
        + list(range(n + l + floor_half + 1, 2 * n + 1))
    )
    return Permutation(image)


@dataclass(frozen=True)
class NSumBox:
    """A feasible channel y = M x with its (G, H) witness.

    M is N x 2N, G and H are 2N x N, and M = (0_N I_N)(G H)^{-1} holds
    exactly.  ``pi`` is present when the box came from the QCSA synthesis
    and records how [G H] permutes the columns of Block-Diag(Qu, Qv).
    Server n controls input coordinates n and N + n; one use costs N
    qudits.
    """

    field: PrimeField
    N: int
    M: FieldMatrix
    G: FieldMatrix
    H: FieldMatrix
    pi: Permutation | None = None

    def transmit(self, x) -> np.ndarray:
        """Receiver's measurement outcome y = M x for a 2N-long input."""
        return self.M.matvec(x)

    def to_dict(self) -> dict:
        return {
            "p": self.field.p,
            "N": self.N,
            "M": self.M.to_dict(),
            "G": self.G.to_dict(),
            "H": self.H.to_dict(),
            "pi": self.pi.to_dict() if self.pi is not None else None,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "NSumBox":
        field = PrimeField(doc["p"])
        n = int(doc["N"])
        m = FieldMatrix.from_dict(doc["M"])
        g = FieldMatrix.from_dict(doc["G"])
        h = FieldMatrix.from_dict(doc["H"])
        for mat, shape in ((m, (n, 2 * n)), (g, (2 * n, n)), (h, (2 * n, n))):
            if mat.field.p != field.p:
                raise ValueError("matrix modulus disagrees with the box header")
            if mat.shape != shape:
                raise ValueError(f"expected shape {shape}, got {mat.shape}")
        pi = Permutation.from_dict(doc["pi"]) if doc.get("pi") is not None else None
        return cls(field, n, m, g, h, pi)


def channel_from_gh(g: FieldMatrix, h: FieldMatrix) -> NSumBox:
    """Feasible channel for an arbitrary SSO G and full-rank [G H].

    Accepts any valid witness pair, not just the QCSA-synthesized one, so
    this doubles as a general feasibility checker.
    """
    g._check_field(h)
    if g.rows != 2 * g.cols or h.shape != g.shape:
        raise ValueError(f"G and H must both be 2N x N, got {g.shape} and {h.shape}")
    if not is_sso(g):
        raise NotSSOError("G must be strongly self-orthogonal")
    gh = hstack([g, h])
    try:
        gh_inv = gh.inverse()
    except SingularMatrixError as exc:
        raise SingularGHError("[G H] is singular; the channel is infeasible") from exc
    n = g.cols
    m = gh_inv.take_rows(range(n, 2 * n))
    return NSumBox(g.field, n, m, g, h)


def build_qcsa_box(qu: FieldMatrix, qv: FieldMatrix, params: QcsaParams) -> NSumBox:
    """Synthesize the channel that decodes a QCSA matrix pair over the air.

    ``params.beta`` is the free multiplier vector u; the dual vector v is
    recomputed here and the supplied pair is checked against the
    reconstruction, because the dual pairing is the load-bearing
    hypothesis behind self-orthogonality.

    G = Block-Diag of the [N, ceil(N/2)] GRS block of Qu and the
    [N, floor(N/2)] GRS block of Qv (for odd N the surplus GRS column of
    Qv is demoted to H).  H gathers the remaining columns of
    Block-Diag(Qu, Qv): Qu's Cauchy block, Qu's Vandermonde tail, Qv's
    Cauchy block, the demoted column when N is odd, then Qv's tail.  The
    channel matrix is the row selector times Block-Diag(Qu, Qv)^{-1}.
    """
    n, l = params.N, params.L
    field = params.field
    u = params.beta
    v = dual_multipliers(field, params.alpha, u)

    expected_qu = qcsa_matrix(params)
    expected_qv = qcsa_matrix(params.with_beta(v))
    gamma_top = qcsa_grs_submatrix(qu, params, params.half_ceil)
    gamma_bot = qcsa_grs_submatrix(qv, params, params.half_floor)
    if not (gamma_top.T @ gamma_bot).is_zero():
        raise DualityViolationError(
            "GRS blocks of the supplied pair are not mutually orthogonal"
        )
    if qu != expected_qu:
        raise ParameterError("Qu does not match the matrix rebuilt from (alpha, u, f)")
    if qv != expected_qv:
        raise ParameterError("Qv does not match the dual matrix rebuilt from (alpha, u, f)")

    # G: the two mutually dual GRS blocks on the diagonal.
    g = block_diag([gamma_top, gamma_bot])

    # H: leftover columns, in the fixed order that matches the column
    # permutation below.  Each piece lives in one half of the row space.
    def upper(cols: FieldMatrix) -> FieldMatrix:
        return block_diag([cols, FieldMatrix.zeros(field, n, 0)])

    def lower(cols: FieldMatrix) -> FieldMatrix:
        return block_diag([FieldMatrix.zeros(field, n, 0), cols])

    h_pieces = [
        upper(hstack([qcsa_cauchy_block(qu, params), qcsa_trailing_block(qu, params)])),
        lower(qcsa_cauchy_block(qv, params)),
    ]
    if n % 2 == 1:
        h_pieces.append(lower(qv.take_columns([l + params.half_ceil - 1])))
    h_pieces.append(lower(qcsa_trailing_block(qv, params)))
    h = hstack(h_pieces)

    pi = gh_column_permutation(n, l)
    bd = block_diag([qu, qv])
    m = selector_matrix(field, n, l) @ bd.inverse()
    return NSumBox(field, n, m, g, h, pi)


@dataclass(frozen=True)
class QcsaSystem:
    """A complete construction bundle: parameters, matrix pair, channel."""

    params: QcsaParams
    v: tuple
    qu: FieldMatrix
    qv: FieldMatrix
    box: NSumBox

    @property
    def u(self) -> tuple:
        return self.params.beta

    def to_dict(self) -> dict:
        return {
            "params": self.params.to_dict(),
            "u": list(self.u),
            "v": list(self.v),
            "Qu": self.qu.to_dict(),
            "Qv": self.qv.to_dict(),
            "G": self.box.G.to_dict(),
            "H": self.box.H.to_dict(),
            "pi": self.box.pi.to_dict() if self.box.pi is not None else None,
            "M_Q": self.box.M.to_dict(),
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "QcsaSystem":
        params = QcsaParams.from_dict(doc["params"])
        p, n = params.field.p, params.N
        shapes = {
            "Qu": (n, n),
            "Qv": (n, n),
            "G": (2 * n, n),
            "H": (2 * n, n),
            "M_Q": (n, 2 * n),
        }
        mats = {}
        for key, shape in shapes.items():
            mats[key] = FieldMatrix.from_dict(doc[key])
            if mats[key].field.p != p:
                raise ValueError(f"{key} modulus disagrees with the parameter header")
            if mats[key].shape != shape:
                raise ValueError(f"{key} must have shape {shape}, got {mats[key].shape}")
        if tuple(doc["u"]) != params.beta:
            raise ValueError("u disagrees with the parameter header")
        pi = Permutation.from_dict(doc["pi"]) if doc.get("pi") is not None else None
        if pi is not None and pi.n != 2 * n:
            raise ValueError(f"pi must permute [1..{2 * n}], got length {pi.n}")
        box = NSumBox(params.field, params.N, mats["M_Q"], mats["G"], mats["H"], pi)
        return cls(params, tuple(int(x) for x in doc["v"]), mats["Qu"], mats["Qv"], box)


def build_qcsa_system(params: QcsaParams) -> QcsaSystem:
    """Construct Qu, Qv, and the feasible box from scratch."""
    v = dual_multipliers(params.field, params.alpha, params.beta)
    qu = qcsa_matrix(params)
    qv = qcsa_matrix(params.with_beta(v))
    box = build_qcsa_box(qu, qv, params)
    return QcsaSystem(params, v, qu, qv, box)


def verify_box(box: NSumBox) -> dict:
    """Re-check the feasibility invariants of a (possibly deserialized) box."""
    field, n = box.field, box.N
    checks = {}
    checks["shapes"] = (
        box.M.shape == (n, 2 * n) and box.G.shape == (2 * n, n) and box.H.shape == (2 * n, n)
    )
    if not checks["shapes"]:
        return checks
    j = symplectic_form(field, n)
    checks["g_rank"] = box.G.rank() == n
    checks["g_symplectic_orthogonal"] = (box.G.T @ j @ box.G).is_zero()
    gh = hstack([box.G, box.H])
    checks["gh_full_rank"] = gh.rank() == 2 * n
    if checks["gh_full_rank"]:
        bottom = gh.inverse().take_rows(range(n, 2 * n))
        checks["m_from_gh"] = box.M == bottom
    else:
        checks["m_from_gh"] = False
    checks["m_annihilates_g"] = (box.M @ box.G).is_zero()
    checks["m_inverts_h"] = box.M @ box.H == FieldMatrix.identity(field, n)
    return checks


def verify_system(system: QcsaSystem) -> dict:
    """Named pass/fail re-checks for a full construction bundle."""
    params = system.params
    field, n, l = params.field, params.N, params.L
    checks = {}
    v = dual_multipliers(field, params.alpha, params.beta)
    checks["dual_multipliers"] = tuple(system.v) == v
    checks["qu_matches_params"] = system.qu == qcsa_matrix(params)
    checks["qv_matches_dual"] = system.qv == qcsa_matrix(params.with_beta(v))
    gamma_top = qcsa_grs_submatrix(system.qu, params, params.half_ceil)
    gamma_bot = qcsa_grs_submatrix(system.qv, params, params.half_floor)
    checks["grs_duality"] = (gamma_top.T @ gamma_bot).is_zero()
    checks.update(verify_box(system.box))
    if system.box.pi is None:
        checks["pi_present"] = False
        return checks
    checks["pi_present"] = True
    bd = block_diag([system.qu, system.qv])
    p_pi = permutation_matrix(field, system.box.pi)
    checks["gh_is_permuted_blockdiag"] = hstack([system.box.G, system.box.H]) == bd @ p_pi
    checks["selector_identity"] = system.box.M @ bd == selector_matrix(field, n, l)
    return checks
