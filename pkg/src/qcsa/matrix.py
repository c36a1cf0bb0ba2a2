"""Dense exact linear algebra over GF(p).

A :class:`FieldMatrix` wraps a read-only numpy int64 array of canonical
residues together with its :class:`~qcsa.field.PrimeField`.  All kernels
reduce eagerly, and long dot products are accumulated in chunks sized so
that no intermediate ever overflows 64 bits (a single product fits because
moduli are capped at 2**31 - 1).

Shapes with zero rows or zero columns are legal values throughout: the
channel construction produces identity blocks whose width can vanish, and
block assembly must absorb them silently.

Elimination uses a fixed pivot rule (first nonzero entry in column order)
so inverses, ranks, and error cases are deterministic.
"""

import numpy as np

from .field import FieldElement, FieldMismatchError, PrimeField

_I64_MAX = 2**63 - 1


class SingularMatrixError(ArithmeticError):
    """Square matrix with rank below its size; no inverse exists."""


def _mod_matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact (a @ b) mod p without int64 overflow."""
    inner = a.shape[1]
    if inner == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    # Largest number of (p-1)^2 products that can pile up next to an
    # already-reduced partial sum without leaving int64.
    step = (_I64_MAX - (p - 1)) // ((p - 1) ** 2) if p > 2 else inner
    if step >= inner:
        return (a @ b) % p
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for k in range(0, inner, step):
        out += a[:, k:k + step] @ b[k:k + step, :]
        out %= p
    return out


def as_residue_vector(field: PrimeField, values, length: int | None = None) -> np.ndarray:
    """Coerce a sequence of ints / FieldElements to a 1-D residue array."""
    items = list(values)
    for x in items:
        if isinstance(x, FieldElement) and x.field.p != field.p:
            raise FieldMismatchError(
                f"vector entry from GF({x.field.p}) used in GF({field.p})"
            )
    arr = np.array([int(x) for x in items], dtype=np.int64) % field.p
    if length is not None and arr.shape[0] != length:
        raise ValueError(f"expected a vector of length {length}, got {arr.shape[0]}")
    return arr


class FieldMatrix:
    """Immutable dense matrix over GF(p)."""

    __slots__ = ("field", "_data")

    def __init__(self, field: PrimeField, data):
        arr = np.array(data, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError(f"matrix data must be 2-D, got ndim={arr.ndim}")
        arr %= field.p
        arr.flags.writeable = False
        self.field = field
        self._data = arr

    # -- constructors -------------------------------------------------

    @classmethod
    def zeros(cls, field: PrimeField, rows: int, cols: int) -> "FieldMatrix":
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: PrimeField, n: int) -> "FieldMatrix":
        return cls(field, np.eye(n, dtype=np.int64))

    @classmethod
    def diagonal(cls, field: PrimeField, entries) -> "FieldMatrix":
        vec = as_residue_vector(field, entries)
        return cls(field, np.diag(vec))

    @classmethod
    def column(cls, field: PrimeField, values) -> "FieldMatrix":
        return cls(field, as_residue_vector(field, values).reshape(-1, 1))

    @classmethod
    def from_dict(cls, doc: dict) -> "FieldMatrix":
        field = PrimeField(doc["p"])
        rows, cols = int(doc["rows"]), int(doc["cols"])
        data = np.array(doc["data"], dtype=np.int64).reshape(rows, cols)
        return cls(field, data)

    # -- basic properties ----------------------------------------------

    @property
    def rows(self) -> int:
        return self._data.shape[0]

    @property
    def cols(self) -> int:
        return self._data.shape[1]

    @property
    def shape(self) -> tuple:
        return self._data.shape

    @property
    def array(self) -> np.ndarray:
        """Read-only view of the underlying residue array."""
        return self._data

    def is_zero(self) -> bool:
        return not self._data.any()

    # -- arithmetic -----------------------------------------------------

    def _check_field(self, other: "FieldMatrix") -> None:
        if self.field.p != other.field.p:
            raise FieldMismatchError(
                f"mixing GF({self.field.p}) and GF({other.field.p}) matrices"
            )

    def __matmul__(self, other):
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        self._check_field(other)
        if self.cols != other.rows:
            raise ValueError(
                f"cannot multiply {self.shape} by {other.shape}: inner dimensions differ"
            )
        return FieldMatrix(self.field, _mod_matmul(self._data, other._data, self.field.p))

    def __add__(self, other):
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        self._check_field(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")
        return FieldMatrix(self.field, self._data + other._data)

    def __sub__(self, other):
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        self._check_field(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")
        return FieldMatrix(self.field, self._data - other._data)

    def __neg__(self):
        return FieldMatrix(self.field, -self._data)

    def scale(self, scalar) -> "FieldMatrix":
        s = int(as_residue_vector(self.field, [scalar])[0])
        return FieldMatrix(self.field, self._data * s)

    def transpose(self) -> "FieldMatrix":
        return FieldMatrix(self.field, self._data.T)

    T = property(transpose)

    def matvec(self, values) -> np.ndarray:
        """Multiply by a vector of residues; returns a 1-D int64 array."""
        vec = as_residue_vector(self.field, values, self.cols)
        return _mod_matmul(self._data, vec.reshape(-1, 1), self.field.p).ravel()

    # -- indexing and assembly -------------------------------------------

    def __getitem__(self, key):
        if (
            isinstance(key, tuple)
            and len(key) == 2
            and all(isinstance(k, (int, np.integer)) for k in key)
        ):
            return FieldElement(int(self._data[key]), self.field)
        sub = self._data[key]
        if not isinstance(sub, np.ndarray) or sub.ndim != 2:
            raise TypeError("only (i, j) scalar access or 2-D slices are supported")
        return FieldMatrix(self.field, sub)

    def take_rows(self, indices) -> "FieldMatrix":
        idx = np.asarray(list(indices), dtype=np.int64)
        return FieldMatrix(self.field, self._data[idx, :] if idx.size else
                           np.zeros((0, self.cols), dtype=np.int64))

    def take_columns(self, indices) -> "FieldMatrix":
        idx = np.asarray(list(indices), dtype=np.int64)
        return FieldMatrix(self.field, self._data[:, idx] if idx.size else
                           np.zeros((self.rows, 0), dtype=np.int64))

    # -- elimination kernels ----------------------------------------------

    def inverse(self) -> "FieldMatrix":
        """Gauss-Jordan inverse with the first-nonzero pivot rule."""
        if self.rows != self.cols:
            raise ValueError(f"only square matrices can be inverted, got {self.shape}")
        n, p = self.rows, self.field.p
        aug = np.hstack([self._data, np.eye(n, dtype=np.int64)])
        for col in range(n):
            nz = np.nonzero(aug[col:, col])[0]
            if nz.size == 0:
                raise SingularMatrixError(f"matrix is singular over GF({p})")
            piv = col + int(nz[0])
            if piv != col:
                aug[[col, piv]] = aug[[piv, col]]
            aug[col] = aug[col] * pow(int(aug[col, col]), -1, p) % p
            others = np.nonzero(aug[:, col])[0]
            others = others[others != col]
            if others.size:
                aug[others] = (aug[others] - np.outer(aug[others, col], aug[col])) % p
        return FieldMatrix(self.field, aug[:, n:])

    def rank(self) -> int:
        """Pivot count of the row echelon form."""
        a = self._data.copy()
        p = self.field.p
        rows, cols = a.shape
        r = 0
        for col in range(cols):
            if r == rows:
                break
            nz = np.nonzero(a[r:, col])[0]
            if nz.size == 0:
                continue
            piv = r + int(nz[0])
            if piv != r:
                a[[r, piv]] = a[[piv, r]]
            a[r] = a[r] * pow(int(a[r, col]), -1, p) % p
            below = np.nonzero(a[r + 1:, col])[0]
            if below.size:
                idx = below + r + 1
                a[idx] = (a[idx] - np.outer(a[idx, col], a[r])) % p
            r += 1
        return r

    # -- comparison and serialization ---------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        return self.field.p == other.field.p and np.array_equal(self._data, other._data)

    def __ne__(self, other) -> bool:
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def to_dict(self) -> dict:
        return {
            "p": self.field.p,
            "rows": self.rows,
            "cols": self.cols,
            "data": [int(x) for x in self._data.ravel()],
        }

    def __repr__(self) -> str:
        return f"FieldMatrix(GF({self.field.p}), {self._data.tolist()})"


def hstack(matrices) -> FieldMatrix:
    mats = list(matrices)
    if not mats:
        raise ValueError("hstack needs at least one matrix")
    first = mats[0]
    for m in mats[1:]:
        first._check_field(m)
        if m.rows != first.rows:
            raise ValueError("hstack row counts differ")
    return FieldMatrix(first.field, np.hstack([m.array for m in mats]))


def vstack(matrices) -> FieldMatrix:
    mats = list(matrices)
    if not mats:
        raise ValueError("vstack needs at least one matrix")
    first = mats[0]
    for m in mats[1:]:
        first._check_field(m)
        if m.cols != first.cols:
            raise ValueError("vstack column counts differ")
    return FieldMatrix(first.field, np.vstack([m.array for m in mats]))


def block_diag(blocks) -> FieldMatrix:
    """Block-diagonal assembly; zero-size blocks are absorbed silently."""
    mats = list(blocks)
    if not mats:
        raise ValueError("block_diag needs at least one block")
    field = mats[0].field
    for m in mats[1:]:
        mats[0]._check_field(m)
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    out = np.zeros((rows, cols), dtype=np.int64)
    r = c = 0
    for m in mats:
        out[r:r + m.rows, c:c + m.cols] = m.array
        r += m.rows
        c += m.cols
    return FieldMatrix(field, out)


class Permutation:
    """A permutation of [1..n] in one-line notation.

    The external format is 1-based to match the usual convention for
    column permutations; ``image[j-1]`` is the image of j.
    """

    __slots__ = ("image",)

    def __init__(self, image):
        img = tuple(int(x) for x in image)
        if sorted(img) != list(range(1, len(img) + 1)):
            raise ValueError(f"not a bijection on [1..{len(img)}]: {img}")
        self.image = img

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, j: int) -> int:
        if not 1 <= j <= self.n:
            raise IndexError(f"index {j} outside [1..{self.n}]")
        return self.image[j - 1]

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for j, target in enumerate(self.image, start=1):
            inv[target - 1] = j
        return Permutation(inv)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.image == other.image

    def __hash__(self) -> int:
        return hash(self.image)

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"Permutation{self.image}"

    def to_dict(self) -> dict:
        return {"n": self.n, "image": list(self.image)}

    @classmethod
    def from_dict(cls, doc: dict) -> "Permutation":
        perm = cls(doc["image"])
        if perm.n != int(doc["n"]):
            raise ValueError("permutation length disagrees with its header")
        return perm


def permutation_matrix(field: PrimeField, perm: Permutation) -> FieldMatrix:
    """Columns are the standard basis vectors selected by the permutation.

    Right-multiplying A by this matrix makes column j of the product equal
    to column perm(j) of A.
    """
    n = perm.n
    out = np.zeros((n, n), dtype=np.int64)
    for j, target in enumerate(perm.image):
        out[target - 1, j] = 1
    return FieldMatrix(field, out)
