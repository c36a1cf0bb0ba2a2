"""Exact arithmetic in prime fields GF(p).

Every construction downstream (generator matrices, channel synthesis, the
over-the-air decode) reduces to arithmetic on canonical residues in
[0, p-1].  Elements are immutable, equality is value equality, and mixing
elements from different fields is always an error.

Prime fields only: the schemes here never need more than q >= N + L
distinct elements, which every GF(p) with p >= N + L provides.  Extension
fields are out of scope.  Moduli are capped at 2**31 - 1 so a single
product always fits in a 64-bit machine integer.
"""

import operator

MAX_MODULUS = 2**31 - 1

# Deterministic Miller-Rabin witnesses, sufficient for n < 3,215,031,751
# which covers the whole supported modulus range.
_MR_BASES = (2, 3, 5, 7)


class FieldMismatchError(ValueError):
    """Arithmetic attempted between elements of different prime fields."""


def is_prime(n: int) -> bool:
    """Deterministic primality test for the supported modulus range."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    """Smallest prime >= n."""
    candidate = max(int(n), 2)
    while not is_prime(candidate):
        candidate += 1
    return candidate


class PrimeField:
    """The prime field GF(p).

    Acts as a factory for :class:`FieldElement` and carries the modulus
    for the matrix and code layers.  Two PrimeField objects compare equal
    iff they have the same modulus.
    """

    __slots__ = ("p",)

    def __init__(self, p: int):
        if isinstance(p, bool):
            raise TypeError("modulus must be an integer, got bool")
        try:
            p = operator.index(p)
        except TypeError:
            raise TypeError(f"modulus must be an integer, got {type(p).__name__}")
        if p > MAX_MODULUS:
            raise ValueError(f"modulus {p} exceeds the supported bound 2**31 - 1")
        if not is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        self.p = p

    @property
    def order(self) -> int:
        return self.p

    def element(self, value: int) -> "FieldElement":
        return FieldElement(value, self)

    def zero(self) -> "FieldElement":
        return FieldElement(0, self)

    def one(self) -> "FieldElement":
        return FieldElement(1, self)

    def inv_value(self, value: int) -> int:
        """Inverse of a raw residue, for the integer-array kernels."""
        value %= self.p
        if value == 0:
            raise ZeroDivisionError(f"inversion of zero in GF({self.p})")
        return pow(value, -1, self.p)

    def __eq__(self, other) -> bool:
        if isinstance(other, PrimeField):
            return self.p == other.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    def __repr__(self) -> str:
        return f"GF({self.p})"


class FieldElement:
    """An element of GF(p), stored fully reduced.

    Supports ``+ - * / **`` against other elements of the same field and
    against plain ints (which are reduced into the field first).
    """

    __slots__ = ("value", "field")

    def __init__(self, value: int, field: PrimeField):
        self.value = operator.index(value) % field.p
        self.field = field

    @property
    def p(self) -> int:
        return self.field.p

    def _coerce(self, other) -> int:
        """Residue of the operand, enforcing the same-field rule."""
        if isinstance(other, FieldElement):
            if other.field.p != self.field.p:
                raise FieldMismatchError(
                    f"mixing GF({self.field.p}) and GF({other.field.p}) elements"
                )
            return other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.value + v, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.value - v, self.field)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(v - self.value, self.field)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.value * v, self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value, self.field)

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        # pow(0, 0, p) == 1, matching the empty-product convention.
        return FieldElement(pow(self.value, exponent, self.field.p), self.field)

    def inverse(self) -> "FieldElement":
        if self.value == 0:
            raise ZeroDivisionError(f"inversion of zero in GF({self.field.p})")
        return FieldElement(pow(self.value, -1, self.field.p), self.field)

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        if v == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.field.p})")
        return FieldElement(self.value * pow(v, -1, self.field.p), self.field)

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(v, self.field) / self

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field.p == other.field.p and self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.field.p))

    def __int__(self) -> int:
        return self.value

    __index__ = __int__

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"GF({self.field.p})({self.value})"
