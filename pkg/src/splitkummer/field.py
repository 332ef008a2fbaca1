"""Prime field arithmetic with an optional operation counter.

A :class:`PrimeField` is the shared context for its elements. Two fields
compare equal when their moduli are equal, so an instrumented copy of a
field (see :meth:`PrimeField.instrumented`) interoperates with the plain one.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Union

from sympy import isprime

from .errors import DivisionByZero, FieldMismatch, NonSquare


@dataclass
class OpCount:
    """Field operation tallies for one measured computation."""

    mul: int = 0
    sqr: int = 0
    add_sub: int = 0
    mul_by_d: int = 0
    inv: int = 0

    def __add__(self, other: "OpCount") -> "OpCount":
        return OpCount(**{k: v + getattr(other, k) for k, v in asdict(self).items()})

    def __sub__(self, other: "OpCount") -> "OpCount":
        return OpCount(**{k: v - getattr(other, k) for k, v in asdict(self).items()})

    def reset(self) -> None:
        self.mul = self.sqr = self.add_sub = self.mul_by_d = self.inv = 0

    def as_dict(self) -> dict:
        return asdict(self)


class PrimeField:
    """The field F_p for an odd prime p > 3."""

    __slots__ = ("p", "counter")

    def __init__(self, p: int, counter: OpCount | None = None, *, check: bool = True):
        p = int(p)
        if check:
            if p in (2, 3) or p < 2:
                raise ValueError(f"characteristic must be a prime other than 2 and 3, got {p}")
            if not isprime(p):
                raise ValueError(f"{p} is not prime")
        self.p = p
        self.counter = counter

    def instrumented(self) -> "PrimeField":
        """Copy of this field whose elements tally their operations."""
        return PrimeField(self.p, OpCount(), check=False)

    def __call__(self, value: Union[int, "FieldElement"]) -> "FieldElement":
        if isinstance(value, FieldElement):
            value = value.value
        return FieldElement(value % self.p, self)

    def parse(self, text: str) -> "FieldElement":
        """Parse a hex string (optional ``0x`` prefix and leading sign)."""
        return self(int(text.strip(), 16))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(0, self)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(1, self)

    def elements(self):
        for v in range(self.p):
            yield FieldElement(v, self)

    def random(self, rng) -> "FieldElement":
        return FieldElement(rng.randrange(self.p), self)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


def _coerce(a: "FieldElement", b) -> int:
    if isinstance(b, FieldElement):
        if b.field is not a.field and b.field.p != a.field.p:
            raise FieldMismatch(f"F_{a.field.p} and F_{b.field.p}")
        return b.value
    if isinstance(b, int):
        return b
    return NotImplemented


class FieldElement:
    """Canonical residue in [0, p-1] bound to a :class:`PrimeField`."""

    __slots__ = ("value", "field")

    def __init__(self, value: int, field: PrimeField):
        # callers pass canonical residues; PrimeField.__call__ reduces
        self.value = value
        self.field = field

    def _tally(self, kind: str) -> None:
        c = self.field.counter
        if c is not None:
            setattr(c, kind, getattr(c, kind) + 1)

    def __add__(self, other):
        b = _coerce(self, other)
        if b is NotImplemented:
            return b
        if self.field.counter is not None:
            self._tally("add_sub")
        return FieldElement((self.value + b) % self.field.p, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        b = _coerce(self, other)
        if b is NotImplemented:
            return b
        if self.field.counter is not None:
            self._tally("add_sub")
        return FieldElement((self.value - b) % self.field.p, self.field)

    def __rsub__(self, other):
        b = _coerce(self, other)
        if b is NotImplemented:
            return b
        if self.field.counter is not None:
            self._tally("add_sub")
        return FieldElement((b - self.value) % self.field.p, self.field)

    def __mul__(self, other):
        b = _coerce(self, other)
        if b is NotImplemented:
            return b
        if self.field.counter is not None:
            self._tally("sqr" if other is self else "mul")
        return FieldElement(self.value * b % self.field.p, self.field)

    __rmul__ = __mul__

    def __neg__(self):
        # negation is free in every cost model we count against
        return FieldElement(-self.value % self.field.p, self.field)

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        return FieldElement(pow(self.value, e, self.field.p), self.field)

    def __truediv__(self, other):
        b = _coerce(self, other)
        if b is NotImplemented:
            return b
        return self * self.field(b).inv()

    def square(self) -> "FieldElement":
        if self.field.counter is not None:
            self._tally("sqr")
        return FieldElement(self.value * self.value % self.field.p, self.field)

    def scale(self, c: "FieldElement") -> "FieldElement":
        """Multiply by a curve constant; tallied as ``mul_by_d``."""
        b = _coerce(self, c)
        if self.field.counter is not None:
            self._tally("mul_by_d")
        return FieldElement(self.value * b % self.field.p, self.field)

    def inv(self) -> "FieldElement":
        if self.value == 0:
            raise DivisionByZero(f"inverse of 0 in F_{self.field.p}")
        if self.field.counter is not None:
            self._tally("inv")
        return FieldElement(pow(self.value, -1, self.field.p), self.field)

    def legendre(self) -> int:
        if self.value == 0:
            return 0
        p = self.field.p
        return 1 if pow(self.value, (p - 1) // 2, p) == 1 else -1

    def is_square(self) -> bool:
        return self.legendre() >= 0

    def sqrt(self) -> "FieldElement":
        """Square root with even canonical residue."""
        r = tonelli_shanks(self.value, self.field.p)
        if r % 2:
            r = self.field.p - r
        return FieldElement(r, self.field)

    def is_zero(self) -> bool:
        return self.value == 0

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.value == other.value and self.field.p == other.field.p
        if isinstance(other, int):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.field.p))

    def __int__(self):
        return self.value

    def hex(self) -> str:
        return format(self.value, "x")

    def __repr__(self):
        return f"FieldElement({self.value}, p={self.field.p})"


def tonelli_shanks(a: int, p: int) -> int:
    """Some r with r*r == a (mod p); raises NonSquare if none exists."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        raise NonSquare(f"{a} is not a square mod {p}")
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r
