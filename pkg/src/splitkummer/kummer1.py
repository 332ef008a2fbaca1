"""The Kummer line E/{±1} ≅ P^1, coordinatized by the Edwards y."""

from __future__ import annotations

from .edwards import EdwardsCurve, EdwardsPoint
from .errors import DegenerateOutput
from .field import FieldElement, PrimeField
from .projective import normalize, normalized_key, parse_hex, proj_equal, to_hex


class K1Point:
    """Point (x0:x1) of P^1; the affine value x1/x0 is the Edwards y."""

    __slots__ = ("x0", "x1")

    def __init__(self, x0: FieldElement, x1: FieldElement):
        if x0.value == 0 and x1.value == 0:
            raise ValueError("(0:0) is not a point of P^1")
        self.x0 = x0
        self.x1 = x1

    @classmethod
    def from_ints(cls, field: PrimeField, x0: int, x1: int) -> "K1Point":
        return cls(field(x0), field(x1))

    @classmethod
    def parse(cls, field: PrimeField, text: str) -> "K1Point":
        return cls(*parse_hex(field, text, 2))

    @property
    def coords(self) -> tuple:
        return (self.x0, self.x1)

    def normalized(self) -> "K1Point":
        return K1Point(*normalize(self.coords))

    def key(self) -> tuple:
        return normalized_key(self.coords)

    def __eq__(self, other):
        if not isinstance(other, K1Point):
            return NotImplemented
        return proj_equal(self.coords, other.coords)

    def __hash__(self):
        return hash(self.key())

    def to_hex(self) -> str:
        return to_hex(self.coords)

    def __str__(self):
        return self.to_hex()

    def __repr__(self):
        return f"K1Point({self.to_hex()})"


def project(P: EdwardsPoint) -> K1Point:
    """Quotient map E -> K1: (X0:X2), or (X1:X3) where that vanishes."""
    X0, X1, X2, X3 = P.X
    if X0.value or X2.value:
        return K1Point(X0, X2)
    return K1Point(X1, X3)


def duplicate(x: K1Point, curve: EdwardsCurve) -> K1Point:
    """Image of [2] on the Kummer line, a quartic map in (x0:x1)."""
    d = curve.d
    a, b = x.x0.square(), x.x1.square()
    c = (a - b).square()
    dm1 = curve.d_minus_1
    out0 = a.square().scale(dm1) - c.scale(d)
    out1 = c + b.square().scale(dm1)
    if out0.value == 0 and out1.value == 0:
        raise DegenerateOutput(f"duplication vanishes at {x}")
    return K1Point(out0, out1)
