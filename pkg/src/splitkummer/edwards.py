"""Edwards model of an elliptic curve in P^3 with its full group law.

The curve x^2 + y^2 = 1 + d x^2 y^2 is embedded as (X0:X1:X2:X3) = (1:x:y:xy),
cut out by X0^2 + d X3^2 = X1^2 + X2^2 and X0 X3 = X1 X2. This module is the
independent oracle that every Kummer-side formula is checked against.
"""

from __future__ import annotations

import random
from functools import cached_property

from .errors import DivisionByZero, IncompleteCurve, NonSquare, NotOnCurve
from .field import FieldElement, PrimeField
from .projective import is_zero, normalized_key, parse_hex, proj_equal, to_hex


class EdwardsCurve:
    """Curve parameters (p, d) and the group operations on E(F_p).

    ``complete`` is true when d is a non-square; only then is :meth:`add`
    exception free. :meth:`add_general` combines two addition laws and is
    valid for every d.
    """

    def __init__(self, field: PrimeField | int, d):
        if not isinstance(field, PrimeField):
            field = PrimeField(field)
        self.field = field
        self.d = field(d)
        if self.d.value in (0, 1):
            raise ValueError("Edwards parameter d must not be 0 or 1")
        # constants used by the Kummer formulas, built without tallying
        self.d_minus_1 = field(self.d.value - 1)
        self.d_squared = field(self.d.value * self.d.value)

    @classmethod
    def with_nonsquare_d(cls, p: int, start: int = 2) -> "EdwardsCurve":
        """Curve over F_p using the smallest non-square d >= start."""
        field = PrimeField(p)
        d = start
        while field(d).legendre() != -1:
            d += 1
        return cls(field, d)

    @property
    def p(self) -> int:
        return self.field.p

    @cached_property
    def complete(self) -> bool:
        return self.d.legendre() == -1

    def instrumented(self) -> "EdwardsCurve":
        """Same curve over a field that tallies its operations."""
        return EdwardsCurve(self.field.instrumented(), self.d.value)

    def __eq__(self, other):
        return isinstance(other, EdwardsCurve) and other.field == self.field and other.d == self.d

    def __hash__(self):
        return hash((self.p, self.d.value))

    def __repr__(self):
        return f"EdwardsCurve(p={self.p}, d={self.d.value})"

    # -- points ----------------------------------------------------------

    def point(self, X0, X1, X2, X3) -> "EdwardsPoint":
        F = self.field
        return EdwardsPoint(self, (F(X0), F(X1), F(X2), F(X3)))

    def is_on_curve(self, X) -> bool:
        X0, X1, X2, X3 = X
        if is_zero(X):
            return False
        lhs = X0 * X0 + self.d * X3 * X3
        return lhs == X1 * X1 + X2 * X2 and X0 * X3 == X1 * X2

    def identity(self) -> "EdwardsPoint":
        return self.point(1, 0, 1, 0)

    def parse_point(self, text: str) -> "EdwardsPoint":
        return EdwardsPoint(self, parse_hex(self.field, text, 4))

    # -- group law -------------------------------------------------------

    def negate(self, P: "EdwardsPoint") -> "EdwardsPoint":
        X0, X1, X2, X3 = P.X
        return EdwardsPoint(self, (X0, -X1, X2, -X3), check=False)

    def _add_law(self, P, Q):
        P0, P1, P2, P3 = P.X
        Q0, Q1, Q2, Q3 = Q.X
        t = self.d * P3 * Q3
        C = P0 * Q0 - t
        D = P0 * Q0 + t
        A = P1 * Q2 + P2 * Q1
        B = P2 * Q2 - P1 * Q1
        return (C * D, A * C, B * D, A * B)

    def _dual_add_law(self, P, Q):
        P0, P1, P2, P3 = P.X
        Q0, Q1, Q2, Q3 = Q.X
        A = P3 * Q0 + P0 * Q3
        B = P3 * Q0 - P0 * Q3
        C = P1 * Q1 + P2 * Q2
        D = P1 * Q2 - P2 * Q1
        return (C * D, A * D, B * C, A * B)

    def add(self, P: "EdwardsPoint", Q: "EdwardsPoint") -> "EdwardsPoint":
        """P + Q by the complete Edwards addition law.

        >>> E = EdwardsCurve(13, 5)
        >>> T = E.point(1, 1, 0, 0)
        >>> E.add(T, T) == E.point(1, 0, 12, 0)
        True
        """
        if not self.complete:
            raise IncompleteCurve(f"d = {self.d.value} is a square mod {self.p}")
        return EdwardsPoint(self, self._add_law(P, Q), check=False)

    def add_general(self, P: "EdwardsPoint", Q: "EdwardsPoint") -> "EdwardsPoint":
        """P + Q for any d, falling back to the dual law where the first vanishes."""
        R = self._add_law(P, Q)
        if is_zero(R):
            R = self._dual_add_law(P, Q)
            if is_zero(R):
                raise DivisionByZero(f"both addition laws vanish at {P}, {Q}")
        return EdwardsPoint(self, R, check=False)

    def double(self, P: "EdwardsPoint") -> "EdwardsPoint":
        return self.add(P, P)

    def scalar_mul(self, n: int, P: "EdwardsPoint", *, general: bool = False) -> "EdwardsPoint":
        """nP by double-and-add; negative n is allowed."""
        add = self.add_general if general else self.add
        if not general and not self.complete:
            raise IncompleteCurve(f"d = {self.d.value} is a square mod {self.p}")
        if n < 0:
            return self.scalar_mul(-n, self.negate(P), general=general)
        R = self.identity()
        for bit in bin(n)[2:] if n else "":
            R = add(R, R)
            if bit == "1":
                R = add(R, P)
        return R

    # -- lifting and sampling -------------------------------------------

    def lift_from_y(self, y, sign: int = 0) -> "EdwardsPoint":
        """A point whose Kummer-line image is ``y``.

        ``sign`` picks between P and -P: 0 gives the lift whose x coordinate
        has even canonical residue, 1 the odd one. Raises NonSquare when y
        lifts only over the quadratic extension.
        """
        F, d = self.field, self.d
        y0, y1 = y.x0, y.x1
        if y0.value == 0:
            # y = infinity: the points (0:0:s:1) with s^2 = d
            s = d.sqrt()
            if sign and s.value:
                s = -s
            return EdwardsPoint(self, (F.zero, F.zero, s, F.one), check=False)
        yy = y1 / y0
        y2 = yy * yy
        den = 1 - d * y2
        if den.value == 0:
            # d y^2 = 1: the point at infinity (0 : 1/y : 0 : 1)
            return EdwardsPoint(self, (F.zero, yy.inv(), F.zero, F.one), check=False)
        x = ((1 - y2) / den).sqrt()
        if sign and x.value:
            x = -x
        return EdwardsPoint(self, (F.one, x, yy, x * yy), check=False)

    def random_point(self, seed=None) -> "EdwardsPoint":
        """Deterministic for a fixed integer seed; also accepts a random.Random."""
        rng = seed if isinstance(seed, random.Random) else random.Random(seed)
        from .kummer1 import K1Point

        F = self.field
        while True:
            y = K1Point(F.one, F.random(rng))
            try:
                return self.lift_from_y(y, rng.getrandbits(1))
            except (NonSquare, DivisionByZero):
                continue

    def points(self) -> list["EdwardsPoint"]:
        """All of E(F_p), sorted by normalized coordinates. Small p only."""
        from .kummer1 import K1Point

        F = self.field
        ys = [K1Point(F.one, F(v)) for v in range(self.p)]
        ys.append(K1Point(F.zero, F.one))
        seen = {}
        for y in ys:
            for sign in (0, 1):
                try:
                    P = self.lift_from_y(y, sign)
                except NonSquare:
                    break
                seen.setdefault(P.key(), P)
        return [seen[k] for k in sorted(seen)]

    def order(self) -> int:
        return len(self.points())


class EdwardsPoint:
    """Projective point (X0:X1:X2:X3) on an :class:`EdwardsCurve`.

    Coordinates are never normalized; equality is projective.
    """

    __slots__ = ("curve", "X")

    def __init__(self, curve: EdwardsCurve, X, check: bool = True):
        X = tuple(X)
        if check and not curve.is_on_curve(X):
            raise NotOnCurve(f"({to_hex(X)}) is not on {curve}")
        self.curve = curve
        self.X = X

    @property
    def X0(self) -> FieldElement:
        return self.X[0]

    @property
    def X1(self) -> FieldElement:
        return self.X[1]

    @property
    def X2(self) -> FieldElement:
        return self.X[2]

    @property
    def X3(self) -> FieldElement:
        return self.X[3]

    def is_on_curve(self) -> bool:
        return self.curve.is_on_curve(self.X)

    def key(self) -> tuple:
        return normalized_key(self.X)

    def __eq__(self, other):
        if not isinstance(other, EdwardsPoint):
            return NotImplemented
        return proj_equal(self.X, other.X)

    def __hash__(self):
        return hash(self.key())

    def __neg__(self):
        return self.curve.negate(self)

    def __add__(self, other):
        return self.curve.add(self, other)

    def __sub__(self, other):
        return self.curve.add(self, self.curve.negate(other))

    def __rmul__(self, n: int):
        return self.curve.scalar_mul(n, self)

    def to_hex(self) -> str:
        return to_hex(self.X)

    def __str__(self):
        return self.to_hex()

    def __repr__(self):
        return f"EdwardsPoint({self.to_hex()})"


CurveParams = EdwardsCurve
