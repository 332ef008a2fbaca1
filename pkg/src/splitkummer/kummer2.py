"""The split Kummer surface K2 = E^2/{±1} and its endomorphisms.

Three models are supported:

* ``K2PointTriple``: a hypersurface in K1^2 x P^1, coordinates (x, y, z);
* ``K2Point``: the working model in P^3 x P^1, where (U0:U1:U2:U3) is the
  Segre image of (x, y) and satisfies U0 U3 = U1 U2;
* ``K2PointP7``: the Segre image in P^7 with T[i + 4j] = U[i] Z[j].

Maps with several equivalent polynomial representatives evaluate them in a
fixed order and use the first one that is not the zero vector. The
``*_forms`` helpers expose the candidate lists so callers can see which
representative fired.
"""

from __future__ import annotations

import random
from functools import singledispatch

from .edwards import EdwardsCurve, EdwardsPoint
from .errors import ExceptionalPoint, Inconsistent, InvalidPoint, NonSquare
from .kummer1 import K1Point, project
from .projective import (
    first_usable,
    is_zero,
    normalize,
    normalized_key,
    parse_hex,
    proj_equal,
    to_hex,
)


class K2Point:
    """((U0:U1:U2:U3), (Z0:Z1)) on K2 in P^3 x P^1."""

    __slots__ = ("curve", "U", "Z")

    def __init__(self, curve: EdwardsCurve, U, Z, check: bool = True):
        self.curve = curve
        self.U = tuple(U)
        self.Z = tuple(Z)
        if check:
            if is_zero(self.U) or is_zero(self.Z):
                raise InvalidPoint("zero block in P^3 x P^1 point")
            if not self.relations_hold():
                raise InvalidPoint(f"{self.to_hex()} is not on K2")

    @classmethod
    def from_ints(cls, curve: EdwardsCurve, U, Z, check: bool = True) -> "K2Point":
        F = curve.field
        return cls(curve, [F(u) for u in U], [F(z) for z in Z], check=check)

    @classmethod
    def parse(cls, curve: EdwardsCurve, text: str) -> "K2Point":
        u, _, z = text.strip().partition(";")
        return cls(curve, parse_hex(curve.field, u, 4), parse_hex(curve.field, z, 2))

    def segre_relation(self) -> bool:
        U0, U1, U2, U3 = self.U
        return U0 * U3 == U1 * U2

    def surface_relation(self) -> bool:
        U0, U1, U2, U3 = self.U
        Z0, Z1 = self.Z
        d = self.curve.d
        s0, s1, s2, s3 = U0 * U0, U1 * U1, U2 * U2, U3 * U3
        lhs = (s0 - s1 - s2 + s3) * Z0 * Z0
        rhs = (s0 - d * s1 - d * s2 + d * d * s3) * Z1 * Z1
        return lhs == rhs

    def relations_hold(self) -> bool:
        return self.segre_relation() and self.surface_relation()

    def scaled(self, lu, lz) -> "K2Point":
        return K2Point(self.curve, [u * lu for u in self.U], [z * lz for z in self.Z], check=False)

    def normalized(self) -> "K2Point":
        return K2Point(self.curve, normalize(self.U), normalize(self.Z), check=False)

    def key(self) -> tuple:
        return normalized_key(self.U) + normalized_key(self.Z)

    def __eq__(self, other):
        if not isinstance(other, K2Point):
            return NotImplemented
        return proj_equal(self.U, other.U) and proj_equal(self.Z, other.Z)

    def __hash__(self):
        return hash(self.key())

    def to_hex(self) -> str:
        return f"{to_hex(self.U)};{to_hex(self.Z)}"

    def __str__(self):
        return self.to_hex()

    def __repr__(self):
        return f"K2Point({self.to_hex()})"


class K2PointTriple:
    """(x, y, z) on the hypersurface of K1^2 x P^1."""

    __slots__ = ("curve", "x", "y", "z")

    def __init__(self, curve: EdwardsCurve, x: K1Point, y: K1Point, z, check: bool = True):
        self.curve = curve
        self.x = x
        self.y = y
        self.z = tuple(z)
        if check:
            if is_zero(self.z):
                raise InvalidPoint("zero P^1 factor")
            if not self.relation_holds():
                raise InvalidPoint(f"{self} is not on K2")

    def relation_holds(self) -> bool:
        d = self.curve.d
        x0, x1 = self.x.coords
        y0, y1 = self.y.coords
        z0, z1 = self.z
        lhs = (x0 * x0 - x1 * x1) * (y0 * y0 - y1 * y1) * z0 * z0
        rhs = (x0 * x0 - d * x1 * x1) * (y0 * y0 - d * y1 * y1) * z1 * z1
        return lhs == rhs

    def __eq__(self, other):
        if not isinstance(other, K2PointTriple):
            return NotImplemented
        return self.x == other.x and self.y == other.y and proj_equal(self.z, other.z)

    def __hash__(self):
        return hash(self.x.key() + self.y.key() + normalized_key(self.z))

    def __str__(self):
        return f"{self.x};{self.y};{to_hex(self.z)}"

    def __repr__(self):
        return f"K2PointTriple({self})"


# indices (i, j) with T[i] T[j] = T[k] T[l] cutting out the Segre image of (P^1)^3
P7_SEGRE_QUADRICS = (
    ((0, 3), (1, 2)),
    ((0, 5), (1, 4)),
    ((0, 6), (2, 4)),
    ((0, 7), (3, 4)),
    ((1, 6), (3, 4)),
    ((1, 7), (3, 5)),
    ((2, 5), (3, 4)),
    ((2, 7), (3, 6)),
    ((4, 7), (5, 6)),
)


class K2PointP7:
    """(T0:...:T7), the Segre model of K2 in P^7."""

    __slots__ = ("curve", "T")

    def __init__(self, curve: EdwardsCurve, T, check: bool = True):
        self.curve = curve
        self.T = tuple(T)
        if check:
            if is_zero(self.T):
                raise InvalidPoint("zero vector in P^7")
            if not self.relations_hold():
                raise InvalidPoint(f"{self.to_hex()} is not on K2")

    @classmethod
    def parse(cls, curve: EdwardsCurve, text: str) -> "K2PointP7":
        return cls(curve, parse_hex(curve.field, text, 8))

    def failed_relations(self) -> list[str]:
        """Names of the ten defining relations that do not hold."""
        T = self.T
        d = self.curve.d
        bad = [
            f"T{a}T{b}=T{c}T{e}"
            for (a, b), (c, e) in P7_SEGRE_QUADRICS
            if T[a] * T[b] != T[c] * T[e]
        ]
        sq = [t * t for t in T]
        if sq[0] - sq[1] - sq[2] + sq[3] != sq[4] - d * sq[5] - d * sq[6] + d * d * sq[7]:
            bad.append("quadric")
        return bad

    def relations_hold(self) -> bool:
        return not self.failed_relations()

    def key(self) -> tuple:
        return normalized_key(self.T)

    def __eq__(self, other):
        if not isinstance(other, K2PointP7):
            return NotImplemented
        return proj_equal(self.T, other.T)

    def __hash__(self):
        return hash(self.key())

    def to_hex(self) -> str:
        return to_hex(self.T)

    def __str__(self):
        return self.to_hex()

    def __repr__(self):
        return f"K2PointP7({self.to_hex()})"


# -- projection E^2 -> K2 and model conversions -------------------------


def pi3_forms(P: EdwardsPoint, Q: EdwardsPoint) -> list[tuple]:
    """The four equivalent representatives of the P^1 factor of (P, Q)."""
    X0, X1, X2, X3 = P.X
    Y0, Y1, Y2, Y3 = Q.X
    return [
        (X0 * Y0, X1 * Y1),
        (X2 * Y0, X3 * Y1),
        (X0 * Y2, X1 * Y3),
        (X2 * Y2, X3 * Y3),
    ]


def project_pair(P: EdwardsPoint, Q: EdwardsPoint) -> K2PointTriple:
    """Image of (P, Q) in the K1^2 x P^1 model."""
    X0, X1, X2, X3 = P.X
    Y0, Y1, Y2, Y3 = Q.X
    z = (X0 * Y0, X1 * Y1)
    if is_zero(z):
        _, z = first_usable(pi3_forms(P, Q)[1:], "project_pair.pi3", (P, Q))
    return K2PointTriple(P.curve, project(P), project(Q), z, check=False)


def triple_to_p3p1(t: K2PointTriple) -> K2Point:
    x0, x1 = t.x.coords
    y0, y1 = t.y.coords
    return K2Point(t.curve, (x0 * y0, x1 * y0, x0 * y1, x1 * y1), t.z, check=False)


def project_k2(P: EdwardsPoint, Q: EdwardsPoint) -> K2Point:
    """Image of (P, Q) in the P^3 x P^1 model."""
    return triple_to_p3p1(project_pair(P, Q))


def segre_projection_forms(U) -> tuple[list[tuple], list[tuple]]:
    """Candidate representatives of the two projections S(K1^2) -> K1."""
    U0, U1, U2, U3 = U
    return [(U0, U1), (U2, U3)], [(U0, U2), (U1, U3)]


def p3p1_to_triple(k: K2Point) -> K2PointTriple:
    U0, U1, U2, U3 = k.U
    x = (U0, U1) if (U0.value or U1.value) else (U2, U3)
    y = (U0, U2) if (U0.value or U2.value) else (U1, U3)
    return K2PointTriple(k.curve, K1Point(*x), K1Point(*y), k.Z, check=False)


def p3p1_to_p7(k: K2Point) -> K2PointP7:
    Z0, Z1 = k.Z
    return K2PointP7(k.curve, [u * Z0 for u in k.U] + [u * Z1 for u in k.U], check=False)


def p7_to_p3p1(t: K2PointP7) -> K2Point:
    T = t.T
    rows = (T[:4], T[4:])
    cols = [(T[i], T[4 + i]) for i in range(4)]
    _, U = first_usable(rows, "p7_to_p3p1", t)
    _, Z = first_usable(cols, "p7_to_p3p1", t)
    return K2Point(t.curve, U, Z, check=False)


# -- automorphisms ----------------------------------------------------


@singledispatch
def sigma(k):
    """Swap of the two factors, (P, Q) -> (Q, P)."""
    raise TypeError(f"sigma is not defined on {type(k).__name__}")


@sigma.register
def _(k: K2Point) -> K2Point:
    U0, U1, U2, U3 = k.U
    return K2Point(k.curve, (U0, U2, U1, U3), k.Z, check=False)


@sigma.register
def _(t: K2PointTriple) -> K2PointTriple:
    return K2PointTriple(t.curve, t.y, t.x, t.z, check=False)


@sigma.register
def _(t: K2PointP7) -> K2PointP7:
    T = t.T
    return K2PointP7(t.curve, (T[0], T[2], T[1], T[3], T[4], T[6], T[5], T[7]), check=False)


@singledispatch
def iota(k):
    """Negation of one factor, (P, Q) -> (-P, Q)."""
    raise TypeError(f"iota is not defined on {type(k).__name__}")


@iota.register
def _(k: K2Point) -> K2Point:
    Z0, Z1 = k.Z
    return K2Point(k.curve, k.U, (Z0, -Z1), check=False)


@iota.register
def _(t: K2PointTriple) -> K2PointTriple:
    z0, z1 = t.z
    return K2PointTriple(t.curve, t.x, t.y, (z0, -z1), check=False)


@iota.register
def _(t: K2PointP7) -> K2PointP7:
    T = t.T
    return K2PointP7(t.curve, T[:4] + tuple(-x for x in T[4:]), check=False)


# -- endomorphisms ----------------------------------------------------


def _segre(x, y) -> tuple:
    x0, x1 = x
    y0, y1 = y
    return (x0 * y0, x1 * y0, x0 * y1, x1 * y1)


def _sum_line(k: K2Point) -> tuple:
    """Kummer-line image of P + Q; shared by rho and tau."""
    U0, U1, U2, U3 = k.U
    Z0, Z1 = k.Z
    return U0 * Z0 - (U3 * Z1).scale(k.curve.d), U3 * Z0 - U0 * Z1


def rho_projections(k: K2Point) -> tuple[tuple, tuple, tuple]:
    """(pi1, pi2, pi3) of rho(k); each is a single representative."""
    U0, U1, U2, U3 = k.U
    Z0, Z1 = k.Z
    d = k.curve.d
    a, c, e = U0 * Z0, U0 * Z1, U3 * Z0
    b = (U3 * Z1).scale(d)
    x = (a - b, e - c)
    y = (a + b, c + e)
    z = (U0.square() - U3.square().scale(d), U2.square() - U1.square())
    return x, y, z


def rho(k: K2Point) -> K2Point:
    """rho: pi(P, Q) -> pi(P + Q, P - Q)."""
    x, y, z = rho_projections(k)
    for name, v in (("rho.pi1", x), ("rho.pi2", y), ("rho.pi3", z)):
        if v[0].value == 0 and v[1].value == 0:
            raise ExceptionalPoint(name, k)
    return K2Point(k.curve, _segre(x, y), z, check=False)


def rho_segre_forms(k: K2Point) -> list[tuple]:
    """The two bidegree-(2,1) maps spanning K2 -> S(K1^2) for rho."""
    U0, U1, U2, U3 = k.U
    Z0, Z1 = k.Z
    curve = k.curve
    d, dm1, d2 = curve.d, curve.d_minus_1, curve.d_squared
    s0, s1, s2, s3 = U0.square(), U1.square(), U2.square(), U3.square()
    mid = s0 - (s1 + s2).scale(d)
    B = mid + s3.scale(d)
    Bd = mid + s3.scale(d2)
    A = s0 - s1 - s2 + s3
    C = s0 - s1 - s2 + s3.scale(d)
    w = (U0 * U3).scale(dm1)
    wz0, wz1 = w * Z0, w * Z1
    first = (B * Z0, -wz0 - Bd * Z1, -wz0 + Bd * Z1, -(C * Z0))
    second = (B * Z1, -wz1 - A * Z0, -wz1 + A * Z0, -(C * Z1))
    return [first, second]


def rho_to_segre_direct(k: K2Point) -> tuple:
    """Segre image of (pi1, pi2) of rho(k), via the bidegree-(2,1) maps."""
    _, v = first_usable(rho_segre_forms(k), "rho.segre", k)
    return v


def _tau_pi3_first(k: K2Point) -> tuple:
    U0, U1, U2, U3 = k.U
    Z0, Z1 = k.Z
    d = k.curve.d
    return (
        (U0.square() - U3.square().scale(d)) * Z0,
        (U0 * U1 - U2 * U3) * Z0 + (U0 * U2 - (U1 * U3).scale(d)) * Z1,
    )


def _tau_pi3_second(k: K2Point) -> tuple:
    U0, U1, U2, U3 = k.U
    Z0, Z1 = k.Z
    d = k.curve.d
    return (
        -((U0 * U2 - U1 * U3) * Z0) + (U0 * U1 - (U2 * U3).scale(d)) * Z1,
        (U1.square() - U2.square()) * Z1,
    )


def tau_pi3_forms(k: K2Point) -> list[tuple]:
    """The two equivalent representatives of pi3 of tau(k)."""
    return [_tau_pi3_first(k), _tau_pi3_second(k)]


def tau(k: K2Point) -> K2Point:
    """tau: pi(P, Q) -> pi(P + Q, Q)."""
    U0, U1, U2, U3 = k.U
    x = _sum_line(k)
    if x[0].value == 0 and x[1].value == 0:
        raise ExceptionalPoint("tau.pi1", k)
    y = (U0, U2) if (U0.value or U2.value) else (U1, U3)
    z = _tau_pi3_first(k)
    if z[0].value == 0 and z[1].value == 0:
        z = _tau_pi3_second(k)
        if z[0].value == 0 and z[1].value == 0:
            raise ExceptionalPoint("tau.pi3", k)
    return K2Point(k.curve, _segre(x, y), z, check=False)


def phi0(k: K2Point) -> K2Point:
    """Montgomery endomorphism: pi(P, Q) -> pi(2P, P + Q)."""
    return tau(sigma(rho(k)))


def phi1(k: K2Point) -> K2Point:
    """Conjugate ladder step: pi(P, Q) -> pi(P + Q, 2Q)."""
    return sigma(phi0(sigma(k)))


# -- lifting back to E^2 ----------------------------------------------


def lift(k: K2Point) -> tuple[EdwardsPoint, EdwardsPoint]:
    """(P, Q) with pi(P, Q) = k; P takes the even-x lift of its factor."""
    curve = k.curve
    t = p3p1_to_triple(k)
    P = curve.lift_from_y(t.x, 0)
    Q = curve.lift_from_y(t.y, 0)
    for Qc in (Q, curve.negate(Q)):
        try:
            if project_k2(P, Qc) == k:
                return P, Qc
        except ExceptionalPoint:
            continue
    raise Inconsistent(f"no lift of {k} reproduces its Z coordinate")


def apply_matrix_via_lift(k: K2Point, a: int, b: int, c: int, e: int) -> K2Point:
    """pi(aP + bQ, cP + eQ) computed on E^2 for a lift (P, Q) of k."""
    curve = k.curve
    P, Q = lift(k)
    general = not curve.complete

    def comb(m, n):
        R = curve.scalar_mul(m, P, general=general)
        S = curve.scalar_mul(n, Q, general=general)
        return curve.add_general(R, S) if general else curve.add(R, S)

    return project_k2(comb(a, b), comb(c, e))


def rho_via_lift(k: K2Point) -> K2Point:
    return apply_matrix_via_lift(k, 1, 1, 1, -1)


def tau_via_lift(k: K2Point) -> K2Point:
    return apply_matrix_via_lift(k, 1, 1, 0, 1)


def phi0_via_lift(k: K2Point) -> K2Point:
    return apply_matrix_via_lift(k, 2, 0, 1, 1)


def phi1_via_lift(k: K2Point) -> K2Point:
    return apply_matrix_via_lift(k, 1, 1, 0, 2)


# -- sampling -----------------------------------------------------------


def random_k2_point(curve: EdwardsCurve, seed=None, *, liftable: bool = True) -> K2Point:
    """A random point of K2(F_p).

    With ``liftable`` the point is pi(P, Q) for random P, Q in E(F_p);
    otherwise (x, y) are uniform on K1^2 and z solves the surface relation,
    which also reaches points whose factors lift only over F_{p^2}.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    if liftable:
        return project_k2(curve.random_point(rng), curve.random_point(rng))
    F, d = curve.field, curve.d
    while True:
        x = K1Point(F.one, F.random(rng))
        y = K1Point(F.one, F.random(rng))
        x1, y1 = x.x1, y.x1
        A = (1 - x1 * x1) * (1 - y1 * y1)
        B = (1 - d * x1 * x1) * (1 - d * y1 * y1)
        if B.value == 0:
            if A.value == 0:
                continue
            z = (F.zero, F.one)
        else:
            r = A / B
            if r.legendre() < 0:
                continue
            s = r.sqrt()
            z = (F.one, -s if rng.getrandbits(1) else s)
        return triple_to_p3p1(K2PointTriple(curve, x, y, z))
