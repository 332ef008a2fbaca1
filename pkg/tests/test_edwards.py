import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from splitkummer.edwards import EdwardsCurve
from splitkummer.errors import IncompleteCurve, NonSquare, NotOnCurve
from splitkummer.kummer1 import K1Point


def affine_add(p, d, P, Q):
    """Textbook affine Edwards addition on (x, y) pairs of ints."""
    (x1, y1), (x2, y2) = P, Q
    t = d * x1 * x2 * y1 * y2
    x3 = (x1 * y2 + y1 * x2) * pow(1 + t, -1, p) % p
    y3 = (y1 * y2 - x1 * x2) * pow(1 - t, -1, p) % p
    return x3, y3


def brute_force_points(p, d):
    """All (X0:X1:X2:X3) in P^3(F_p) on both quadrics, normalized."""
    found = set()
    for v in itertools.product(range(p), repeat=4):
        if not any(v):
            continue
        X0, X1, X2, X3 = v
        if (X0 * X0 + d * X3 * X3 - X1 * X1 - X2 * X2) % p or (X0 * X3 - X1 * X2) % p:
            continue
        lead = next(c for c in v if c)
        inv = pow(lead, -1, p)
        found.add(tuple(c * inv % p for c in v))
    return found


def test_identity(E13):
    O = E13.identity()
    assert O.X == tuple(E13.field(c) for c in (1, 0, 1, 0))
    assert O.is_on_curve()
    assert E13.negate(O) == O


def test_negate(E13):
    T = E13.point(1, 1, 0, 0)
    assert E13.negate(T).X == tuple(E13.field(c) for c in (1, 12, 0, 0))
    P = E13.random_point(3)
    assert -(-P) == P


def test_add_examples(E13):
    T = E13.point(1, 1, 0, 0)
    x3, y3 = affine_add(13, 5, (1, 0), (1, 0))
    assert (x3, y3) == (0, 12)
    assert E13.add(T, T) == E13.point(1, x3, y3, x3 * y3)
    P, Q = E13.random_point(1), E13.random_point(2)
    assert P + E13.identity() == P
    assert P + Q == Q + P
    assert P + (-P) == E13.identity()


def test_add_matches_affine_oracle(E101):
    pts = E101.points()
    for P, Q in itertools.product(pts[::7], pts[::5]):
        x1, y1 = (P.X1 / P.X0).value, (P.X2 / P.X0).value
        x2, y2 = (Q.X1 / Q.X0).value, (Q.X2 / Q.X0).value
        x3, y3 = affine_add(101, 2, (x1, y1), (x2, y2))
        assert P + Q == E101.point(1, x3, y3, x3 * y3)


def test_scalar_mul_examples(E13):
    P = E13.random_point(5)
    assert E13.scalar_mul(0, P) == E13.identity()
    assert E13.scalar_mul(1, P) == P
    assert E13.scalar_mul(4, E13.point(1, 1, 0, 0)) == E13.identity()
    assert E13.scalar_mul(2, E13.point(1, 1, 0, 0)) != E13.identity()
    assert E13.scalar_mul(-3, P) == -(3 * P)


def test_incomplete_curve_rejected_by_strict_law(E13_square):
    P = E13_square.identity()
    assert not E13_square.complete
    with pytest.raises(IncompleteCurve):
        E13_square.add(P, P)
    with pytest.raises(IncompleteCurve):
        E13_square.scalar_mul(2, P)


@pytest.mark.parametrize("p, d", [(13, 5), (13, 3), (13, 4), (17, 3), (17, 2)])
def test_points_match_brute_force(p, d):
    E = EdwardsCurve(p, d)
    assert {P.key() for P in E.points()} == brute_force_points(p, d)


@pytest.mark.parametrize("p, d", [(13, 5), (17, 3), (29, 2), (101, 2), (101, 4)])
def test_order_divisible_by_four(p, d):
    E = EdwardsCurve(p, d)
    assert E.order() % 4 == 0
    assert E.point(1, 1, 0, 0) in E.points()


def _cayley_table(E, add):
    pts = E.points()
    index = {P.key(): i for i, P in enumerate(pts)}
    table = [[index[add(P, Q).key()] for Q in pts] for P in pts]
    return pts, index, table


@pytest.mark.parametrize("p, d", [(13, 5), (13, 3), (101, 2), (101, 4)])
def test_group_axioms_exhaustive(p, d):
    E = EdwardsCurve(p, d)
    add = E.add if E.complete else E.add_general
    pts, index, table = _cayley_table(E, add)
    n = len(pts)
    o = index[E.identity().key()]
    for i in range(n):
        assert table[i][o] == i
        assert table[i][index[E.negate(pts[i]).key()]] == o
    for i, j in itertools.product(range(n), repeat=2):
        assert table[i][j] == table[j][i]
    for i, j in itertools.product(range(n), repeat=2):
        tij = table[i][j]
        row_j = table[j]
        row_ij = table[tij]
        ti = table[i]
        for k in range(n):
            assert row_ij[k] == ti[row_j[k]]


def test_general_law_agrees_with_complete_law(E101):
    pts = E101.points()
    for P, Q in itertools.product(pts[::3], pts[::4]):
        assert E101.add_general(P, Q) == E101.add(P, Q)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**70), st.integers(0, 2**70), st.integers(0, 10**6))
def test_scalar_mul_linear(m, n, seed):
    E = EdwardsCurve(2**61 - 1, 3)
    P = E.random_point(seed)
    assert E.scalar_mul(m + n, P) == E.scalar_mul(m, P) + E.scalar_mul(n, P)


def test_lift_from_y(E13):
    F = E13.field
    assert E13.lift_from_y(K1Point(F(1), F(1))) == E13.identity()
    lifts = {E13.lift_from_y(K1Point(F(1), F(0)), s).key() for s in (0, 1)}
    assert lifts == {E13.point(1, 1, 0, 0).key(), E13.point(1, 12, 0, 0).key()}
    # Euler's criterion on x^2 = (1 - y^2)/(1 - d y^2)
    non_liftable = [
        y for y in range(13) if pow((1 - y * y) * pow(1 - 5 * y * y, -1, 13), 6, 13) == 12
    ]
    assert non_liftable
    for y in non_liftable:
        with pytest.raises(NonSquare):
            E13.lift_from_y(K1Point(F(1), F(y)))


def test_lift_sign_convention(Ebig, rng):
    for _ in range(50):
        P = Ebig.random_point(rng)
        y = K1Point(P.X0, P.X2)
        P0, P1 = Ebig.lift_from_y(y, 0), Ebig.lift_from_y(y, 1)
        assert (P0.X1 / P0.X0).value % 2 == 0
        assert P1 == -P0
        assert P in (P0, P1)


def test_lift_at_infinity_on_square_d(E13_square):
    F = E13_square.field
    P = E13_square.lift_from_y(K1Point(F(0), F(1)))
    assert P.is_on_curve() and P.X0 == 0
    s = P.X2
    Q = E13_square.lift_from_y(K1Point(s, F(1)))  # d y^2 = 1
    assert Q.is_on_curve() and Q.X0 == 0 and Q.X2 == 0


def test_random_point_determinism(Ebig):
    assert Ebig.random_point(7) == Ebig.random_point(7)
    assert Ebig.random_point(7) != Ebig.random_point(8)
    assert Ebig.random_point(7).is_on_curve()


def test_construction_rejects_off_curve(E13):
    with pytest.raises(NotOnCurve):
        E13.point(1, 1, 1, 1)
    with pytest.raises(NotOnCurve):
        E13.point(0, 0, 0, 0)


def test_bad_d():
    for d in (0, 1, 14):
        with pytest.raises(ValueError):
            EdwardsCurve(13, d)


def test_serialization(E13):
    P = E13.point(1, 12, 0, 0)
    assert P.to_hex() == "1:c:0:0"
    assert E13.parse_point("1:c:0:0") == P
    with pytest.raises(NotOnCurve):
        E13.parse_point("1:1:1:1")


def test_projective_equality(E13):
    P = E13.point(1, 1, 0, 0)
    assert P == E13.point(3, 3, 0, 0)
    assert hash(P) == hash(E13.point(3, 3, 0, 0))
