import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from splitkummer import kummer2
from splitkummer.edwards import EdwardsCurve
from splitkummer.errors import ExceptionalPoint
from splitkummer.kummer1 import K1Point, duplicate, project
from splitkummer.kummer2 import K2Point, project_k2
from splitkummer.ladder import ladder_init, ladder_states, ladder_step, scalar_mul_ladder

BIG = EdwardsCurve(2**61 - 1, 3)


def test_init_examples(E13, Ebig, rng):
    s = ladder_init(K1Point.from_ints(E13.field, 1, 1), E13)
    assert s.v == K2Point.from_ints(E13, (1, 1, 1, 1), (1, 0))
    assert (s.step_index, s.m) == (0, 0)
    for _ in range(100):
        P = Ebig.random_point(rng)
        v = ladder_init(project(P), Ebig).v
        assert v.relations_hold()
        assert v == project_k2(Ebig.identity(), P)


def test_bit_zero_fixes_identity_state(E13):
    s = ladder_init(K1Point.from_ints(E13.field, 1, 1), E13)
    t = ladder_step(s, 0)
    assert t.v == s.v
    assert (t.step_index, t.m) == (1, 0)


def test_first_steps_match_oracle(Ebig, rng):
    for _ in range(200):
        P = Ebig.random_point(rng)
        s = ladder_init(project(P), Ebig)
        s1 = ladder_step(s, 1)
        assert s1.v == project_k2(P, 2 * P)
        s2 = ladder_step(s1, 0)
        assert s2.v == project_k2(2 * P, 3 * P)
        assert s2.m == 2


def test_bad_bit(E13):
    s = ladder_init(K1Point.from_ints(E13.field, 1, 1), E13)
    with pytest.raises(ValueError):
        ladder_step(s, 2)


def test_scalar_mul_examples(E13, Ebig, rng):
    y = K1Point.from_ints(E13.field, 1, 0)
    assert scalar_mul_ladder(2, y, E13) == K1Point.from_ints(E13.field, 12, 1)
    assert scalar_mul_ladder(2, y, E13) == duplicate(y, E13)
    P = Ebig.random_point(rng)
    assert scalar_mul_ladder(1, project(P), Ebig) == project(P)


def test_multiple_of_order(E101):
    for P in E101.points()[::9]:
        order = next(k for k in range(1, E101.order() + 1) if (k * P) == E101.identity())
        for k in (1, 2, 3):
            assert scalar_mul_ladder(k * order, project(P), E101) == K1Point.from_ints(E101.field, 1, 1)


def test_zero_rejected(E13):
    with pytest.raises(ValueError):
        scalar_mul_ladder(0, K1Point.from_ints(E13.field, 1, 0), E13)


def test_step_shape(Ebig, rng):
    for _ in range(20):
        P = Ebig.random_point(rng)
        n = rng.randrange(1, 2**64)
        for s in ladder_states(n, project(P), Ebig):
            assert s.m == n >> (n.bit_length() - s.step_index)
            assert s.v == project_k2(s.m * P, (s.m + 1) * P)
        assert s.m == n


def test_oracle_small_exhaustive(E13):
    for P in E13.points():
        for n in range(1, E13.order() + 1):
            assert scalar_mul_ladder(n, project(P), E13) == project(n * P)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 2**64), st.integers(0, 10**9))
def test_bit_order(n, seed):
    y = project(BIG.random_point(seed))
    assert scalar_mul_ladder(2 * n, y, BIG) == duplicate(scalar_mul_ladder(n, y, BIG), BIG)


def test_fallback_used_when_formula_vanishes(E13, monkeypatch):
    def broken(k):
        raise ExceptionalPoint("phi0", k)

    monkeypatch.setattr(kummer2, "phi0", broken)
    for P in E13.points():
        assert scalar_mul_ladder(6, project(P), E13) == project(6 * P)


def test_exceptional_step_reported(E13_square):
    # a point at infinity with d y^2 = 1 starts the ladder on a base point of the projection
    E = E13_square
    P = next(P for P in E.points() if P.X0 == 0 and P.X2 == 0)
    with pytest.raises(ExceptionalPoint) as info:
        scalar_mul_ladder(5, project(P), E)
    assert info.value.step is not None
