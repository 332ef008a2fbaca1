"""Montgomery ladder on K2: y-coordinate-only scalar multiplication.

The state encodes pi(mP, (m+1)P). A 0 bit applies phi0, sending it to
pi(2mP, (2m+1)P); a 1 bit applies phi1, giving pi((2m+1)P, (2m+2)P).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from . import kummer2
from .edwards import EdwardsCurve
from .errors import ExceptionalPoint, Inconsistent, NonSquare
from .kummer1 import K1Point
from .kummer2 import K2Point, K2PointTriple


@dataclass(frozen=True)
class LadderState:
    """Ladder state; ``m`` is the scalar prefix consumed so far."""

    v: K2Point
    step_index: int = 0
    m: int = 0


def ladder_init(yP: K1Point, curve: EdwardsCurve) -> LadderState:
    """State for pi(O, P): ((1:1), yP, (1:0)) in Segre form."""
    F = curve.field
    t = K2PointTriple(curve, K1Point(F.one, F.one), yP, (F.one, F.zero), check=False)
    return LadderState(kummer2.triple_to_p3p1(t))


def ladder_step(s: LadderState, bit: int) -> LadderState:
    """One ladder step; retries on E^2 via a lift if the formulas vanish."""
    if bit not in (0, 1):
        raise ValueError(f"ladder bit must be 0 or 1, got {bit!r}")
    step = kummer2.phi1 if bit else kummer2.phi0
    try:
        v = step(s.v)
    except ExceptionalPoint as exc:
        fallback = kummer2.phi1_via_lift if bit else kummer2.phi0_via_lift
        try:
            v = fallback(s.v)
        except (NonSquare, Inconsistent, ExceptionalPoint):
            raise ExceptionalPoint(exc.map_name, s.v, step=s.step_index) from exc
    return LadderState(v, s.step_index + 1, 2 * s.m + bit)


def ladder_states(n: int, yP: K1Point, curve: EdwardsCurve) -> Iterator[LadderState]:
    """Initial state followed by the state after each bit of n, most significant first."""
    if n < 1:
        raise ValueError("the ladder is defined for n >= 1")
    s = ladder_init(yP, curve)
    yield s
    for ch in bin(n)[2:]:
        s = ladder_step(s, int(ch))
        yield s


def scalar_mul_ladder(n: int, yP: K1Point, curve: EdwardsCurve) -> K1Point:
    """Kummer-line image of nP, given only the image yP of P.

    >>> from splitkummer.edwards import EdwardsCurve
    >>> E = EdwardsCurve(13, 5)
    >>> scalar_mul_ladder(2, K1Point.from_ints(E.field, 1, 0), E).normalized()
    K1Point(1:c)
    """
    for s in ladder_states(n, yP, curve):
        pass
    return kummer2.p3p1_to_triple(s.v).x
