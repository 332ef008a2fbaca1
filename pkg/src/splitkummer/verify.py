"""Identity suite, exhaustive exceptional-point scanner and op counter.

Every Kummer-side map is compared against the Edwards group law on E^2
pushed through the projection. Failures are data: they are collected in a
:class:`ScanReport` with serialized inputs so a run can be replayed.
"""

from __future__ import annotations

import json
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable

from . import kummer1, kummer2, ladder
from .edwards import EdwardsCurve, EdwardsPoint
from .errors import ExceptionalPoint, Inconsistent, KummerError, NonSquare
from .field import OpCount
from .kummer1 import K1Point
from .kummer2 import K2Point
from .projective import proj_equal

EXHAUSTIVE_PRIME_LIMIT = 2**13


@dataclass
class ScanReport:
    prime: int
    d: int
    checked_points: int = 0
    failures: list[tuple[str, str]] = field(default_factory=list)
    exceptional_points: list[tuple[str, str]] = field(default_factory=list)
    kind: str = "identity_suite"
    checks: dict[str, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def finalize(self) -> "ScanReport":
        """Deduplicate and sort, so reports do not depend on visiting order."""
        self.failures = sorted(set(self.failures))
        self.exceptional_points = sorted(set(self.exceptional_points))
        self.checks = dict(sorted(self.checks.items()))
        return self

    def merge(self, other: "ScanReport") -> "ScanReport":
        if (self.prime, self.d) != (other.prime, other.d):
            raise ValueError("cannot merge reports for different curves")
        checks = Counter(self.checks)
        checks.update(other.checks)
        return ScanReport(
            self.prime,
            self.d,
            self.checked_points + other.checked_points,
            self.failures + other.failures,
            self.exceptional_points + other.exceptional_points,
            self.kind if self.kind == other.kind else "merged",
            dict(checks),
        ).finalize()

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "prime": self.prime,
            "d": self.d,
            "checked_points": self.checked_points,
            "failures": [list(f) for f in self.failures],
            "exceptional_points": [list(e) for e in self.exceptional_points],
            "checks": self.checks,
        }

    def to_record(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, separators=(",", ":"))

    def summary(self) -> str:
        lines = [
            f"{self.kind}: p={self.prime} d={self.d} checked_points={self.checked_points} "
            f"failures={len(self.failures)} exceptional_points={len(self.exceptional_points)}"
        ]
        for name, count in self.checks.items():
            lines.append(f"  {name}: {count}")
        for name, inp in self.failures:
            lines.append(f"  FAIL {name}: {inp}")
        for name, pt in self.exceptional_points:
            lines.append(f"  exceptional {name}: {pt}")
        return "\n".join(lines)


def _pair_str(P: EdwardsPoint, Q: EdwardsPoint) -> str:
    return f"{P.to_hex()}|{Q.to_hex()}"


class _Run:
    """Mutable accumulator behind one report."""

    def __init__(self, curve: EdwardsCurve, kind: str):
        self.curve = curve
        self.report = ScanReport(curve.p, curve.d.value, kind=kind)
        self.checks: Counter = Counter()
        general = not curve.complete
        self.add = curve.add_general if general else curve.add
        self.general = general

    def mul(self, n: int, P: EdwardsPoint) -> EdwardsPoint:
        return self.curve.scalar_mul(n, P, general=self.general)

    def check(self, name: str, ok: bool, inp: str) -> None:
        self.checks[name] += 1
        if not ok:
            self.report.failures.append((name, inp))

    def check_eq(self, name: str, a, b, inp: str) -> None:
        """Projective equality check; skipped when either side is undefined."""
        if a is None or b is None:
            self.checks[f"undefined.{name}"] += 1
            return
        self.check(name, a == b, inp)

    def apply(self, name: str, fn: Callable, fallback: Callable, k: K2Point) -> K2Point | None:
        """fn(k), else the lift-based fallback; None if the image is undefined.

        The image is undefined only when it lies on a base point of the
        projection, which needs a square d.
        """
        try:
            return fn(k)
        except ExceptionalPoint as exc:
            self.report.exceptional_points.append((exc.map_name, k.to_hex()))
            self.checks[f"fallback.{name}"] += 1
        try:
            return fallback(k)
        except ExceptionalPoint as exc:
            self.report.exceptional_points.append((exc.map_name, k.to_hex()))
            return None

    def done(self) -> ScanReport:
        self.report.checks = dict(self.checks)
        return self.report.finalize()


# -- identity checks on one pair (P, Q) -----------------------------------


def _check_pair(run: _Run, P: EdwardsPoint, Q: EdwardsPoint, rng: random.Random) -> None:
    curve = run.curve
    inp = _pair_str(P, Q)
    add, neg = run.add, curve.negate
    try:
        t = kummer2.project_pair(P, Q)
    except ExceptionalPoint as exc:
        run.report.exceptional_points.append((exc.map_name, inp))
        return
    k = kummer2.triple_to_p3p1(t)
    run.report.checked_points += 1

    # models and conversions
    run.check("closure.k1xk1xp1", t.relation_holds(), inp)
    run.check("closure.p3xp1", k.relations_hold(), inp)
    k7 = kummer2.p3p1_to_p7(k)
    run.check("closure.p7", k7.relations_hold(), inp)
    X, Y = P.X, Q.X
    e2_p7 = (
        X[0] * Y[0], X[2] * Y[0], X[0] * Y[2], X[2] * Y[2],
        X[1] * Y[1], X[3] * Y[1], X[1] * Y[3], X[3] * Y[3],
    )
    run.check("model.e2_to_p7", proj_equal(k7.T, e2_p7), inp)
    run.check("roundtrip.triple", kummer2.p3p1_to_triple(k) == t, inp)
    run.check("roundtrip.p7", kummer2.p7_to_p3p1(k7) == k, inp)
    run.check(
        "model.sigma_iota_agree",
        kummer2.triple_to_p3p1(kummer2.sigma(t)) == kummer2.sigma(k)
        and kummer2.triple_to_p3p1(kummer2.iota(t)) == kummer2.iota(k)
        and kummer2.p3p1_to_p7(kummer2.sigma(k)) == kummer2.sigma(k7)
        and kummer2.p3p1_to_p7(kummer2.iota(k)) == kummer2.iota(k7),
        inp,
    )

    def target(A, B):
        try:
            return kummer2.project_k2(A, B)
        except ExceptionalPoint as exc:
            run.report.exceptional_points.append((exc.map_name, _pair_str(A, B)))
            return None

    def on(fn, v):
        return None if v is None else fn(v)

    sig, iot = kummer2.sigma, kummer2.iota

    # automorphisms and endomorphisms against the E^2 oracle
    run.check("diagram.sigma", sig(k) == kummer2.project_k2(Q, P), inp)
    run.check_eq("diagram.iota", iot(k), target(neg(P), Q), inp)
    r = run.apply("rho", kummer2.rho, kummer2.rho_via_lift, k)
    tk = run.apply("tau", kummer2.tau, kummer2.tau_via_lift, k)
    f0 = run.apply("phi0", kummer2.phi0, kummer2.phi0_via_lift, k)
    f1 = run.apply("phi1", kummer2.phi1, kummer2.phi1_via_lift, k)
    run.check_eq("diagram.rho", r, target(add(P, Q), add(P, neg(Q))), inp)
    run.check_eq("diagram.tau", tk, target(add(P, Q), Q), inp)
    run.check_eq("diagram.phi0", f0, target(add(P, P), add(P, Q)), inp)
    run.check_eq("diagram.phi1", f1, target(add(P, Q), add(Q, Q)), inp)
    for v in (r, tk, f0, f1):
        if v is not None:
            run.check("closure.endomorphisms", v.relations_hold(), inp)

    # relations among the maps on K2
    run.check("relation.sigma_involution", sig(sig(k)) == k, inp)
    run.check("relation.iota_involution", iot(iot(k)) == k, inp)
    ik, sk = iot(k), sig(k)
    r_i = run.apply("rho", kummer2.rho, kummer2.rho_via_lift, ik)
    r_s = run.apply("rho", kummer2.rho, kummer2.rho_via_lift, sk)
    run.check_eq("relation.rho_iota", r_i, on(sig, r), inp)
    run.check_eq("relation.rho_sigma", r_s, on(iot, r), inp)
    f0s = run.apply("phi0", kummer2.phi0, kummer2.phi0_via_lift, sk)
    run.check_eq("relation.phi1_conjugate", f1, on(sig, f0s), inp)
    rr = None if r is None else run.apply("rho", kummer2.rho, kummer2.rho_via_lift, r)
    run.check_eq("relation.rho_squared", rr, target(add(P, P), add(Q, Q)), inp)

    # representatives of rho and tau with several forms
    try:
        direct = kummer2.rho_to_segre_direct(k)
    except ExceptionalPoint as exc:
        run.report.exceptional_points.append((exc.map_name, k.to_hex()))
    else:
        if r is not None:
            run.check("rho.segre_direct", proj_equal(direct, r.U), inp)
    forms = [f for f in kummer2.rho_segre_forms(k) if any(c.value for c in f)]
    run.check("rho.segre_forms_agree", all(proj_equal(forms[0], f) for f in forms), inp)
    forms = [f for f in kummer2.tau_pi3_forms(k) if any(c.value for c in f)]
    run.check("tau.pi3_forms_agree", all(proj_equal(forms[0], f) for f in forms), inp)

    # scale invariance
    F = curve.field
    lu, lz = F(rng.randrange(1, curve.p)), F(rng.randrange(1, curve.p))
    ks = k.scaled(lu, lz)
    for name, fn, fb, val in (
        ("rho", kummer2.rho, kummer2.rho_via_lift, r),
        ("tau", kummer2.tau, kummer2.tau_via_lift, tk),
        ("phi0", kummer2.phi0, kummer2.phi0_via_lift, f0),
    ):
        run.check_eq(f"scale.{name}", run.apply(name, fn, fb, ks), val, inp)

    # lifting
    try:
        A, B = kummer2.lift(k)
    except (NonSquare, Inconsistent) as exc:
        run.check("lift.fiber", False, f"{inp} ({exc})")
    else:
        run.check("lift.fiber", (A == P and B == Q) or (A == neg(P) and B == neg(Q)), inp)


def _check_point(run: _Run, P: EdwardsPoint) -> None:
    y = kummer1.project(P)
    inp = P.to_hex()
    run.check("k1.project_negation", kummer1.project(run.curve.negate(P)) == y, inp)
    run.check("k1.duplicate", kummer1.duplicate(y, run.curve) == kummer1.project(run.add(P, P)), inp)


def _check_ladder(run: _Run, n: int, P: EdwardsPoint, *, shape: bool = False) -> None:
    y = kummer1.project(P)
    inp = f"n={n} P={P.to_hex()}"
    try:
        if shape:
            ok = True
            states = list(ladder.ladder_states(n, y, run.curve))
            for s in states:
                expect = kummer2.project_k2(run.mul(s.m, P), run.mul(s.m + 1, P))
                ok = ok and s.v == expect
            run.check("ladder.step_shape", ok and states[-1].m == n, inp)
            out = kummer2.p3p1_to_triple(states[-1].v).x
        else:
            out = ladder.scalar_mul_ladder(n, y, run.curve)
    except ExceptionalPoint as exc:
        run.report.exceptional_points.append((exc.map_name, exc.point.to_hex()))
        _ladder_exception(run, "ladder.oracle", inp, exc)
        return
    run.check("ladder.oracle", out == kummer1.project(run.mul(n, P)), inp)


def _ladder_exception(run: _Run, name: str, inp: str, exc: ExceptionalPoint) -> None:
    # with d a square the ladder can start on a base point of the projection
    if run.curve.complete:
        run.check(name, False, f"{inp} ({exc})")
    else:
        run.checks[f"undefined.{name}"] += 1


def _check_bit_order(run: _Run, n: int, y: K1Point) -> bool:
    a = ladder.scalar_mul_ladder(2 * n, y, run.curve)
    b = kummer1.duplicate(ladder.scalar_mul_ladder(n, y, run.curve), run.curve)
    return a == b


def _twist_probe(run: _Run, rng: random.Random, samples: int) -> None:
    """Ladder on y-values that lift only over F_{p^2}; measured, never failed."""
    curve, F = run.curve, run.curve.field
    found = 0
    for _ in range(20 * samples):
        if found >= samples:
            break
        y = K1Point(F.one, F.random(rng))
        try:
            curve.lift_from_y(y)
            continue
        except NonSquare:
            pass
        except KummerError:
            continue
        found += 1
        n = rng.randrange(1, 1 << 16)
        try:
            agree = _check_bit_order(run, n, y)
        except KummerError:
            run.checks["twist.exceptional"] += 1
            continue
        run.checks["twist.bit_order_agree" if agree else "twist.bit_order_differ"] += 1


def run_identity_suite(
    curve: EdwardsCurve,
    samples: int | None = None,
    seed: int = 0,
    *,
    exhaustive: bool = False,
) -> ScanReport:
    """Check every module-level identity on random or all inputs.

    In exhaustive mode every pair of E(F_p)^2 and every (n, P) with
    1 <= n <= |E(F_p)| is visited; otherwise ``samples`` random inputs of
    each kind are drawn from a generator seeded with ``seed``.
    """
    run = _Run(curve, "identity_suite")
    rng = random.Random(seed)
    if exhaustive:
        pts = curve.points()
        order = len(pts)
        for P in pts:
            _check_point(run, P)
            for Q in pts:
                _check_pair(run, P, Q, rng)
        for P in pts:
            for n in range(1, order + 1):
                _check_ladder(run, n, P, shape=(n == order))
            _bit_order_case(run, rng.randrange(1, order + 1), P)
        twist_samples = min(curve.p, 200)
    else:
        samples = 1000 if samples is None else samples
        nbits = curve.p.bit_length() + 2
        for i in range(samples):
            P, Q = curve.random_point(rng), curve.random_point(rng)
            _check_point(run, P)
            _check_pair(run, P, Q, rng)
            n = rng.randrange(1, 1 << nbits)
            _check_ladder(run, n, P, shape=(i % 100 == 0))
            if i % 10 == 0:
                _bit_order_case(run, rng.randrange(1, 1 << nbits), P)
        twist_samples = min(samples, 200)
    _twist_probe(run, rng, twist_samples)
    return run.done()


def _bit_order_case(run: _Run, n: int, P: EdwardsPoint) -> None:
    y = kummer1.project(P)
    inp = f"n={n} P={P.to_hex()}"
    try:
        ok = _check_bit_order(run, n, y)
    except ExceptionalPoint as exc:
        _ladder_exception(run, "ladder.bit_order", inp, exc)
        return
    run.check("ladder.bit_order", ok, inp)


# -- exceptional-point scan -------------------------------------------------

_SINGLE_REPRESENTATIVE_MAPS = ("rho.pi1", "rho.pi2", "rho.pi3", "tau.pi1")


def scan_exceptional(curve: EdwardsCurve) -> ScanReport:
    """Catalog where the polynomial representatives vanish on pi(E(F_p)^2).

    At every cataloged point the lift-based fallback is evaluated and
    compared with the oracle; a mismatch or a fallback error is a failure.
    """
    if curve.p > EXHAUSTIVE_PRIME_LIMIT:
        raise ValueError(f"exhaustive scan needs p <= {EXHAUSTIVE_PRIME_LIMIT}")
    run = _Run(curve, "exceptional_scan")
    add, neg = run.add, curve.negate
    pts = curve.points()
    for P in pts:
        for Q in pts:
            inp = _pair_str(P, Q)
            forms = kummer2.pi3_forms(P, Q)
            used = next((i for i, f in enumerate(forms) if any(c.value for c in f)), None)
            if used is None:
                run.report.exceptional_points.append(("project_pair.pi3", inp))
                continue
            run.checks[f"form.project_pair.pi3.{used}"] += 1
            k = kummer2.project_k2(P, Q)
            run.report.checked_points += 1
            run.check("scan.invariants", k.relations_hold(), inp)

            x, y, z = kummer2.rho_projections(k)
            vanishing = [
                name
                for name, v in zip(_SINGLE_REPRESENTATIVE_MAPS, (x, y, z, kummer2._sum_line(k)))
                if v[0].value == 0 and v[1].value == 0
            ]
            i_seg = _first_index(kummer2.rho_segre_forms(k))
            i_tau = _first_index(kummer2.tau_pi3_forms(k))
            run.checks[f"form.rho.segre.{i_seg}"] += 1
            run.checks[f"form.tau.pi3.{i_tau}"] += 1
            if i_seg is None:
                vanishing.append("rho.segre")
            if i_tau is None:
                vanishing.append("tau.pi3")

            for name in vanishing:
                run.report.exceptional_points.append((name, k.to_hex()))
            rho_bad = any(n.startswith("rho.") for n in vanishing)
            tau_bad = any(n.startswith("tau.") for n in vanishing)
            cases = []
            if rho_bad:
                cases.append(("rho", kummer2.rho_via_lift, (add(P, Q), add(P, neg(Q)))))
            if tau_bad:
                cases.append(("tau", kummer2.tau_via_lift, (add(P, Q), Q)))
            for name, fallback, (A, B) in cases:
                try:
                    expect = kummer2.project_k2(A, B)
                except ExceptionalPoint:
                    # the target itself sits on a base point of the projection
                    run.checks[f"fallback.{name}.target_undefined"] += 1
                    continue
                try:
                    got = fallback(k)
                except KummerError as exc:
                    run.check(f"fallback.{name}", False, f"{inp} ({type(exc).__name__})")
                    continue
                run.check(f"fallback.{name}", got == expect, inp)
    return run.done()


def _first_index(forms) -> int | None:
    return next((i for i, f in enumerate(forms) if any(c.value for c in f)), None)


# -- operation counts -------------------------------------------------------

SECTIONS = ("rho", "tau", "phi0", "phi1", "sigma", "iota", "ladder_step", "ladder")


def _transfer(k: K2Point, curve: EdwardsCurve) -> K2Point:
    F = curve.field
    return K2Point(curve, [F(u.value) for u in k.U], [F(z.value) for z in k.Z], check=False)


def count_ops(
    section: str,
    curve: EdwardsCurve,
    point=None,
    *,
    n: int | None = None,
    bit: int = 0,
    seed: int = 0,
) -> OpCount:
    """Field-operation tallies for one evaluation of ``section``.

    ``point`` is a K2Point for the map sections and a K1Point for
    ``ladder``; a random liftable input is drawn from ``seed`` if omitted.
    ``ladder(n)`` is accepted as a spelling of ``section="ladder", n=n``.
    """
    if section.startswith("ladder(") and section.endswith(")"):
        n = int(section[7:-1], 0)
        section = "ladder"
    if section not in SECTIONS:
        raise ValueError(f"unknown section {section!r}; expected one of {', '.join(SECTIONS)}")
    icurve = curve.instrumented()
    F = icurve.field
    if section == "ladder":
        if n is None:
            raise ValueError("section 'ladder' needs n")
        if point is None:
            point = kummer1.project(curve.random_point(seed))
        y = K1Point(F(point.x0.value), F(point.x1.value))
        F.counter.reset()
        ladder.scalar_mul_ladder(n, y, icurve)
        return F.counter
    if point is None:
        point = kummer2.random_k2_point(curve, seed)
    k = _transfer(point, icurve)
    F.counter.reset()
    if section == "ladder_step":
        ladder.ladder_step(ladder.LadderState(k), bit)
    else:
        getattr(kummer2, section)(k)
    return F.counter
