"""Fixed points of the q-bracket: lifting, certification, local structure.

Roots are always hunted on the deflated quotient
g(X) = ([X]_q - X)/((q-1) X (X-1)), so the trivial fixed points 0 and 1
and the global factor q-1 are out of the way before any Newton step;
likewise the parameter direction works on h(x, U) with q = 1 + pi^t U.
Every returned record is re-certified by direct evaluation of the
bracket, independent of the series the root was found on.

Newton iteration runs on a precision ladder: each step evaluates the
series only a little past the accuracy the iterate already has, which
keeps the Horner sums short early on.  The ladder is transparent to
correctness because evaluations are honest at every hint.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from .analytic import (TruncatedSeries, _series2_monomials, a_poly, in_S,
                       log1p, q_bracket, q_pow, series1)
from .core import PadicNumber, PrimeContext
from .errors import CertificationFailure, DomainError, LiftFailure
from .polygon import unit_disk_zero_count

__all__ = [
    "FixedPointRecord",
    "SolveOutcome",
    "fixed_points_for_q",
    "hensel_lift",
    "local_Q",
    "m0_for_x",
    "multiplicity_from_c1",
    "multiplicity_of",
    "phi1_contains",
    "phi2_contains",
    "q_for_x",
]


@dataclass(frozen=True)
class FixedPointRecord:
    """One point (x, q-1) of M with its residue data and certification.

    ``certified_to`` is the verified lower bound on v([x]_q - x) in
    pi-units, obtained by direct evaluation, never from the series the
    root was lifted on.
    """

    x: PadicNumber
    q: PadicNumber
    m0: Fraction
    u: PadicNumber
    residue_x: int
    residue_u: int
    multiplicity: int
    certified_to: int

    def to_json(self) -> dict:
        return {
            "x": self.x.to_json(),
            "q": self.q.to_json(),
            "u": self.u.to_json(),
            "m0": f"{self.m0.numerator}/{self.m0.denominator}",
            "residue_x": self.residue_x,
            "residue_u": self.residue_u,
            "multiplicity": self.multiplicity,
            "certified_to": self.certified_to,
        }


class SolveOutcome(Sequence):
    """Sequence of records plus the polygon's predicted root count.

    ``deficit`` counts roots the Newton polygon certifies inside the
    closed unit disk but that do not lie in the working field; they are
    reported, not chased into extensions.
    """

    __slots__ = ("records", "predicted", "m0")

    def __init__(self, records: tuple, predicted: int, m0: Fraction):
        self.records = tuple(records)
        self.predicted = predicted
        self.m0 = m0

    @property
    def deficit(self) -> int:
        return self.predicted - len(self.records)

    def __len__(self) -> int:
        return len(self.records)

    def __getitem__(self, i):
        return self.records[i]

    def __repr__(self) -> str:
        return (f"SolveOutcome({len(self.records)} records, "
                f"predicted={self.predicted}, m0={self.m0})")


def _budget(K: int) -> int:
    return math.ceil(math.log2(max(K, 2))) + 2


def _newton_loop(ctx: PrimeContext, feval, fpeval, seed: PadicNumber,
                 target: int, budget: int) -> PadicNumber:
    """Newton iteration with laddered evaluation hints.

    ``feval(point, hint)`` must be honest: the result carries only
    digits that are actually correct.  Stops once v(f(x)) >= target.
    The derivative is evaluated at the same hint as f so the step never
    truncates the iterate harder than the ladder intends.
    """
    x = seed
    est = 1        # lower bound on v(f(x)) guaranteed by the last step
    s = 0          # v(f'), measured at the first nonzero evaluation
    stepped = False
    updates = 0
    for _ in range(2 * budget + 6):
        hint = min(target, max(8 * ctx.e, 2 * est - s + 2 * ctx.e))
        fx = feval(x, hint)
        low = fx.prec if fx.is_zero else fx.val
        if low >= target:
            if not stepped:
                return x
            # the iterate was re-embedded exactly; cap at what the
            # function value actually certifies
            return x._cap_prec(low - s)
        if fx.is_zero:
            if fx.prec < hint:
                raise LiftFailure("evaluation caps out below the target precision")
            est = max(est, fx.prec)
            continue
        fpx = fpeval(x, hint)
        if fpx.is_zero:
            fpx = fpeval(x, None)
            if fpx.is_zero:
                raise LiftFailure("derivative is zero-flagged at precision (multiple root?)")
        if not stepped:
            s = fpx.val
            if fx.val <= 2 * s:
                raise LiftFailure("Newton criterion v(f) > 2 v(f') fails at the seed")
        x = (x - fx * fpx.inv())._lift_exact(ctx.K)
        est = min(2 * fx.val - s, hint)
        stepped = True
        updates += 1
        if updates > budget:
            raise LiftFailure("no convergence within the iteration budget "
                              "(is the target precision attainable?)")
    raise LiftFailure("no convergence within the iteration budget "
                      "(is the target precision attainable?)")


def hensel_lift(f, seed: PadicNumber, *, target: int | None = None) -> PadicNumber:
    """Lift a root from a seed with v(f(seed)) > 2 v(f'(seed)).

    ``f`` is a TruncatedSeries, or a pair (f, fprime) of callables on
    PadicNumbers.  The default target is K - 2e pi-units, lowered to the
    series tail bound when that is smaller.  The returned root satisfies
    v(root - seed) > v(f'(seed)).
    """
    ctx = seed.ctx
    if isinstance(f, TruncatedSeries):
        fd = f.derivative()
        feval, fpeval = f.evaluate, fd.evaluate
        cap = f._cap_pi()
    elif isinstance(f, tuple) and len(f) == 2:
        raw_f, raw_fp = f
        feval = lambda pt, hint: raw_f(pt)
        fpeval = lambda pt, hint: raw_fp(pt)
        cap = None
    else:
        raise TypeError("f must be a TruncatedSeries or a (f, fprime) pair of callables")
    if target is None:
        target = ctx.K - 2 * ctx.e
        if cap is not None:
            target = min(target, cap)
    fp0 = fpeval(seed, None)
    if fp0.is_zero:
        raise LiftFailure("derivative is zero-flagged at precision (multiple root?)")
    root = _newton_loop(ctx, feval, fpeval, seed, target, _budget(ctx.K))
    moved = root - seed
    if not moved.is_zero and moved.val <= fp0.val:
        raise LiftFailure("lift left the contraction ball of the seed")
    return root


def _roots_from_seed(ctx: PrimeContext, g: TruncatedSeries, gp: TruncatedSeries,
                     seed: PadicNumber, target: int) -> list:
    """All roots reachable from one residue seed, refining when needed.

    When the Newton criterion fails at a seed but the value still
    vanishes there at precision, the disk is subdivided one pi-level
    down and each sub-center retried, up to a bounded depth.  In the
    configurations the solver is used on, every in-field root has a
    unit derivative at its residue seed and refinement never fires; it
    exists so clustered roots degrade into an honest deficit instead of
    a wrong count.
    """
    found = []
    stack = [(seed, 0)]
    nodes = 0
    while stack:
        pt, depth = stack.pop()
        nodes += 1
        if nodes > 8 * ctx.p:
            break
        fx = g.evaluate(pt, 8 * ctx.e)
        fpx = gp.evaluate(pt, 8 * ctx.e)
        if fpx.is_zero:
            fpx = gp.evaluate(pt, None)
        low = fx.prec if fx.is_zero else fx.val
        if not fpx.is_zero and low > 2 * fpx.val:
            try:
                found.append(_newton_loop(ctx, g.evaluate, gp.evaluate, pt,
                                          target, _budget(ctx.K)))
            except LiftFailure:
                pass
            continue
        if depth < 2 * ctx.e and low > depth:
            for d in range(ctx.p):
                child = pt if d == 0 else pt + ctx.pi_pow(depth + 1)._mul_int(d)
                stack.append((child, depth + 1))
    return found


def _same_point(a: PadicNumber, b: PadicNumber) -> bool:
    d = a - b
    return d.is_zero or d.val >= min(a.prec, b.prec) - 2 * a.ctx.e


def _probe_target(series: TruncatedSeries, point: PadicNumber) -> int:
    """Attainable evaluation precision, probed rather than derived."""
    probe = series.evaluate(point)
    return probe.prec - series.ctx.e


def _c1_at(x: PadicNumber, q: PadicNumber) -> PadicNumber:
    """The derivative coefficient q^x log(q)/(q-1) - 1 at a point."""
    ctx = q.ctx
    y = q - ctx.one()
    big_l = log1p(y)
    return q_pow(x, q) * big_l * y.inv() - ctx.one()


def multiplicity_from_c1(c1: PadicNumber) -> int:
    """Classifier core: a vanishing first derivative means a double point."""
    return 2 if c1.is_zero else 1


def _certify(x: PadicNumber, q: PadicNumber, m0: Fraction,
             u: PadicNumber) -> FixedPointRecord:
    ctx = q.ctx
    diff = q_bracket(x, q) - x
    cert = diff.prec if diff.is_zero else diff.val
    bound = ctx.K - 4 * ctx.e
    if cert < bound:
        raise CertificationFailure(
            f"direct evaluation certifies only v >= {cert} pi-units, below the "
            f"acceptance line {bound}")
    if x.is_zero or (x - ctx.one()).is_zero:
        raise CertificationFailure("trivial root escaped deflation")
    return FixedPointRecord(
        x=x, q=q, m0=m0, u=u,
        residue_x=x.residue(), residue_u=u.residue(),
        multiplicity=multiplicity_from_c1(_c1_at(x, q)),
        certified_to=cert)


def _record_key(rec: FixedPointRecord):
    return (rec.residue_x, rec.residue_u, rec.x.val if not rec.x.is_zero else rec.x.prec,
            rec.x.digits())


def fixed_points_for_q(q: PadicNumber) -> SolveOutcome:
    """All nontrivial fixed points of [X]_q in the working field.

    Lifts the deflated series from every residue seed (nontrivial
    residues 2..p-1 first, then 0 and 1, which only carry roots at
    m0 = 1/(p-2)); stops early once the polygon's count is reached.
    """
    ctx = q.ctx
    one = ctx.one()
    y = q - one
    if y.is_zero:
        raise DomainError("q = 1 fixes everything; the fiber is not discrete")
    if not in_S(y):
        raise DomainError("fixed_points_for_q needs v(q-1) > 1/(p-1)")
    t = y.val
    m0 = Fraction(t, ctx.e)
    if ctx.p == 2 or m0 > Fraction(1, ctx.p - 2):
        return SolveOutcome((), 0, m0)
    u = y.scale_pi(-t)
    s1 = series1(ctx.from_int(0), q,
                 tail_target=Fraction(ctx.K, ctx.e) + m0 + 1)
    predicted = unit_disk_zero_count(s1) - 2
    g = s1.drop_center_root().divide_by_root(one).scale(y.inv())
    gp = g.derivative()
    target = _probe_target(g, ctx.from_int(ctx.p + 1)) + ctx.e
    roots = []
    for r in list(range(2, ctx.p)) + [0, 1]:
        for root in _roots_from_seed(ctx, g, gp, ctx.from_int(r), target):
            if not any(_same_point(root, old) for old in roots):
                roots.append(root)
        if len(roots) == predicted:
            break
    records = sorted((_certify(x, q, m0, u) for x in roots), key=_record_key)
    return SolveOutcome(tuple(records), predicted, m0)


def phi1_contains(x: PadicNumber) -> bool:
    """Is x in phi1(M)?  Exactly when 0 <= v(A_{p-2}(x)) < 1/(p-1)."""
    ctx = x.ctx
    if ctx.p == 2:
        return False
    if not x.is_zero and x.val < 0:
        return False
    big_a = a_poly(ctx.p - 2, x)
    if big_a.is_zero:
        return False
    return 0 <= big_a.val and big_a.val * (ctx.p - 1) < ctx.e


def phi2_contains(m0, p: int) -> bool:
    """Is m0 an admissible parameter valuation?  1/(p-1) < m0 <= 1/(p-2)."""
    m0 = Fraction(m0)
    return p != 2 and Fraction(1, p - 1) < m0 <= Fraction(1, p - 2)


def m0_for_x(x: PadicNumber) -> Fraction:
    """The unique admissible m0 for x, (1 - v(A_{p-2}(x)))/(p-2)."""
    ctx = x.ctx
    if ctx.p == 2:
        raise DomainError("p = 2 admits no nontrivial fixed points")
    if not phi1_contains(x):
        raise DomainError("x is not in phi1(M): need 0 <= v(A_{p-2}(x)) < 1/(p-1)")
    big_a = a_poly(ctx.p - 2, x)
    return (1 - Fraction(big_a.val, ctx.e)) / (ctx.p - 2)


def q_for_x(x: PadicNumber) -> SolveOutcome:
    """All q with x a nontrivial fixed point of [X]_q, via h(x, U) in U."""
    ctx = x.ctx
    m0 = m0_for_x(x)
    t = m0 * ctx.e
    if t.denominator != 1:
        required = ctx.e * m0.denominator // math.gcd(ctx.e, m0.denominator)
        raise DomainError(
            f"m0 = {m0} needs ramification e divisible by {m0.denominator}; "
            f"rebuild the context with e = {required}",
            required_e=required)
    t = int(t)
    h = _series2_monomials(x, m0)
    if h.coeffs[0].is_zero or h.coeffs[0].val != 0:
        raise CertificationFailure("leading parameter coefficient is not a unit")
    predicted = unit_disk_zero_count(h)
    hp = h.derivative()
    target = _probe_target(h, ctx.from_int(1)) + ctx.e
    units = []
    for r in range(1, ctx.p):
        for root in _roots_from_seed(ctx, h, hp, ctx.from_int(r), target):
            if not any(_same_point(root, old) for old in units):
                units.append(root)
        if len(units) == predicted:
            break
    one = ctx.one()
    records = []
    for u in units:
        q = one + u.scale_pi(t)
        records.append(_certify(x, q, m0, u))
    records.sort(key=_record_key)
    return SolveOutcome(tuple(records), predicted, m0)


def _on_manifold(x: PadicNumber, q: PadicNumber) -> bool:
    ctx = q.ctx
    diff = q_bracket(x, q) - x
    cert = diff.prec if diff.is_zero else diff.val
    return cert >= ctx.K - 4 * ctx.e


def multiplicity_of(x: PadicNumber, q: PadicNumber) -> int:
    """1 for a simple fixed point, 2 when the series derivative vanishes."""
    if not _on_manifold(x, q):
        raise DomainError("(x, q) is not certified as a fixed point at precision")
    return multiplicity_from_c1(_c1_at(x, q))


def local_Q(x: PadicNumber, q: PadicNumber, xp: PadicNumber) -> PadicNumber:
    """The unique q' near q with x' a fixed point of [X]_{q'}.

    Requires (x, q) on M and x' inside the open ball of radius
    |A_{p-2}(x)| around x.  The exact law
    v(q'-q) = v(([x']_q - x')/(x'(x'-1))) is checked before returning.
    """
    ctx = q.ctx
    if not _on_manifold(x, q):
        raise DomainError("(x, q) is not certified as a fixed point at precision")
    one = ctx.one()
    y = q - one
    t = y.val
    m0 = Fraction(t, ctx.e)
    u = y.scale_pi(-t)
    gap = xp - x
    if not gap.is_zero:
        big_a = a_poly(ctx.p - 2, x)
        if big_a.is_zero:
            raise DomainError("cannot locate the ball radius: A_{p-2}(x) is zero-flagged")
        if gap.val <= big_a.val:
            raise DomainError("x' lies outside the open ball B(x, |A_{p-2}(x)|)")
    h = _series2_monomials(xp, m0)
    hp = h.derivative()
    target = _probe_target(h, u) + ctx.e
    u2 = _newton_loop(ctx, h.evaluate, hp.evaluate, u, target, _budget(ctx.K))
    q2 = one + u2.scale_pi(t)
    lhs = q2 - q
    rhs = (q_bracket(xp, q) - xp) * (xp * (xp - one)).inv()
    if lhs.is_zero != rhs.is_zero:
        raise CertificationFailure("local uniqueness law failed at carried precision")
    if not lhs.is_zero and lhs.val != rhs.val:
        raise CertificationFailure(
            f"local uniqueness law failed: v(q'-q) = {lhs.val} pi-units but the "
            f"bracket quotient has v = {rhs.val}")
    return q2
