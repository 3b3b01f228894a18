"""
Certificate Refinement

From a certificate of size ``|S|`` on a planar one-dimensional prevariety
with ``c`` branches, build a certificate over degree ``r`` times larger with
at least ``(|S| - c) r`` members: every edge ``(i, j)`` of the Newton-lift
graph is subdivided into the monomials ``(r - p) a_i + p a_j`` with
coefficients ``(r - p) A_i + p A_j - eps p (r - p)``.

Witnesses: subdivision endpoints keep the original witnesses; the interior
member ``p`` is minimal next to the envelope vertex of ``(i, j)``, at parameter
``t_v + eps (2p - r) / (s_i - s_j)`` where ``s`` are the slopes on that
branch. ``eps`` starts at a quarter of the smallest envelope slack divided by
``r^2`` and is halved until the result verifies; if the closed-form witnesses
fail, witnesses are read off the exact envelopes of the refined polynomial.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ..algebra.polynomials import Monomial, Point, TropPoly, eval_poly, lower_envelope, restrict_to_segment
from ..algebra.scalars import PerturbedScalar
from ..errors import InvariantViolation, PreconditionError, RefinementBudgetExceededError
from ..geometry.prevariety import Prevariety
from ..independence.certificates import Certificate, verify_certificate
from ..settings import get_settings
from .newton_lift import NewtonLift, build_newton_lift

logger = logging.getLogger(__name__)

Subdivision = Tuple[Tuple[int, int], int, Optional[Fraction]]


@dataclass(frozen=True)
class RefinementParams:
    r: int
    epsilon: Fraction
    attempts: int
    subdivision: Tuple[Subdivision, ...]
    envelope_witnesses: bool = False


def _real_support(cert: Certificate) -> List[Tuple[Monomial, Fraction]]:
    support = []
    for f, b in cert.members:
        monomial, coeff = f.terms[0]
        value = coeff + b
        if value.is_perturbed:
            raise PreconditionError("refinement needs unperturbed certificate coefficients")
        support.append((monomial, value.real))
    return support


def _values(support: Sequence[Tuple[Monomial, Fraction]], x: Sequence[Fraction]) -> List[Fraction]:
    return [c + m.pair(x) for m, c in support]


def _slack(cert: Certificate, support, lift: NewtonLift, V: Prevariety) -> Fraction:
    """Smallest positive gap to the minimum at envelope vertices and witnesses."""

    gaps: List[Fraction] = []
    samples = [p.coords for p, _ in cert.witnesses]
    for seg, envelope in zip(V.segments, lift.envelopes):
        samples.extend(seg.point_at(v.t.real).coords for v in envelope.vertices)
    for x in samples:
        values = _values(support, x)
        low = min(values)
        gaps.extend(v - low for v in values if v > low)
    return min(gaps) if gaps else Fraction(1)


def _envelope_witnesses(poly: TropPoly, V: Prevariety) -> Optional[List[Point]]:
    found: Dict[int, Point] = {}
    for seg in V.segments:
        envelope = lower_envelope(restrict_to_segment(poly, seg))
        for piece in envelope.pieces:
            if not piece.unique or piece.terms[0] in found:
                continue
            start = piece.start.real if piece.start is not None else None
            end = piece.end.real if piece.end is not None else None
            if start is not None and end is not None:
                if not start < end:
                    continue
                t = (start + end) / 2
            elif start is not None:
                t = start + 1
            elif end is not None:
                t = end - 1
            else:
                t = Fraction(0)
            found[piece.terms[0]] = seg.point_at(t)
    for point in V.points:
        _, argmin = eval_poly(poly, point.coords)
        if len(argmin) == 1:
            found.setdefault(next(iter(argmin)), point)
    if len(found) != len(poly.terms):
        return None
    return [found[i] for i in range(len(poly.terms))]


def _attempt(
    cert: Certificate,
    support,
    lift: NewtonLift,
    V: Prevariety,
    r: int,
    eps: Fraction,
) -> Tuple[Optional[Certificate], Tuple[Subdivision, ...], bool]:
    exponents: List[Tuple[int, ...]] = []
    coefficients: List[Fraction] = []
    witnesses: List[Optional[Point]] = []
    log: List[Subdivision] = []
    seen = set()

    for i, (m, c) in enumerate(support):
        e = tuple(r * x for x in m.exponents)
        seen.add(e)
        exponents.append(e)
        coefficients.append(r * c)
        witnesses.append(cert.witness_of(i))

    for i, j in lift.edges:
        data = lift.graph.edges[i, j]
        seg = V.segments[data["segment"]]
        w = [Fraction(d) for d in seg.direction]
        (a_i, c_i), (a_j, c_j) = support[i], support[j]
        s_i, s_j = a_i.pair(w), a_j.pair(w)
        for p in range(1, r):
            e = tuple((r - p) * x + p * y for x, y in zip(a_i.exponents, a_j.exponents))
            if e in seen:
                continue
            seen.add(e)
            exponents.append(e)
            coefficients.append((r - p) * c_i + p * c_j - eps * p * (r - p))
            tau: Optional[Fraction] = None
            if s_i != s_j:
                tau = data["t"].real + eps * (2 * p - r) / (s_i - s_j)
                if not seg.contains_parameter(tau):
                    tau = None
            witnesses.append(seg.point_at(tau) if tau is not None else None)
            log.append(((i, j), p, tau))

    members = tuple((TropPoly.monomial(Monomial(e)), PerturbedScalar.of(c)) for e, c in zip(exponents, coefficients))
    if all(w is not None for w in witnesses):
        candidate = Certificate(members, tuple((w, k) for k, w in enumerate(witnesses)), V)
        if verify_certificate(candidate, V):
            return candidate, tuple(log), False

    poly = TropPoly(tuple((Monomial(e), c) for e, c in zip(exponents, coefficients)))
    points = _envelope_witnesses(poly, V)
    if points is None:
        return None, tuple(log), True
    candidate = Certificate(members, tuple((w, k) for k, w in enumerate(points)), V)
    if verify_certificate(candidate, V):
        return candidate, tuple(log), True
    return None, tuple(log), True


def run_refinement(cert: Certificate, V: Prevariety, r: int) -> Tuple[Certificate, Optional[RefinementParams]]:
    if r < 1:
        raise PreconditionError(f"refinement factor must be at least 1, got {r}")
    if r == 1:
        return cert, None
    lift = build_newton_lift(cert, V)
    support = _real_support(cert)
    eps = _slack(cert, support, lift, V) / (4 * r * r)
    halvings = get_settings().budgets.refine_halvings
    for attempt in range(1, halvings + 2):
        refined, log, fallback = _attempt(cert, support, lift, V, r, eps)
        if refined is not None:
            target = (len(support) - V.branch_count) * r
            if refined.size < target:
                raise InvariantViolation(f"refined certificate has {refined.size} < {target} members")
            logger.info("Refined %d -> %d members with r=%d, eps=%s", len(support), refined.size, r, eps)
            return refined, RefinementParams(r, eps, attempt, log, fallback)
        logger.info("Refinement with eps=%s failed; halving", eps)
        eps /= 2
    raise RefinementBudgetExceededError(f"refinement did not verify after {halvings} halvings", eps * 2)


def refine_certificate(cert: Certificate, V: Prevariety, r: int) -> Certificate:
    refined, _ = run_refinement(cert, V, r)
    return refined
