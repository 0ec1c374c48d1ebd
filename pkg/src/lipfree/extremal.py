"""Extreme and exposed molecules of the free-space unit ball.

On a finite space the unit ball is the convex hull of the molecules, so a
molecule is exposed by ``f`` as soon as ``f`` pairs to 1 with it and to
strictly less than 1 with every other molecule. :func:`classify_molecule`
decides via the metric segment; :func:`brute_force_extreme` decides the
same question by an LP over the other molecules and shares no code path
with it beyond the molecule vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import NontrivialSegment, NormViolation, PreconditionNotMet, SamePoint
from .free_space import (
    Representation,
    dual_norm,
    from_representation,
    molecule,
    pairing,
    primal_norm,
    rebase,
)
from .lipschitz import LipFunction, lip_norm, magic_function, pair_quotient
from .metric import FiniteMetricSpace, PointRef, epsilon_segment, segment, to_fraction
from .simplex import linprog

RATIONALE = (
    "finite space: the unit ball is the convex hull of the molecules, so "
    "strict domination over every other molecule exposes the pair's molecule"
)


@dataclass(frozen=True)
class Decomposition:
    """``m_pq = w1 * m_pz + w2 * m_zq`` with ``z`` strictly inside ``[p, q]``."""

    pair: tuple
    via: int
    weights: tuple

    def representation(self) -> Representation:
        p, q = self.pair
        z = self.via
        return Representation(((self.weights[0], (p, z)), (self.weights[1], (z, q))))


@dataclass(frozen=True)
class ExposureCertificate:
    pair: tuple
    function: LipFunction
    margin: Fraction
    rationale: str = RATIONALE


@dataclass(frozen=True)
class MoleculeReport:
    pair: tuple
    segment_points: frozenset
    is_trivial_segment: bool
    is_extreme: bool
    is_exposed: bool
    evidence: object = field(compare=False)


def _indices(M, pair) -> tuple[int, int]:
    p, q = (M.index(v) for v in pair)
    if p == q:
        raise SamePoint("a molecule needs two distinct points")
    return p, q


def exposure_margin(M: FiniteMetricSpace, pair, f: LipFunction | None = None) -> Fraction:
    """``min 1 - quotient(f, u, v)`` over ordered pairs ``(u, v) != pair``."""
    p, q = _indices(M, pair)
    if f is None:
        f = magic_function(M, p, q)
    return min(
        1 - pair_quotient(f, u, v) for u, v in M.ordered_pairs() if (u, v) != (p, q)
    )


def exposure_certificate(M: FiniteMetricSpace, pair) -> ExposureCertificate:
    p, q = _indices(M, pair)
    if len(segment(M, p, q)) != 2:
        raise NontrivialSegment(
            f"[{M.points[p]}, {M.points[q]}] has interior points; no exposing function"
        )
    f = magic_function(M, p, q)
    margin = exposure_margin(M, (p, q), f)
    # a failure here would contradict the exposure theorem
    assert margin > 0, "magic function failed to expose a trivial-segment molecule"
    return ExposureCertificate((p, q), f, margin)


def verify_certificate(cert: ExposureCertificate) -> bool:
    """Replay a certificate from its stored function alone."""
    f = cert.function
    M = f.space
    p, q = cert.pair
    return (
        lip_norm(f) <= 1
        and pairing(molecule(M, p, q), f) == 1
        and exposure_margin(M, (p, q), f) == cert.margin
        and cert.margin > 0
    )


def decomposition(M: FiniteMetricSpace, pair) -> Decomposition | None:
    """Convex splitting through the interior segment point nearest to ``p``."""
    p, q = _indices(M, pair)
    inner = sorted(segment(M, p, q) - {p, q}, key=lambda z: (M.dist[p][z], z))
    if not inner:
        return None
    z = inner[0]
    dpq = M.dist[p][q]
    return Decomposition((p, q), z, (M.dist[p][z] / dpq, M.dist[z][q] / dpq))


def classify_molecule(M: FiniteMetricSpace, pair) -> MoleculeReport:
    p, q = _indices(M, pair)
    seg = segment(M, p, q)
    trivial = len(seg) == 2
    evidence = exposure_certificate(M, (p, q)) if trivial else decomposition(M, (p, q))
    return MoleculeReport((p, q), seg, trivial, trivial, trivial, evidence)


def brute_force_extreme(M: FiniteMetricSpace, pair) -> tuple[bool, Representation | None]:
    """Is ``m_pq`` outside the convex hull of the other molecules?

    Returns ``(True, None)`` when the feasibility LP is infeasible, else
    ``(False, combination)`` with nonnegative weights summing to one.
    """
    p, q = _indices(M, pair)
    target = molecule(M, p, q).coeffs
    others = [(u, v) for u, v in M.ordered_pairs() if (u, v) != (p, q)]
    vecs = [molecule(M, u, v).coeffs for u, v in others]
    rows = [[vec[x] for vec in vecs] for x in M.non_base()]
    rhs = [target[x] for x in M.non_base()]
    rows.append([Fraction(1)] * len(others))
    rhs.append(Fraction(1))
    res = linprog([Fraction(0)] * len(others), A_eq=rows, b_eq=rhs)
    if not res.ok:
        return True, None
    terms = tuple((w, pr) for w, pr in zip(res.x, others) if w)
    return False, Representation(terms)


@dataclass(frozen=True)
class MassCheck:
    passed: bool
    tail_mass: Fraction
    small_indices: tuple


def mass_concentration_check(a: Sequence, b: Sequence, alpha, eps) -> MassCheck:
    """Check that mass of ``a`` where ``|b| <= 1 - alpha`` is at most ``eps``.

    Requires ``||a||_1 = 1``, ``||b||_inf <= 1`` and
    ``<a, b> >= 1 - alpha * eps``.
    """
    a = [to_fraction(v) for v in a]
    b = [to_fraction(v) for v in b]
    alpha, eps = to_fraction(alpha), to_fraction(eps)
    if len(a) != len(b):
        raise NormViolation("a and b must have the same length")
    if sum(abs(v) for v in a) != 1:
        raise NormViolation("a must have l1 norm exactly 1")
    if any(abs(v) > 1 for v in b):
        raise NormViolation("b must have sup norm at most 1")
    if not (0 < alpha < 1 and 0 < eps < 1):
        raise NormViolation("alpha and eps must lie in (0, 1)")
    if sum(x * y for x, y in zip(a, b)) < 1 - alpha * eps:
        raise PreconditionNotMet("pairing", "<a, b> < 1 - alpha*eps")
    small = tuple(n for n, v in enumerate(b) if abs(v) <= 1 - alpha)
    tail = sum((abs(a[n]) for n in small), Fraction(0))
    return MassCheck(tail <= eps, tail, small)


@dataclass(frozen=True)
class SplitResult:
    good: Representation
    bad: Representation
    bad_mass: Fraction
    residual_norm: Fraction
    segment_points: frozenset
    violations: tuple

    @property
    def ok(self) -> bool:
        return not self.violations


def split_representation(
    M: FiniteMetricSpace, p: PointRef, q: PointRef, r: Representation, alpha, eps
) -> SplitResult:
    """Separate the terms of ``r`` that nearly norm the exposing function.

    A term is good when ``|<m_uv, f_pq>| > 1 - alpha``. For inputs meeting the
    preconditions every good pair lies in the alpha-segment of ``(p, q)``
    and the bad terms carry l1 mass at most ``2 * eps``. Any breach of those
    guarantees is listed in ``violations``.
    """
    p, q = M.index(p), M.index(q)
    if p == q:
        raise SamePoint("split needs p != q")
    alpha, eps = to_fraction(alpha), to_fraction(eps)
    half = Fraction(1, 2)
    if M.base_index != q:
        raise PreconditionNotMet("base", "the base point must be q; rebase first")
    if not (0 < alpha < half and 0 < eps < half):
        raise PreconditionNotMet("range", "alpha and eps must lie in (0, 1/2)")
    mu = from_representation(M, r)
    f = magic_function(M, p, q)
    if dual_norm(mu) != 1:
        raise PreconditionNotMet("norm", "the represented element must have norm 1")
    if pairing(mu, f) != 1:
        raise PreconditionNotMet("exposed", "the element must pair to 1 with f_pq")
    budget = 1 + eps * alpha / (1 - eps * alpha)
    if r.mass > budget:
        raise PreconditionNotMet("mass", f"representation mass {r.mass} exceeds {budget}")

    good, bad = [], []
    for w, (u, v) in r.terms:
        (good if abs(pair_quotient(f, u, v)) > 1 - alpha else bad).append((w, (u, v)))
    good, bad = Representation(tuple(good)), Representation(tuple(bad))
    seg = epsilon_segment(M, p, q, alpha)
    residual = dual_norm(mu - from_representation(M, good))

    violations = []
    for _, (u, v) in good.terms:
        if u not in seg or v not in seg:
            violations.append(f"good pair ({u}, {v}) leaves the alpha-segment")
    if bad.mass > 2 * eps:
        violations.append(f"bad mass {bad.mass} exceeds 2*eps")
    if residual > 2 * eps:
        violations.append(f"residual norm {residual} exceeds 2*eps")
    return SplitResult(good, bad, bad.mass, residual, seg, tuple(violations))


def split_optimal(M: FiniteMetricSpace, p: PointRef, q: PointRef, alpha, eps) -> SplitResult:
    """Rebase to ``q`` and split the cheapest representation of ``m_pq``."""
    p, q = M.index(p), M.index(q)
    mu = rebase(molecule(M, p, q), q)
    _, rep = primal_norm(mu)
    return split_representation(mu.space, p, q, rep, alpha, eps)
