"""Seeded instance generators and the property checks run by ``lipfree suite``.

Each ``check_*`` function returns a :class:`Tally` of how many individual
assertions held. A failed assertion means a library defect or a counterexample
to the underlying mathematics; neither is expected.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .extremal import (
    brute_force_extreme,
    classify_molecule,
    exposure_certificate,
    exposure_margin,
    mass_concentration_check,
    split_representation,
    verify_certificate,
)
from .free_space import (
    FreeElement,
    Representation,
    dist_to_subspace,
    dual_norm,
    from_representation,
    in_subspace,
    molecule,
    primal_norm,
    rebase,
)
from .lipschitz import lip_norm, magic_function, pair_quotient
from .metric import PROFILES, FiniteMetricSpace, epsilon_segment, random_space, segment

EPS_SAMPLES = (Fraction(1, 2), Fraction(1, 4), Fraction(1, 8), Fraction(1, 16), Fraction(1, 100))
SPLIT_PARAMS = tuple((a, e) for a in (Fraction(1, 4), Fraction(1, 8)) for e in (Fraction(1, 4), Fraction(1, 8)))


@dataclass
class Tally:
    passed: int = 0
    failed: int = 0
    failures: list = field(default_factory=list)

    def record(self, ok: bool, note=None):
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if len(self.failures) < 20:
                self.failures.append(note)

    @property
    def ok(self):
        return self.failed == 0

    def __iadd__(self, other):
        self.passed += other.passed
        self.failed += other.failed
        self.failures.extend(other.failures[: 20 - len(self.failures)])
        return self


def corpus(seed: int, count: int, n_min: int = 3, n_max: int = 10) -> list[FiniteMetricSpace]:
    """``count`` spaces cycling through the profiles with sizes in [n_min, n_max]."""
    rng = random.Random(seed)
    spaces = []
    for i in range(count):
        profile = PROFILES[i % len(PROFILES)]
        n = rng.randint(n_min, n_max)
        spaces.append(random_space(n, profile, rng.randrange(2**31)))
    return spaces


def random_rational(rng: random.Random, bound: int = 9, den: int = 6) -> Fraction:
    return Fraction(rng.randint(-bound * den, bound * den), rng.randint(1, den))


def random_element(rng: random.Random, M: FiniteMetricSpace, support=None) -> FreeElement:
    pts = range(M.n) if support is None else support
    c = [Fraction(0)] * M.n
    for x in pts:
        if rng.random() < 0.8:
            c[x] = random_rational(rng)
    return FreeElement(M, tuple(c))


def mass_instance(rng: random.Random):
    """Random ``(a, b, alpha, eps)`` meeting the concentration hypothesis."""
    length = rng.randint(1, 12)
    raw = [rng.randint(-20, 20) if rng.random() < 0.85 else 0 for _ in range(length)]
    if not any(raw):
        raw[rng.randrange(length)] = rng.choice((-1, 1)) * rng.randint(1, 20)
    total = sum(abs(v) for v in raw)
    a = [Fraction(v, total) for v in raw]
    alpha = Fraction(rng.randint(1, 99), 100)
    eps = Fraction(rng.randint(1, 99), 100)

    # b_n = sign(a_n) * (1 - u_n): the pairing is 1 - sum |a_n| u_n
    u = [Fraction(1) if rng.random() < 0.3 else Fraction(rng.randint(0, 100), 100) for _ in a]
    slack = sum(abs(x) * y for x, y in zip(a, u))
    allowed = alpha * eps
    if slack > allowed:
        scale = allowed / slack * Fraction(rng.randint(1, 100), 100)
        u = [y * scale for y in u]
    b = []
    for x, y in zip(a, u):
        if x > 0:
            b.append(1 - y)
        elif x < 0:
            b.append(y - 1)
        else:
            b.append(Fraction(rng.randint(-100, 100), 100))
    return a, b, alpha, eps


def padded_representation(M: FiniteMetricSpace, p: int, q: int, alpha, eps) -> Representation:
    """A wasteful representation of ``m_pq`` spending the whole mass budget.

    Half the excess goes to a detour through the point farthest off the
    segment, half to a cancelling pair ``c*m_uv + c*m_vu`` on the pair least
    aligned with ``f_pq``.
    """
    extra = eps * alpha / (1 - eps * alpha)
    dpq = M.dist[p][q]
    terms = []
    s = Fraction(0)
    others = [w for w in range(M.n) if w not in (p, q)]
    if others:
        w = max(others, key=lambda z: (M.dist[p][z] + M.dist[z][q], -z))
        excess = M.dist[p][w] + M.dist[w][q] - dpq
        s = min(Fraction(1), (extra / 2) * dpq / excess)
        terms += [(s * M.dist[p][w] / dpq, (p, w)), (s * M.dist[w][q] / dpq, (w, q))]
    if s < 1:
        terms.insert(0, (1 - s, (p, q)))
    f = magic_function(M, p, q)
    candidates = [(u, v) for u, v in M.ordered_pairs() if {u, v} != {p, q}]
    if candidates:
        u, v = min(candidates, key=lambda uv: (abs(pair_quotient(f, *uv)), uv))
        c = extra / 4
        terms += [(c, (u, v)), (c, (v, u))]
    return Representation(tuple(terms))


def check_theorem(M: FiniteMetricSpace) -> Tally:
    """Segment triviality, LP extremality and exposure margin all agree."""
    t = Tally()
    for p, q in M.ordered_pairs():
        trivial = len(segment(M, p, q)) == 2
        extreme, combo = brute_force_extreme(M, (p, q))
        margin = exposure_margin(M, (p, q))
        report = classify_molecule(M, (p, q))
        ok = trivial == extreme == (margin > 0)
        ok &= report.is_trivial_segment == report.is_extreme == report.is_exposed == trivial
        if combo is not None:
            ok &= from_representation(M, combo) == molecule(M, p, q)
            ok &= sum(w for w, _ in combo.terms) == 1 and all(w > 0 for w, _ in combo.terms)
        t.record(ok, (M, (p, q)))
    return t


def check_magic(M: FiniteMetricSpace, eps_values=EPS_SAMPLES) -> Tally:
    t = Tally()
    for p, q in M.ordered_pairs():
        f = magic_function(M, p, q)
        t.record(lip_norm(f) <= 1 and f.values[M.base_index] == 0, (M, (p, q), "norm"))
        t.record(pair_quotient(f, p, q) == 1, (M, (p, q), "attains"))
        seg = segment(M, p, q)
        esegs = {e: epsilon_segment(M, p, q, e) for e in eps_values}
        for u, v in M.ordered_pairs():
            quotient = pair_quotient(f, u, v)
            for e, es in esegs.items():
                if quotient > 1 - e:
                    t.record(u in es and v in es, (M, (p, q), (u, v), e))
            if quotient == 1:
                t.record(u in seg and v in seg, (M, (p, q), (u, v)))
    return t


def check_duality(M: FiniteMetricSpace, rng: random.Random, samples: int = 2) -> Tally:
    t = Tally()
    for _ in range(samples):
        mu = random_element(rng, M)
        primal, rep = primal_norm(mu)
        dual = dual_norm(mu)
        t.record(primal == dual, (M, mu))
        t.record(from_representation(M, rep) == mu and rep.mass == primal, (M, mu, "rep"))
        t.record(dual_norm(rebase(mu, rng.randrange(M.n))) == dual, (M, mu, "rebase"))
    return t


def check_mass(rng: random.Random, count: int) -> Tally:
    t = Tally()
    for _ in range(count):
        a, b, alpha, eps = mass_instance(rng)
        res = mass_concentration_check(a, b, alpha, eps)
        t.record(res.passed and res.tail_mass <= eps, (a, b, alpha, eps))
    return t


def check_split(M: FiniteMetricSpace, params=SPLIT_PARAMS) -> Tally:
    t = Tally()
    for p, q in M.ordered_pairs():
        if len(segment(M, p, q)) != 2:
            continue
        Mq = M.with_base(q)
        mu = rebase(molecule(M, p, q), q)
        _, optimal = primal_norm(mu)
        for alpha, eps in params:
            for rep in (optimal, padded_representation(Mq, p, q, alpha, eps)):
                res = split_representation(Mq, p, q, rep, alpha, eps)
                t.record(
                    res.ok and res.bad_mass <= 2 * eps and res.residual_norm <= 2 * eps,
                    (M, (p, q), alpha, eps, res.violations),
                )
    return t


def random_family(rng: random.Random, M: FiniteMetricSpace) -> list[frozenset]:
    others = M.non_base()
    family = []
    for _ in range(rng.randint(2, 3)):
        chosen = {x for x in others if rng.random() < 0.6}
        family.append(frozenset(chosen | {M.base_index}))
    return family


def check_intersection(M: FiniteMetricSpace, rng: random.Random, samples: int = 3) -> Tally:
    t = Tally()
    for _ in range(samples):
        family = random_family(rng, M)
        common = frozenset.intersection(*family)
        pool = [common, family[0], frozenset.union(*family), frozenset(range(M.n))]
        mu = random_element(rng, M, support=sorted(rng.choice(pool)))
        in_each = [dist_to_subspace(mu, N) == 0 for N in family]
        in_common = dist_to_subspace(mu, common) == 0
        t.record(all(in_each) == in_common, (M, mu, family))
        t.record(in_common == in_subspace(mu, common), (M, mu, common, "support"))
    return t


def check_certificates(M: FiniteMetricSpace) -> Tally:
    t = Tally()
    for p, q in M.ordered_pairs():
        if len(segment(M, p, q)) == 2:
            t.record(verify_certificate(exposure_certificate(M, (p, q))), (M, (p, q)))
    return t


def run_suite(seed: int = 42, count: int = 100, n_max: int = 10, alpha=None, eps=None,
              mass_count: int = 10_000) -> dict[str, Tally]:
    """Run every check family over one seeded corpus."""
    spaces = corpus(seed, count, 3, n_max)
    rng = random.Random(seed + 1)
    params = SPLIT_PARAMS
    if alpha is not None or eps is not None:
        params = ((alpha or Fraction(1, 4)), (eps or Fraction(1, 4))),
    results = {name: Tally() for name in
               ("theorem", "magic", "duality", "mass", "split", "intersection", "certificates")}
    for M in spaces:
        results["theorem"] += check_theorem(M)
        results["magic"] += check_magic(M)
        results["duality"] += check_duality(M, rng)
        results["split"] += check_split(M, params)
        results["intersection"] += check_intersection(M, rng)
        results["certificates"] += check_certificates(M)
    results["mass"] += check_mass(rng, mass_count)
    return results
