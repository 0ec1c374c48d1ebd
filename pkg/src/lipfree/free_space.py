"""Finitely supported elements of the Lipschitz-free space and their norms.

The norm of an element is computed two independent ways:

* :func:`dual_norm` maximizes the pairing over the Lipschitz unit ball with
  the exact simplex in :mod:`lipfree.simplex`;
* :func:`primal_norm` finds the cheapest representation by molecules as a
  min-cost flow (:mod:`lipfree.flow`), the base point acting as a free
  source/sink.

They must agree exactly; each serves as the other's oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .errors import BaseNotInSubset, IndexOutOfRange, SamePoint, SpaceMismatch
from .flow import min_cost_flow
from .lipschitz import LipFunction
from .metric import FiniteMetricSpace, PointRef, to_fraction
from .simplex import linprog

_ZERO = Fraction(0)


@dataclass(frozen=True)
class FreeElement:
    """``sum coeffs[x] * delta(x)``.

    ``coeffs`` has one entry per point; the base entry is pinned to zero
    because ``delta(base)`` is the zero vector.
    """

    space: FiniteMetricSpace
    coeffs: tuple

    def __post_init__(self):
        M = self.space
        if len(self.coeffs) != M.n:
            raise SpaceMismatch(f"{len(self.coeffs)} coefficients for {M.n} points")
        c = [to_fraction(v) for v in self.coeffs]
        c[M.base_index] = _ZERO
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def zero(cls, space):
        return cls(space, (_ZERO,) * space.n)

    @classmethod
    def delta(cls, space, x: PointRef):
        c = [_ZERO] * space.n
        c[space.index(x)] = Fraction(1)
        return cls(space, tuple(c))

    @classmethod
    def from_mapping(cls, space, mapping: dict):
        c = [_ZERO] * space.n
        for ref, v in mapping.items():
            c[space.index(ref)] += to_fraction(v)
        return cls(space, tuple(c))

    def support(self) -> frozenset[int]:
        return frozenset(i for i, v in enumerate(self.coeffs) if v)

    def _check(self, other):
        if other.space != self.space:
            raise SpaceMismatch("elements live over different spaces")

    def __add__(self, other):
        self._check(other)
        return FreeElement(self.space, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        return FreeElement(self.space, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return FreeElement(self.space, tuple(-a for a in self.coeffs))

    def __mul__(self, scalar):
        s = to_fraction(scalar)
        return FreeElement(self.space, tuple(s * a for a in self.coeffs))

    __rmul__ = __mul__


@dataclass(frozen=True)
class Representation:
    """Finite weighted family of ordered pairs; maps to ``sum w * m_xy``."""

    terms: tuple = ()

    def __post_init__(self):
        terms = []
        for w, (x, y) in self.terms:
            w = to_fraction(w)
            if x == y:
                raise SamePoint(f"representation pair ({x}, {y}) is on the diagonal")
            if w:
                terms.append((w, (x, y)))
        object.__setattr__(self, "terms", tuple(terms))

    @property
    def mass(self) -> Fraction:
        return sum((abs(w) for w, _ in self.terms), _ZERO)

    def __add__(self, other):
        return Representation(self.terms + other.terms)

    def __len__(self):
        return len(self.terms)


def molecule(M: FiniteMetricSpace, x: PointRef, y: PointRef) -> FreeElement:
    """``(delta(x) - delta(y)) / d(x, y)``."""
    i, j = M.index(x), M.index(y)
    if i == j:
        raise SamePoint("a molecule needs two distinct points")
    c = [_ZERO] * M.n
    w = 1 / M.dist[i][j]
    c[i] += w
    c[j] -= w
    return FreeElement(M, tuple(c))


def from_representation(M: FiniteMetricSpace, r: Representation) -> FreeElement:
    c = [_ZERO] * M.n
    for w, (x, y) in r.terms:
        for idx in (x, y):
            if not 0 <= idx < M.n:
                raise IndexOutOfRange(f"pair index {idx} out of range")
        share = w / M.dist[x][y]
        c[x] += share
        c[y] -= share
    return FreeElement(M, tuple(c))


def pairing(mu: FreeElement, f: LipFunction) -> Fraction:
    if mu.space != f.space:
        raise SpaceMismatch("pairing across different spaces")
    return sum((a * v for a, v in zip(mu.coeffs, f.values) if a), _ZERO)


@lru_cache(maxsize=4096)
def _dual_lp(mu: FreeElement):
    M = mu.space
    nb = M.non_base()
    col = {x: k for k, x in enumerate(nb)}
    b0 = M.base_index
    d = M.dist
    # substitute g(x) = f(x) + d(x, base) >= 0; the point g = 0 is feasible
    # because f = -d(., base) is 1-Lipschitz, so every rhs is nonnegative
    A, b = [], []
    for x in nb:
        row = [_ZERO] * len(nb)
        row[col[x]] = Fraction(1)
        A.append(row)
        b.append(2 * d[x][b0])
    for x in nb:
        for y in nb:
            if x == y:
                continue
            row = [_ZERO] * len(nb)
            row[col[x]] = Fraction(1)
            row[col[y]] = Fraction(-1)
            A.append(row)
            b.append(d[x][y] + d[x][b0] - d[y][b0])
    c = [mu.coeffs[x] for x in nb]
    res = linprog(c, A, b)
    values = [_ZERO] * M.n
    for x in nb:
        values[x] = res.x[col[x]] - d[x][b0]
    witness = LipFunction(M, tuple(values))
    return pairing(mu, witness), witness


def dual_norm(mu: FreeElement) -> Fraction:
    """``sup <mu, f>`` over 1-Lipschitz ``f`` vanishing at the base."""
    return _dual_lp(mu)[0]


def dual_norm_with_witness(mu: FreeElement) -> tuple[Fraction, LipFunction]:
    return _dual_lp(mu)


def primal_norm(mu: FreeElement) -> tuple[Fraction, Representation]:
    """Cheapest representation of ``mu`` by molecules.

    The base absorbs the imbalance ``-sum(coeffs)``; an arc ``x -> y``
    carrying ``t`` units contributes the term ``t * d(x,y) * m_xy``.
    Terms come back in lexicographic pair order.
    """
    M = mu.space
    supply = list(mu.coeffs)
    supply[M.base_index] = -sum(mu.coeffs, _ZERO)
    value, flow = min_cost_flow(M.dist, supply)
    terms = []
    for x in range(M.n):
        for y in range(M.n):
            if x != y and flow[x][y]:
                terms.append((flow[x][y] * M.dist[x][y], (x, y)))
    return value, Representation(tuple(terms))


def _subset(M: FiniteMetricSpace, N: Iterable[PointRef]) -> frozenset[int]:
    idx = frozenset(M.index(x) for x in N)
    if M.base_index not in idx:
        raise BaseNotInSubset("the subset must contain the base point")
    return idx


def dist_to_subspace(mu: FreeElement, N: Iterable[PointRef]) -> Fraction:
    """Distance from ``mu`` to the free space over ``N``.

    One LP: minimize the l1 mass of a representation of ``mu - nu`` where the
    coefficients of ``nu`` on ``N`` are free variables.
    """
    M = mu.space
    N = _subset(M, N)
    pairs = M.ordered_pairs()
    free_pts = sorted(N - {M.base_index})
    nvar = len(pairs) + len(free_pts)
    # variable t_xy >= 0 is the mass on arc x -> y (cost d(x,y)); term weight t*d
    c = [M.dist[x][y] for x, y in pairs] + [_ZERO] * len(free_pts)
    A_eq, b_eq = [], []
    for z in M.non_base():
        row = [_ZERO] * nvar
        for k, (x, y) in enumerate(pairs):
            if x == z:
                row[k] += 1
            elif y == z:
                row[k] -= 1
        if z in N:
            row[len(pairs) + free_pts.index(z)] = Fraction(1)
        A_eq.append(row)
        b_eq.append(mu.coeffs[z])
    free = range(len(pairs), nvar)
    res = linprog(c, A_eq=A_eq, b_eq=b_eq, free=free, maximize=False)
    return res.value


def in_subspace(mu: FreeElement, N: Iterable[PointRef]) -> bool:
    """Support test: coefficients vanish outside ``N``."""
    N = _subset(mu.space, N)
    return mu.support() <= N


def rebase_space(M: FiniteMetricSpace, new_base: PointRef) -> FiniteMetricSpace:
    return M.with_base(new_base)


def rebase(mu: FreeElement, new_base: PointRef) -> FreeElement:
    """Transport ``mu`` along the isometry induced by moving the base point.

    ``delta(x)`` maps to ``delta'(x) - delta'(old_base)``.
    """
    M = mu.space
    target = M.with_base(new_base)
    c = list(mu.coeffs)
    c[M.base_index] = -sum(mu.coeffs, _ZERO)
    return FreeElement(target, tuple(c))
