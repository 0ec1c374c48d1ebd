"""Lipschitz functions vanishing at the base point, and the exposing function."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import SamePoint, SingletonSpace, SpaceMismatch
from .metric import FiniteMetricSpace, PointRef, to_fraction


@dataclass(frozen=True)
class LipFunction:
    space: FiniteMetricSpace
    values: tuple

    def __post_init__(self):
        if len(self.values) != self.space.n:
            raise SpaceMismatch(f"{len(self.values)} values for {self.space.n} points")
        vals = tuple(to_fraction(v) for v in self.values)
        if vals[self.space.base_index] != 0:
            raise ValueError("a Lip_0 function must vanish at the base point")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_mapping(cls, space: FiniteMetricSpace, mapping: dict) -> "LipFunction":
        values = [Fraction(0)] * space.n
        for ref, v in mapping.items():
            values[space.index(ref)] = to_fraction(v)
        return cls(space, tuple(values))

    @classmethod
    def zero(cls, space: FiniteMetricSpace) -> "LipFunction":
        return cls(space, (Fraction(0),) * space.n)

    def __call__(self, x: PointRef) -> Fraction:
        return self.values[self.space.index(x)]


def lip_norm(f: LipFunction) -> Fraction:
    """Best Lipschitz constant, by scanning every unordered pair."""
    M = f.space
    if M.n < 2:
        raise SingletonSpace("the Lipschitz norm needs at least two points")
    v, d = f.values, M.dist
    best = Fraction(0)
    for x in range(M.n):
        for y in range(x + 1, M.n):
            slope = abs(v[x] - v[y]) / d[x][y]
            if slope > best:
                best = slope
    return best


def pair_quotient(f: LipFunction, u: PointRef, v: PointRef) -> Fraction:
    M = f.space
    i, j = M.index(u), M.index(v)
    if i == j:
        raise SamePoint("pair_quotient needs two distinct points")
    return (f.values[i] - f.values[j]) / M.dist[i][j]


def magic_function(M: FiniteMetricSpace, p: PointRef, q: PointRef) -> LipFunction:
    """The function exposing the molecule ``m_pq`` when ``[p, q]`` is trivial.

    ``f(t) = d(p,q)/2 * (r(t) - r(base))`` with
    ``r(t) = (d(t,q) - d(t,p)) / (d(t,q) + d(t,p))``. Since ``p != q`` the
    denominator is at least ``d(p,q) > 0`` for every ``t``.
    """
    i, j = M.index(p), M.index(q)
    if i == j:
        raise SamePoint("the magic function needs p != q")
    dp, dq = M.dist[i], M.dist[j]

    def ratio(t):
        return (dq[t] - dp[t]) / (dq[t] + dp[t])

    half = M.dist[i][j] / 2
    shift = ratio(M.base_index)
    return LipFunction(M, tuple(half * (ratio(t) - shift) for t in range(M.n)))
