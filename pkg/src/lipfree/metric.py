"""Finite pointed metric spaces with exact rational distances.

A :class:`FiniteMetricSpace` is immutable once built; all constructors go
through :func:`validate`, which rejects a candidate matrix with an exception
naming the broken axiom and its witness indices.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

from .errors import (
    AsymmetricMatrix,
    BadBase,
    BadProfile,
    DuplicatePoint,
    EpsOutOfRange,
    IndexOutOfRange,
    NegativeOrZeroOffDiagonal,
    NonzeroDiagonal,
    NotSquare,
    SamePoint,
    TriangleViolation,
)

PointRef = Union[int, str]

PROFILES = ("euclidean", "shortest_path", "generic")


def to_fraction(value) -> Fraction:
    """Parse an int, Fraction, ``"a/b"`` string or float into a Fraction.

    Floats go through their shortest decimal repr, so ``0.1`` becomes
    ``1/10`` rather than the binary expansion.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not distances")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational")


@dataclass(frozen=True)
class FiniteMetricSpace:
    points: tuple
    base_index: int
    dist: tuple

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def base(self) -> str:
        return self.points[self.base_index]

    def d(self, x: PointRef, y: PointRef) -> Fraction:
        return self.dist[self.index(x)][self.index(y)]

    def index(self, ref: PointRef) -> int:
        """Resolve a point given by index or by label."""
        if isinstance(ref, str):
            try:
                return self.points.index(ref)
            except ValueError:
                raise IndexOutOfRange(f"unknown point label {ref!r}") from None
        if not 0 <= ref < len(self.points):
            raise IndexOutOfRange(f"point index {ref} out of range")
        return int(ref)

    def non_base(self) -> list[int]:
        return [i for i in range(self.n) if i != self.base_index]

    def ordered_pairs(self) -> list[tuple[int, int]]:
        return [(x, y) for x in range(self.n) for y in range(self.n) if x != y]

    def with_base(self, new_base: PointRef) -> "FiniteMetricSpace":
        return FiniteMetricSpace(self.points, self.index(new_base), self.dist)

    def __repr__(self):
        return f"FiniteMetricSpace(n={self.n}, base={self.base!r})"


def validate(
    matrix: Sequence[Sequence], base: int = 0, points: Iterable[str] | None = None
) -> FiniteMetricSpace:
    """Check the metric axioms exactly and build a space.

    Raises the first violation found, scanning in index order:
    shape, labels, diagonal, symmetry, positivity, then the triangle
    inequality as ``TriangleViolation(i, j, k)`` for the first
    ``d[i][j] > d[i][k] + d[k][j]`` with ``i < j``.
    """
    rows = [list(r) for r in matrix]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise NotSquare("distance matrix must be square and nonempty")
    dist = [[to_fraction(v) for v in r] for r in rows]

    labels = tuple(str(i) for i in range(n)) if points is None else tuple(map(str, points))
    if len(labels) != n:
        raise NotSquare(f"{len(labels)} labels for a {n}x{n} matrix")
    if len(set(labels)) != n:
        dup = next(p for p in labels if labels.count(p) > 1)
        raise DuplicatePoint(f"duplicate point label {dup!r}", (labels.index(dup),))
    if isinstance(base, str):
        if base not in labels:
            raise BadBase(f"base {base!r} is not a point")
        base = labels.index(base)
    if not 0 <= base < n:
        raise BadBase(f"base index {base} out of range", (base,))

    for i in range(n):
        if dist[i][i] != 0:
            raise NonzeroDiagonal(f"d[{i}][{i}] = {dist[i][i]}", (i,))
    for i in range(n):
        for j in range(i + 1, n):
            if dist[i][j] != dist[j][i]:
                raise AsymmetricMatrix(f"d[{i}][{j}] != d[{j}][{i}]", (i, j))
            if dist[i][j] <= 0:
                raise NegativeOrZeroOffDiagonal(f"d[{i}][{j}] = {dist[i][j]}", (i, j))
    for i in range(n):
        for j in range(i + 1, n):
            dij = dist[i][j]
            for k in range(n):
                if dij > dist[i][k] + dist[k][j]:
                    raise TriangleViolation(i, j, k)

    return FiniteMetricSpace(labels, base, tuple(tuple(r) for r in dist))


def _pair(M: FiniteMetricSpace, x: PointRef, y: PointRef) -> tuple[int, int]:
    i, j = M.index(x), M.index(y)
    if i == j:
        raise SamePoint(f"segment endpoints coincide at {M.points[i]!r}")
    return i, j


def segment(M: FiniteMetricSpace, x: PointRef, y: PointRef) -> frozenset[int]:
    """Indices z with d(z,x) + d(z,y) == d(x,y), by exact equality."""
    i, j = _pair(M, x, y)
    dx, dy, dxy = M.dist[i], M.dist[j], M.dist[i][j]
    return frozenset(z for z in range(M.n) if dx[z] + dy[z] == dxy)


def epsilon_segment(M: FiniteMetricSpace, p: PointRef, q: PointRef, eps) -> frozenset[int]:
    """Indices x with d(p,x) + d(x,q) <= d(p,q) / (1 - eps)."""
    i, j = _pair(M, p, q)
    eps = to_fraction(eps)
    if not 0 < eps < 1:
        raise EpsOutOfRange(f"eps must lie in (0, 1), got {eps}")
    threshold = M.dist[i][j] / (1 - eps)
    dp, dq = M.dist[i], M.dist[j]
    return frozenset(z for z in range(M.n) if dp[z] + dq[z] <= threshold)


def is_trivial_segment(M: FiniteMetricSpace, x: PointRef, y: PointRef) -> bool:
    return len(segment(M, x, y)) == 2


def metric_closure(weights: list[list]) -> list[list[Fraction]]:
    """Floyd-Warshall shortest paths; ``None`` marks a missing edge."""
    n = len(weights)
    d = [[None if w is None else Fraction(w) for w in row] for row in weights]
    for i in range(n):
        d[i][i] = Fraction(0)
    for k in range(n):
        dk = d[k]
        for i in range(n):
            dik = d[i][k]
            if dik is None:
                continue
            di = d[i]
            for j in range(n):
                if dk[j] is None:
                    continue
                via = dik + dk[j]
                if di[j] is None or via < di[j]:
                    di[j] = via
    return d


def random_space(n: int, profile: str = "shortest_path", seed: int = 0) -> FiniteMetricSpace:
    """Seeded random metric space on ``n`` points labelled ``"0".."n-1"``.

    Profiles:

    ``euclidean``
        distinct points on the grid ``(1/2)Z^2 ∩ [0, 4]^2`` with the l1 distance.
    ``shortest_path``
        a random spanning tree plus extra edges, integer weights in 1..4,
        closed under shortest paths. Segments are often nontrivial.
    ``generic``
        independent entries with denominator up to 7 in [10, 25], repaired by
        metric closure. Segments are mostly trivial.

    The base point is always index 0.
    """
    if profile not in PROFILES:
        raise BadProfile(f"unknown profile {profile!r}; expected one of {PROFILES}")
    if n < 2:
        raise ValueError("random_space needs n >= 2")
    rng = random.Random(f"{profile}:{n}:{seed}")

    if profile == "euclidean":
        cells = [(Fraction(a, 2), Fraction(b, 2)) for a in range(9) for b in range(9)]
        if n > len(cells):
            raise ValueError(f"euclidean profile supports at most {len(cells)} points")
        pts = rng.sample(cells, n)
        d = [[abs(a[0] - b[0]) + abs(a[1] - b[1]) for b in pts] for a in pts]
    elif profile == "shortest_path":
        w = [[None] * n for _ in range(n)]
        order = list(range(n))
        rng.shuffle(order)
        for t in range(1, n):
            u, v = order[t], order[rng.randrange(t)]
            w[u][v] = w[v][u] = rng.randint(1, 4)
        for u in range(n):
            for v in range(u + 1, n):
                if w[u][v] is None and rng.random() < 0.3:
                    w[u][v] = w[v][u] = rng.randint(1, 4)
        d = metric_closure(w)
    else:
        w = [[None] * n for _ in range(n)]
        for u in range(n):
            for v in range(u + 1, n):
                den = rng.randint(1, 7)
                w[u][v] = w[v][u] = Fraction(rng.randint(10 * den, 25 * den), den)
        d = metric_closure(w)
    return validate(d, 0)
