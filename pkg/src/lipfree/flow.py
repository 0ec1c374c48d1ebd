"""Exact uncapacitated min-cost flow on a complete directed graph.

Successive shortest paths with Bellman-Ford on the residual graph. Costs are
nonnegative, so the empty flow is optimal for zero supplies and every
augmentation preserves optimality. Rational data scale to integer data, which
bounds the number of augmentations.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def _shortest_paths(n, cost, flow, source):
    dist = [None] * n
    pred = [None] * n
    dist[source] = Fraction(0)
    for _ in range(n - 1):
        changed = False
        for u in range(n):
            du = dist[u]
            if du is None:
                continue
            for v in range(n):
                if u == v:
                    continue
                # forward arc u->v, and the reverse of any flow on v->u
                cand = [(du + cost[u][v], (u, v, +1))]
                if flow[v][u] > 0:
                    cand.append((du - cost[v][u], (v, u, -1)))
                for dv, arc in cand:
                    if dist[v] is None or dv < dist[v]:
                        dist[v] = dv
                        pred[v] = arc
                        changed = True
        if not changed:
            break
    return dist, pred


def min_cost_flow(cost: Sequence[Sequence[Fraction]], supply: Sequence[Fraction]):
    """Return ``(value, flow)`` moving ``supply`` (positive = source) at least cost.

    ``flow[u][v]`` is the amount on arc ``u -> v``. Ties are broken toward
    the lowest node index, so the output is deterministic.
    """
    n = len(supply)
    excess = [Fraction(s) for s in supply]
    if sum(excess) != 0:
        raise ValueError("supplies must sum to zero")
    flow = [[Fraction(0)] * n for _ in range(n)]

    while True:
        src = next((u for u in range(n) if excess[u] > 0), None)
        if src is None:
            break
        dist, pred = _shortest_paths(n, cost, flow, src)
        sink = min(
            (v for v in range(n) if excess[v] < 0),
            key=lambda v: (dist[v], v),
        )
        path = []
        v = sink
        while v != src:
            arc = pred[v]
            path.append(arc)
            v = arc[0] if arc[2] > 0 else arc[1]
        amount = min(excess[src], -excess[sink])
        for u, w, direction in path:
            if direction < 0:
                amount = min(amount, flow[u][w])
        for u, w, direction in path:
            flow[u][w] += amount if direction > 0 else -amount
        excess[src] -= amount
        excess[sink] += amount

    value = sum(
        (flow[u][v] * cost[u][v] for u in range(n) for v in range(n) if flow[u][v]),
        Fraction(0),
    )
    return value, flow
