"""Dense two-phase tableau simplex over the rationals.

Pivoting follows Bland's rule (lowest-index entering column, lowest-index
leaving basic variable on ratio ties), which guarantees termination. Pivots
run on GMP rationals (``gmpy2.mpq``); inputs and outputs are
:class:`fractions.Fraction`, and every step is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from gmpy2 import mpq

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_ZERO = mpq(0)
_ONE = mpq(1)


def _q(v):
    if isinstance(v, Fraction):
        return mpq(v.numerator, v.denominator)
    return mpq(v)


def _frac(v) -> Fraction:
    return Fraction(int(v.numerator), int(v.denominator))


@dataclass
class LPResult:
    status: str
    x: list | None = None
    value: Fraction | None = None
    pivots: int = 0

    @property
    def ok(self) -> bool:
        return self.status == OPTIMAL


class _Tableau:
    def __init__(self, rows, rhs, basis):
        # each row holds the constraint coefficients followed by the rhs
        self.rows = [list(r) + [b] for r, b in zip(rows, rhs)]
        self.basis = list(basis)
        self.obj = None
        self.pivots = 0

    def set_objective(self, cost):
        obj = list(cost) + [_ZERO]
        for r, b in enumerate(self.basis):
            cb = obj[b]
            if cb:
                row = self.rows[r]
                for j, a in enumerate(row):
                    if a:
                        obj[j] -= cb * a
        self.obj = obj

    def pivot(self, r, col):
        self.pivots += 1
        prow = self.rows[r]
        piv = prow[col]
        if piv != 1:
            prow = [a / piv for a in prow]
            self.rows[r] = prow
        nz = [j for j, a in enumerate(prow) if a]
        for other in self.rows + [self.obj]:
            if other is prow:
                continue
            f = other[col]
            if f:
                for j in nz:
                    other[j] -= f * prow[j]
        self.basis[r] = col

    def run(self, allowed: int) -> str:
        """Maximize the current objective; columns >= ``allowed`` never enter."""
        while True:
            obj = self.obj
            col = next((j for j in range(allowed) if obj[j] > 0), None)
            if col is None:
                return OPTIMAL
            best = None
            for r, row in enumerate(self.rows):
                a = row[col]
                if a > 0:
                    ratio = row[-1] / a
                    key = (ratio, self.basis[r])
                    if best is None or key < best[0]:
                        best = (key, r)
            if best is None:
                return UNBOUNDED
            self.pivot(best[1], col)


def linprog(
    c: Sequence,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    free: Sequence[int] = (),
    maximize: bool = True,
) -> LPResult:
    """Optimize ``c @ x`` subject to ``A_ub x <= b_ub``, ``A_eq x = b_eq``.

    Variables are nonnegative except those listed in ``free``. ``value`` is
    reported in the caller's sense (max or min).
    """
    nvar = len(c)
    free = sorted(set(free))
    ncol_x = nvar + len(free)
    sign = 1 if maximize else -1
    cost = [sign * _q(v) for v in c] + [-sign * _q(c[j]) for j in free]

    def expand(row):
        row = [_q(v) for v in row]
        return row + [-row[j] for j in free]

    n_ub, n_eq = len(A_ub), len(A_eq)
    n_slack = n_ub
    rows, rhs, needs_art = [], [], []
    for i in range(n_ub):
        row = expand(A_ub[i]) + [_ZERO] * n_slack
        row[ncol_x + i] = _ONE
        b = _q(b_ub[i])
        if b < 0:
            row, b = [-a for a in row], -b
            needs_art.append(True)
        else:
            needs_art.append(False)
        rows.append(row)
        rhs.append(b)
    for i in range(n_eq):
        row = expand(A_eq[i]) + [_ZERO] * n_slack
        b = _q(b_eq[i])
        if b < 0:
            row, b = [-a for a in row], -b
        rows.append(row)
        rhs.append(b)
        needs_art.append(True)

    art_rows = [r for r, need in enumerate(needs_art) if need]
    n_real = ncol_x + n_slack
    n_art = len(art_rows)
    basis = []
    for r, row in enumerate(rows):
        row.extend([_ZERO] * n_art)
    for r in range(len(rows)):
        if needs_art[r]:
            col = n_real + art_rows.index(r)
            rows[r][col] = _ONE
            basis.append(col)
        else:
            basis.append(ncol_x + r)

    tab = _Tableau(rows, rhs, basis)
    if n_art:
        tab.set_objective([_ZERO] * n_real + [-_ONE] * n_art)
        tab.run(n_real + n_art)
        if tab.obj[-1] != 0:
            return LPResult(INFEASIBLE, pivots=tab.pivots)
        # drive zero-level artificials out of the basis, dropping redundant rows
        r = 0
        while r < len(tab.rows):
            if tab.basis[r] >= n_real:
                row = tab.rows[r]
                col = next((j for j in range(n_real) if row[j]), None)
                if col is None:
                    del tab.rows[r]
                    del tab.basis[r]
                    continue
                tab.pivot(r, col)
            r += 1

    tab.set_objective(cost + [_ZERO] * (n_slack + n_art))
    status = tab.run(n_real)
    if status != OPTIMAL:
        return LPResult(status, pivots=tab.pivots)

    full = [_ZERO] * n_real
    for r, b in enumerate(tab.basis):
        full[b] = tab.rows[r][-1]
    x = full[:nvar]
    for k, j in enumerate(free):
        x[j] -= full[nvar + k]
    x = [_frac(v) for v in x]
    value = sum((Fraction(ci) * xi for ci, xi in zip(c, x)), Fraction(0))
    return LPResult(OPTIMAL, x, value, tab.pivots)
