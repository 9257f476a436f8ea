"""Exact Fourier-Motzkin elimination over the rationals.

Solves homogeneous systems of linear inequalities

    sum_j c_j * x_j  >  0      (strict)   or
    sum_j c_j * x_j  >= 0      (non-strict)

by eliminating one variable at a time.  Everything is done with
``fractions.Fraction``, so feasibility answers and witnesses are exact.
Homogeneity is all we need here (weight-representability of voting
systems); it also keeps every derived row homogeneous, which makes the
infeasibility certificate simply the row ``0 > 0``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Optional, Sequence


class Row:
    """One inequality ``coeffs . x > 0`` (strict) or ``>= 0``."""

    __slots__ = ("coeffs", "strict")

    def __init__(self, coeffs: Sequence[Fraction], strict: bool):
        self.coeffs = tuple(Fraction(c) for c in coeffs)
        self.strict = strict

    def normalized(self) -> "Row":
        """Scale by a positive rational so the coefficients are a primitive
        integer vector (direction preserved)."""
        denom_lcm = 1
        for c in self.coeffs:
            denom_lcm = denom_lcm * c.denominator // gcd(denom_lcm, c.denominator)
        ints = [int(c * denom_lcm) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, abs(v))
        if g > 1:
            ints = [v // g for v in ints]
        return Row([Fraction(v) for v in ints], self.strict)

    def key(self):
        return (self.coeffs, self.strict)


class Infeasible(Exception):
    """Internal signal: the row 0 > 0 was derived."""


def _add_rows(pos: Row, neg: Row, j: int) -> Row:
    """Positive combination cancelling variable j (pos has c_j>0, neg c_j<0)."""
    a = pos.coeffs[j]
    b = -neg.coeffs[j]
    coeffs = [b * p + a * q for p, q in zip(pos.coeffs, neg.coeffs)]
    return Row(coeffs, pos.strict or neg.strict)


def _push(rows: dict, row: Row) -> None:
    """Insert a normalized row, dropping trivial rows and duplicates.

    A strict row subsumes its non-strict twin, so of two rows with equal
    coefficients only the strict one is kept.
    """
    row = row.normalized()
    if all(c == 0 for c in row.coeffs):
        if row.strict:
            raise Infeasible
        return  # 0 >= 0, vacuous
    prev = rows.get(row.coeffs)
    if prev is None or (row.strict and not prev.strict):
        rows[row.coeffs] = row


def solve_homogeneous(num_vars: int, rows: Sequence[Row]) -> Optional[list[Fraction]]:
    """Return an exact rational solution of the system, or None.

    Parameters
    ----------
    num_vars : number of variables.
    rows : the inequalities; each is homogeneous in the ``num_vars``
        variables.  Include non-negativity rows explicitly if wanted.
    """
    current: dict = {}
    try:
        for r in rows:
            if len(r.coeffs) != num_vars:
                raise ValueError("row arity mismatch")
            _push(current, r)
    except Infeasible:
        return None

    # Eliminate every variable, greedily picking the one that produces the
    # fewest combination rows.  Record each step for back-substitution.
    steps: list[tuple[int, list[Row]]] = []
    remaining = list(range(num_vars))
    try:
        while remaining:
            rows_now = list(current.values())

            def cost(j: int) -> int:
                p = sum(1 for r in rows_now if r.coeffs[j] > 0)
                n = sum(1 for r in rows_now if r.coeffs[j] < 0)
                return p * n - (p + n)

            j = min(remaining, key=cost)
            remaining.remove(j)
            steps.append((j, rows_now))

            pos = [r for r in rows_now if r.coeffs[j] > 0]
            neg = [r for r in rows_now if r.coeffs[j] < 0]
            zero = [r for r in rows_now if r.coeffs[j] == 0]
            current = {}
            for r in zero:
                _push(current, r)
            for p in pos:
                for q in neg:
                    _push(current, _add_rows(p, q, j))
    except Infeasible:
        return None

    # All remaining rows have zero coefficients and were already filtered,
    # so the system is feasible.  Back-substitute in reverse order.
    assignment: list[Optional[Fraction]] = [None] * num_vars
    for j, rows_then in reversed(steps):
        lower: Optional[tuple[Fraction, bool]] = None  # (bound, strict)
        upper: Optional[tuple[Fraction, bool]] = None
        for r in rows_then:
            cj = r.coeffs[j]
            if cj == 0:
                continue
            rest = sum(
                (c * assignment[k] for k, c in enumerate(r.coeffs) if k != j and c != 0),
                Fraction(0),
            )
            bound = -rest / cj
            if cj > 0:  # x_j > bound (or >=)
                if lower is None or bound > lower[0] or (bound == lower[0] and r.strict):
                    lower = (bound, r.strict)
            else:  # x_j < bound (or <=)
                if upper is None or bound < upper[0] or (bound == upper[0] and r.strict):
                    upper = (bound, r.strict)
        assignment[j] = _choose(lower, upper)
    return [v if v is not None else Fraction(0) for v in assignment]


def _choose(lower, upper) -> Fraction:
    if lower is None and upper is None:
        return Fraction(0)
    if lower is None:
        return upper[0] - 1 if upper[1] else upper[0]
    if upper is None:
        return lower[0] + 1 if lower[1] else lower[0]
    lo, lo_strict = lower
    hi, hi_strict = upper
    if lo_strict or hi_strict:
        # Fourier-Motzkin guarantees lo < hi here.
        return (lo + hi) / 2
    return lo  # lo <= hi, both closed
