"""Cesàro means and generalized-limit checks on finitely described sequences.

A sequence is given by a finite window x_1..x_N plus an optional declared
tail (constant value, or a repeating pattern) defining every later term.
With a declared tail the Cesàro transform t_n = (1/n) sum_{k<=n} x_k has an
exact analytic limit (the constant, or the pattern average), so the five
generalized-limit axioms - linearity, positivity, shift invariance,
normalization, and the Baire sandwich inf <= liminf <= L <= limsup <= sup -
can be verified exactly in rational arithmetic.  Windows without a tail
only ever yield tolerance-based verdicts or honest "undetermined" reports
with bracketing estimates; no value is invented for sequences the theory
cannot determine.

Everything is stored as exact fractions internally (floats are converted
exactly); inputs that arrived as floats are compared at a coarser
tolerance in the axiom checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import ValidationError

EXACT_TOL = Fraction(0)
RATIONAL_TOL = Fraction(1, 10**9)
FLOAT_TOL = Fraction(1, 10**6)


def _to_fraction(v) -> Fraction:
    if isinstance(v, str):
        return Fraction(v)
    return Fraction(v)


@dataclass(frozen=True)
class Tail:
    """Eventually-constant or eventually-periodic continuation."""

    kind: str  # "constant" | "periodic"
    pattern: tuple[Fraction, ...]

    def __post_init__(self):
        if self.kind not in ("constant", "periodic"):
            raise ValidationError("tail kind must be 'constant' or 'periodic'")
        pattern = tuple(_to_fraction(v) for v in self.pattern)
        if not pattern:
            raise ValidationError("tail pattern must be nonempty")
        if self.kind == "constant" and len(pattern) != 1:
            raise ValidationError("constant tail takes a single value")
        object.__setattr__(self, "pattern", pattern)

    @classmethod
    def constant(cls, value) -> "Tail":
        return cls("constant", (value,))

    @classmethod
    def periodic(cls, pattern: Iterable) -> "Tail":
        return cls("periodic", tuple(pattern))

    def average(self) -> Fraction:
        return sum(self.pattern, Fraction(0)) / len(self.pattern)


class SequenceWindow:
    """x_1..x_N plus an optional declared tail for the terms beyond N."""

    __slots__ = ("values", "tail", "had_floats")

    def __init__(self, values: Sequence, tail: Optional[Tail] = None):
        vals = tuple(values)
        if not vals:
            raise ValidationError("a sequence window needs at least one term")
        had_floats = any(isinstance(v, float) for v in vals) or (
            tail is not None and any(isinstance(v, float) for v in tail.pattern)
        )
        object.__setattr__(self, "values", tuple(_to_fraction(v) for v in vals))
        object.__setattr__(self, "tail", tail)
        object.__setattr__(self, "had_floats", had_floats)

    def __setattr__(self, *args):
        raise AttributeError("SequenceWindow is immutable")

    def __len__(self) -> int:
        return len(self.values)

    def value_at(self, n: int) -> Fraction:
        """The term x_n (1-indexed); beyond the window requires a tail."""
        if n < 1:
            raise ValidationError("indices are 1-based")
        if n <= len(self.values):
            return self.values[n - 1]
        if self.tail is None:
            raise ValidationError("term %d lies beyond the window and no tail is declared" % n)
        pattern = self.tail.pattern
        return pattern[(n - len(self.values) - 1) % len(pattern)]

    def all_values(self) -> tuple[Fraction, ...]:
        """Window values plus one full tail period (every value attained)."""
        if self.tail is None:
            return self.values
        return self.values + self.tail.pattern

    def eventual_bounds(self) -> Optional[tuple[Fraction, Fraction]]:
        """(liminf, limsup) of the sequence, exact when a tail is declared."""
        if self.tail is None:
            return None
        return (min(self.tail.pattern), max(self.tail.pattern))

    @classmethod
    def from_json_dict(cls, doc: dict) -> "SequenceWindow":
        try:
            window = doc["window"]
        except (KeyError, TypeError) as exc:
            raise ValidationError("sequence document needs a 'window' list") from exc
        tail_doc = doc.get("tail")
        tail = None
        if tail_doc is not None:
            kind = tail_doc.get("kind")
            if kind == "constant":
                tail = Tail.constant(tail_doc["value"])
            elif kind == "periodic":
                tail = Tail.periodic(tail_doc["pattern"])
            else:
                raise ValidationError("tail kind must be 'constant' or 'periodic'")
        return cls(window, tail)


# ---------------------------------------------------------------------------
# sequence arithmetic (exact, tail-aware)


def _combine(a: Fraction, x: SequenceWindow, b: Fraction, y: SequenceWindow) -> SequenceWindow:
    """a*x + b*y, aligning windows and tail phases exactly."""
    n = max(len(x), len(y))
    if x.tail is None or y.tail is None:
        if len(x) != len(y) or x.tail is not None or y.tail is not None:
            raise ValidationError(
                "combining window-only sequences requires equal windows and no tails"
            )
        tail = None
    else:
        period = math.lcm(len(x.tail.pattern), len(y.tail.pattern))
        pattern = tuple(
            a * x.value_at(n + t) + b * y.value_at(n + t) for t in range(1, period + 1)
        )
        tail = Tail.periodic(pattern) if period > 1 else Tail.constant(pattern[0])
    window = tuple(a * x.value_at(k) + b * y.value_at(k) for k in range(1, n + 1))
    return SequenceWindow(window, tail)


def shift(x: SequenceWindow) -> SequenceWindow:
    """The sequence n -> x_{n+1} (one decalage)."""
    if len(x) == 1 and x.tail is None:
        raise ValidationError("cannot shift a one-term window without a tail")
    if x.tail is None:
        return SequenceWindow(x.values[1:], None)
    window = tuple(x.value_at(k) for k in range(2, len(x) + 2))
    pattern = x.tail.pattern
    offset = pattern[1:] + pattern[:1] if len(pattern) > 1 else pattern
    tail = Tail.periodic(offset) if len(pattern) > 1 else x.tail
    return SequenceWindow(window, tail)


# ---------------------------------------------------------------------------
# Cesàro transform and limit estimates


@dataclass(frozen=True)
class CesaroMeans:
    """Exact prefix means of a window, with the analytic tail limit."""

    means: tuple[Fraction, ...]
    #: exact limit of the means when a tail is declared, else None
    analytic_limit: Optional[Fraction]


def cesaro(x: SequenceWindow) -> CesaroMeans:
    """t_n = (1/n) * (x_1 + ... + x_n) for n up to the window length.

    A declared constant tail c forces the means toward c; a periodic tail
    forces them toward the pattern average.  Both limits are exact.
    """
    means = []
    acc = Fraction(0)
    for k, v in enumerate(x.values, start=1):
        acc += v
        means.append(acc / k)
    limit = None
    if x.tail is not None:
        limit = x.tail.average()
    return CesaroMeans(tuple(means), limit)


@dataclass(frozen=True)
class LimitEstimate:
    """Verdict of the generalized-limit estimator."""

    value: Optional[Fraction]
    status: str  # "converged" | "diverged" | "undetermined"
    tolerance: Fraction
    liminf_est: Fraction
    limsup_est: Fraction

    def __post_init__(self):
        if self.liminf_est > self.limsup_est:
            raise ValidationError("liminf estimate exceeds limsup estimate")


def generalized_limit_estimate(x: SequenceWindow) -> LimitEstimate:
    """The Cesàro-based generalized limit of x, when determinable.

    With a declared tail the limit is exact.  Otherwise the last quarter
    of the window means decides: spread within 1e-9 counts as numeric
    convergence; a strictly monotone run whose increments do not shrink is
    reported as divergence (prefix means of a bounded sequence have
    vanishing increments); anything else is undetermined, with the means'
    bracketing estimates and no invented value.
    """
    ces = cesaro(x)
    if ces.analytic_limit is not None:
        lo, hi = x.eventual_bounds()
        return LimitEstimate(ces.analytic_limit, "converged", EXACT_TOL, lo, hi)

    means = ces.means
    q = max(1, math.ceil(len(means) / 4))
    tail_means = means[-q:]
    lo, hi = min(tail_means), max(tail_means)
    tol = FLOAT_TOL if x.had_floats else RATIONAL_TOL
    if hi - lo <= RATIONAL_TOL:
        return LimitEstimate(means[-1], "converged", tol, lo, hi)
    if len(tail_means) >= 3:
        diffs = [b - a for a, b in zip(tail_means, tail_means[1:])]
        monotone = all(d > 0 for d in diffs) or all(d < 0 for d in diffs)
        if monotone and abs(diffs[-1]) >= abs(diffs[0]):
            return LimitEstimate(None, "diverged", tol, lo, hi)
    return LimitEstimate(None, "undetermined", tol, lo, hi)


# ---------------------------------------------------------------------------
# the axioms


@dataclass(frozen=True)
class AxiomCheck:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class BanachAxiomsReport:
    checks: tuple[AxiomCheck, ...]

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.checks)


def _limit_of(x: SequenceWindow) -> Fraction:
    est = generalized_limit_estimate(x)
    if est.status != "converged":
        raise ValidationError(
            "input outside the convergent class (status %r); "
            "this is a rejected input, not a counterexample" % est.status
        )
    return est.value


def banach_axioms_check(
    inputs: Sequence[SequenceWindow],
    coefficients: tuple = (Fraction(2), Fraction(-3)),
) -> BanachAxiomsReport:
    """Verify the generalized-limit axioms on convergent-class inputs.

    Checks linearity L(a x + b y) = a L(x) + b L(y) over all input pairs,
    positivity, shift invariance, normalization L(1) = 1, and the Baire
    sandwich inf <= liminf <= L <= limsup <= sup.  Exact comparisons for
    rational inputs with declared tails; tolerance 1e-9 for window-only
    rational inputs and 1e-6 whenever floats were involved.
    """
    if not inputs:
        raise ValidationError("axiom check needs at least one input")
    a, b = (Fraction(c) for c in coefficients)
    limits = [_limit_of(x) for x in inputs]
    tol = max(generalized_limit_estimate(x).tolerance for x in inputs)

    def close(u: Fraction, v: Fraction) -> bool:
        return abs(u - v) <= tol

    checks = []

    lin_ok, lin_detail = True, "a=%s b=%s" % (a, b)
    for (x, lx) in zip(inputs, limits):
        for (y, ly) in zip(inputs, limits):
            if (x.tail is None) != (y.tail is None) or (
                x.tail is None and len(x) != len(y)
            ):
                continue  # incompatible shapes cannot be combined exactly
            combined = _combine(a, x, b, y)
            if not close(_limit_of(combined), a * lx + b * ly):
                lin_ok = False
                lin_detail = "failed on a pair"
    checks.append(AxiomCheck("linearity", lin_ok, lin_detail))

    pos_ok = True
    applicable = 0
    for x, lx in zip(inputs, limits):
        if all(v >= 0 for v in x.all_values()):
            applicable += 1
            if lx < -tol:
                pos_ok = False
    checks.append(
        AxiomCheck("positivity", pos_ok, "%d nonnegative inputs" % applicable)
    )

    shift_ok = True
    for x, lx in zip(inputs, limits):
        if not close(_limit_of(shift(x)), lx):
            shift_ok = False
    checks.append(AxiomCheck("shift_invariance", shift_ok, "one decalage"))

    one = SequenceWindow((Fraction(1),), Tail.constant(Fraction(1)))
    norm_ok = _limit_of(one) == 1
    checks.append(AxiomCheck("normalization", norm_ok, "L(1) = 1"))

    baire_ok = True
    for x, lx in zip(inputs, limits):
        values = x.all_values()
        inf_v, sup_v = min(values), max(values)
        bounds = x.eventual_bounds()
        lo, hi = bounds if bounds is not None else (inf_v, sup_v)
        if not (
            inf_v <= lo + tol
            and lo - tol <= lx <= hi + tol
            and hi <= sup_v + tol
        ):
            baire_ok = False
    checks.append(
        AxiomCheck("baire_sandwich", baire_ok, "inf <= liminf <= L <= limsup <= sup")
    )

    return BanachAxiomsReport(tuple(checks))
