"""Interval bases, representation counts and prefix diagonals.

An *interval basis* of [0, m] is a set B inside [0, m] with B + B covering
[0, m]; r(A, n) counts the ordered representations n = x + y with x, y in
A, and s(A) is its maximum.  Given a sample of interval bases B_m with a
common representation bound, a *diagonal* is a set every prefix of which
is the same prefix of many sample members; such a set is automatically a
basis of the whole range with the same bound.

The infinite notion ("the same finite piece of |I| many members, for an
infinite I") is rendered at a finite horizon N by an explicit survivor
threshold: while the depth n is small the builder demands several
witnesses with comfortably large m (default: two witnesses with m >= 2n
while n <= N/2), afterwards a single witness with m >= n suffices.  The
builder walks the finitely-branching tree of prefix patterns breadth
first, keeping the surviving patterns at each depth, and finally returns
the lexicographically least surviving full-depth pattern (compared by
characteristic vector).  A separate validator recomputes every claim from
scratch and is the acceptance oracle for the builder.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping, Optional

from .errors import UflabError, ValidationError


def rep_count(a: Iterable[int], n: int) -> int:
    """r(A, n): ordered pairs (x, y) in A x A with x + y = n."""
    s = set(a)
    return sum(1 for x in s if n - x in s)


def s_max(a: Iterable[int], horizon: int) -> int:
    """s(A) truncated to n <= horizon: the largest representation count."""
    s = set(a)
    return max((rep_count(s, n) for n in range(horizon + 1)), default=0)


def is_interval_basis(b: Iterable[int], m: int) -> bool:
    """B included in [0, m] and every n in [0, m] a sum of two B elements."""
    s = set(b)
    if not all(0 <= x <= m for x in s):
        return False
    return all(rep_count(s, n) > 0 for n in range(m + 1))


@dataclass(frozen=True)
class RepProfile:
    """Representation counts of a set up to a horizon."""

    elements: frozenset
    horizon: int
    counts: tuple[int, ...]

    @property
    def s(self) -> int:
        return max(self.counts, default=0)

    @classmethod
    def of(cls, a: Iterable[int], horizon: int) -> "RepProfile":
        s = frozenset(a)
        return cls(s, horizon, tuple(rep_count(s, n) for n in range(horizon + 1)))


class IntervalBasisFamily:
    """A finite sample of interval bases B_m, indexed by increasing m."""

    __slots__ = ("bases",)

    def __init__(self, bases: Mapping[int, Iterable[int]]):
        fam = {int(m): frozenset(int(x) for x in b) for m, b in bases.items()}
        if not fam:
            raise ValidationError("the sample must contain at least one basis")
        for m, b in fam.items():
            if m < 0:
                raise ValidationError("sample points must be nonnegative")
            if not is_interval_basis(b, m):
                raise ValidationError("B_%d is not an interval basis of [0, %d]" % (m, m))
        object.__setattr__(self, "bases", MappingProxyType(fam))

    def __setattr__(self, *args):
        raise AttributeError("IntervalBasisFamily is immutable")

    @property
    def sample(self) -> tuple[int, ...]:
        return tuple(sorted(self.bases.keys()))

    def s_bound(self) -> int:
        """max over the sample of s(B_m) up to m."""
        return max(s_max(b, m) for m, b in self.bases.items())

    @classmethod
    def from_json_dict(cls, doc: dict) -> "IntervalBasisFamily":
        try:
            bases = doc["bases"]
        except (KeyError, TypeError) as exc:
            raise ValidationError("family document needs a 'bases' mapping") from exc
        return cls({int(m): b for m, b in bases.items()})


class DiagonalBuildError(UflabError):
    """The sample is too thin to carry the prefix search to the horizon."""

    def __init__(self, depth: int, message: str):
        super().__init__(message)
        self.depth = depth


@dataclass(frozen=True)
class DiagonalResult:
    """A built diagonal with its per-depth witness lists."""

    d: frozenset
    horizon: int
    #: largest n such that every depth up to n carries at least one witness
    n_prime: int
    #: witnesses[n] = sample points m >= n with B_m agreeing with D on [0, n]
    witnesses: tuple[tuple[int, ...], ...]

    def to_json_dict(self) -> dict:
        return {
            "d": sorted(self.d),
            "horizon": self.horizon,
            "n_prime": self.n_prime,
            "witnesses": [list(w) for w in self.witnesses],
        }


def _required_witnesses(n: int, horizon: int, early_count: int) -> tuple[int, int]:
    """(minimum witness count, minimum m) at depth n."""
    if n <= horizon // 2:
        return early_count, 2 * n
    return 1, n


def build_diagonal(
    fam: IntervalBasisFamily, horizon: int, early_count: int = 2
) -> DiagonalResult:
    """Construct a diagonal prefix D of [0, horizon] from the sample.

    Guarantees, validated by :func:`validate_diagonal`:

    * every prefix D n [0, n] equals B_m n [0, n] for at least one sample
      point m >= n (with the stronger early-phase threshold);
    * [0, n_prime] is covered by D + D;
    * s(D) up to n_prime stays within the sample's representation bound.
    """
    if horizon < 0:
        raise ValidationError("horizon must be nonnegative")
    prefixes = [frozenset()]  # surviving patterns at depth n-1
    for n in range(horizon + 1):
        need, min_m = _required_witnesses(n, horizon, early_count)
        survivors = []
        for pat in prefixes:
            for extended in (pat, pat | {n}):
                count = sum(
                    1
                    for m, b in fam.bases.items()
                    if m >= min_m and _prefix(b, n) == extended
                )
                if count >= need:
                    survivors.append(extended)
        if not survivors:
            raise DiagonalBuildError(
                n,
                "no prefix pattern at depth %d has %d witnesses with m >= %d"
                % (n, need, min_m),
            )
        prefixes = survivors
    d = min(prefixes, key=lambda pat: _char_vector(pat, horizon))
    witnesses = tuple(
        tuple(
            m
            for m in fam.sample
            if m >= n and _prefix(fam.bases[m], n) == _prefix(d, n)
        )
        for n in range(horizon + 1)
    )
    n_prime = horizon
    for n, w in enumerate(witnesses):
        if not w:
            n_prime = n - 1
            break
    return DiagonalResult(d, horizon, n_prime, witnesses)


def _prefix(s: frozenset, n: int) -> frozenset:
    return frozenset(x for x in s if x <= n)


def _char_vector(pat: frozenset, horizon: int) -> tuple[int, ...]:
    return tuple(1 if x in pat else 0 for x in range(horizon + 1))


@dataclass(frozen=True)
class DiagonalReport:
    """Independent validation of a diagonal candidate."""

    ok: bool
    n_prime: int
    s_d: int
    s_bound: int
    failures: tuple[str, ...]


def validate_diagonal(
    fam: IntervalBasisFamily, result: DiagonalResult
) -> DiagonalReport:
    """Recompute every claim of a DiagonalResult from scratch.

    Independent of the builder: witnesses are rescanned from the raw
    sample, sumset coverage is checked by direct addition, and the
    representation bound by direct counting.
    """
    failures = []
    d = result.d
    horizon = result.horizon

    witnesses = []
    for n in range(horizon + 1):
        agreeing = tuple(
            m
            for m in fam.sample
            if m >= n and _prefix(fam.bases[m], n) == _prefix(d, n)
        )
        witnesses.append(agreeing)
    n_prime = horizon
    for n, w in enumerate(witnesses):
        if not w:
            n_prime = n - 1
            break
    if tuple(witnesses) != result.witnesses:
        failures.append("witness lists differ from a fresh scan")
    if n_prime != result.n_prime:
        failures.append("n_prime differs from a fresh scan")
    for n in range(min(n_prime, horizon) + 1):
        if not witnesses[n]:
            failures.append("depth %d has no agreeing sample point" % n)

    sums = {x + y for x in d for y in d}
    uncovered = [n for n in range(max(n_prime, 0) + 1) if n not in sums]
    if uncovered:
        failures.append("sumset misses %s" % uncovered)

    s_d = s_max(d, max(n_prime, 0))
    s_bound = fam.s_bound()
    if s_d > s_bound:
        failures.append("representation bound exceeded: %d > %d" % (s_d, s_bound))

    return DiagonalReport(not failures, n_prime, s_d, s_bound, tuple(failures))
