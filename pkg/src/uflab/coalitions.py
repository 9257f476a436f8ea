"""Generalized voting systems on finite assemblies.

An assembly is a finite set of members 0..n-1; a coalition is any subset,
stored as a bitmask; a voting system distinguishes an explicit family of
*efficacious* coalitions (the generalized majorities).  The module provides
the condition checkers C1/C2/C3 and U1/U2, the classical constructors
(majority, chaired majority, weighted, dictatorial, and the 7-point
projective-plane counterexample), dictatorship detection, exact
weight-representability via Fourier-Motzkin elimination, exhaustive system
enumeration, and incoherence witnesses.

Conditions, stated for a family E of coalitions of an assembly A:

* C1 - a coalition is efficacious iff the opposite coalition is not;
* C2 - every coalition containing an efficacious coalition is efficacious;
* C3 - the intersection of two efficacious coalitions is efficacious;
* U1 - K intersect L is in E iff K is in E and L is in E;
* U2 - K union L is in E iff K is in E or L is in E.

C1+C2+C3 together say that E is an ultrafilter on A; the equivalent
U-style definition additionally requires E to be a nonempty family of
nonempty coalitions (checked separately as the "proper" side condition).

All values are immutable after construction and safe to share across
threads; enumeration generators are single-consumer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

from . import fm, kernels
from .errors import ResourceGuardError, ValidationError, PropertyViolationError

MAX_ASSEMBLY = 24  # keeps coalition bitmasks in one machine word

CONDITIONS = ("C1", "C2", "C3", "U1", "U2")

# the 7 lines of the projective plane on points 0..6 used by make_fano()
FANO_LINES = (
    (0, 1, 2),
    (0, 3, 4),
    (0, 5, 6),
    (1, 3, 5),
    (1, 4, 6),
    (2, 3, 6),
    (2, 4, 5),
)


@dataclass(frozen=True)
class Assembly:
    """A finite assembly with members 0..size-1."""

    size: int

    def __post_init__(self):
        if not 1 <= self.size <= MAX_ASSEMBLY:
            raise ValidationError(
                "assembly size must be between 1 and %d, got %r"
                % (MAX_ASSEMBLY, self.size)
            )

    @property
    def full_mask(self) -> int:
        return (1 << self.size) - 1

    def members(self) -> range:
        return range(self.size)


@dataclass(frozen=True)
class Coalition:
    """A subset of an assembly, encoded as a bitmask over members."""

    members: int
    assembly_size: int

    def __post_init__(self):
        if not 1 <= self.assembly_size <= MAX_ASSEMBLY:
            raise ValidationError("bad assembly size %r" % (self.assembly_size,))
        if not 0 <= self.members < (1 << self.assembly_size):
            raise ValidationError(
                "coalition %#x not within an assembly of size %d"
                % (self.members, self.assembly_size)
            )

    @classmethod
    def of(cls, members: Iterable[int], assembly_size: int) -> "Coalition":
        mask = 0
        for x in members:
            if not 0 <= x < assembly_size:
                raise ValidationError("member %r outside assembly" % (x,))
            mask |= 1 << x
        return cls(mask, assembly_size)

    def complement(self) -> "Coalition":
        full = (1 << self.assembly_size) - 1
        return Coalition(full ^ self.members, self.assembly_size)

    def intersection(self, other: "Coalition") -> "Coalition":
        self._check_same(other)
        return Coalition(self.members & other.members, self.assembly_size)

    def union(self, other: "Coalition") -> "Coalition":
        self._check_same(other)
        return Coalition(self.members | other.members, self.assembly_size)

    def issubset(self, other: "Coalition") -> bool:
        self._check_same(other)
        return self.members & other.members == self.members

    def _check_same(self, other: "Coalition") -> None:
        if self.assembly_size != other.assembly_size:
            raise ValidationError("coalitions from different assemblies")

    def __contains__(self, member: int) -> bool:
        return bool(self.members >> member & 1)

    def __len__(self) -> int:
        return self.members.bit_count()

    def to_tuple(self) -> tuple[int, ...]:
        return tuple(x for x in range(self.assembly_size) if self.members >> x & 1)

    def __str__(self) -> str:
        return "{%s}" % ",".join(str(x) for x in self.to_tuple())


def complement(c: Coalition) -> Coalition:
    """The opposite coalition A minus K (an involution)."""
    return c.complement()


class VotingSystem:
    """An assembly together with its family of efficacious coalitions.

    The family is extensional: an explicit, deduplicated set of coalition
    bitmasks, so equality, enumeration and counting are exact.
    """

    __slots__ = ("assembly", "efficacious")

    def __init__(self, assembly: Assembly, efficacious: Iterable[int]):
        masks = frozenset(int(k) for k in efficacious)
        full = assembly.full_mask
        for k in masks:
            if not 0 <= k <= full:
                raise ValidationError("coalition %#x outside assembly" % (k,))
        object.__setattr__(self, "assembly", assembly)
        object.__setattr__(self, "efficacious", masks)

    def __setattr__(self, *args):
        raise AttributeError("VotingSystem is immutable")

    @classmethod
    def from_coalitions(cls, n: int, coalitions: Iterable[Iterable[int]]) -> "VotingSystem":
        asm = Assembly(n)
        return cls(asm, (Coalition.of(c, n).members for c in coalitions))

    @property
    def n(self) -> int:
        return self.assembly.size

    def is_efficacious(self, coalition) -> bool:
        """Membership test; accepts a Coalition, a bitmask, or an iterable."""
        if isinstance(coalition, Coalition):
            if coalition.assembly_size != self.n:
                raise ValidationError("coalition from a different assembly")
            return coalition.members in self.efficacious
        if isinstance(coalition, int):
            return coalition in self.efficacious
        return Coalition.of(coalition, self.n).members in self.efficacious

    def coalitions(self) -> tuple[Coalition, ...]:
        """The efficacious family in canonical order (by member lists)."""
        masks = sorted(self.efficacious, key=_mask_sort_key)
        return tuple(Coalition(k, self.n) for k in masks)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, VotingSystem)
            and self.n == other.n
            and self.efficacious == other.efficacious
        )

    def __hash__(self) -> int:
        return hash((self.n, self.efficacious))

    def __repr__(self) -> str:
        return "VotingSystem(n=%d, efficacious=%s)" % (
            self.n,
            [str(c) for c in self.coalitions()],
        )

    def to_json_dict(self) -> dict:
        """Canonical JSON form: member arrays sorted, family sorted."""
        return {
            "n": self.n,
            "efficacious": [list(c.to_tuple()) for c in self.coalitions()],
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "VotingSystem":
        try:
            n = doc["n"]
            fam = doc["efficacious"]
        except (KeyError, TypeError) as exc:
            raise ValidationError("voting system document needs 'n' and 'efficacious'") from exc
        return cls.from_coalitions(n, fam)


def _mask_sort_key(mask: int) -> tuple:
    members = []
    x = 0
    while mask:
        if mask & 1:
            members.append(x)
        mask >>= 1
        x += 1
    return tuple(members)


@dataclass(frozen=True)
class WeightVector:
    """Nonnegative rational weights, one per assembly member."""

    weights: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "weights", tuple(Fraction(w) for w in self.weights)
        )
        for w in self.weights:
            if w < 0:
                raise ValidationError("weights must be nonnegative, got %s" % (w,))

    def coalition_weight(self, c: Coalition) -> Fraction:
        return sum((self.weights[x] for x in c.to_tuple()), Fraction(0))


# ---------------------------------------------------------------------------
# condition checkers


def check_condition(vs: VotingSystem, cond: str) -> bool:
    """Exhaustive quantifier check of one of C1, C2, C3, U1, U2."""
    n = vs.n
    m = 1 << n
    full = m - 1
    eff = vs.efficacious
    if cond == "C1":
        return all((k in eff) != (full ^ k in eff) for k in range(m))
    if cond == "C2":
        for k in eff:
            # enumerate the supersets of k
            l = k
            while True:
                if l not in eff:
                    return False
                if l == full:
                    break
                l = (l + 1) | k
        return True
    if cond == "C3":
        return all(k & l in eff for k in eff for l in eff)
    if cond == "U1":
        return all(
            (k & l in eff) == (k in eff and l in eff)
            for k in range(m)
            for l in range(k, m)
        )
    if cond == "U2":
        return all(
            (k | l in eff) == (k in eff or l in eff)
            for k in range(m)
            for l in range(k, m)
        )
    raise ValidationError("unknown condition %r" % (cond,))


def is_ultrafilter(vs: VotingSystem) -> bool:
    """C1 and C2 and C3 - the voting-theoretic ultrafilter definition."""
    return all(check_condition(vs, c) for c in ("C1", "C2", "C3"))


def is_ultrafilter_u1u2(vs: VotingSystem) -> bool:
    """The U-style definition: a nonempty family of nonempty coalitions
    satisfying U1 and U2.

    Equivalent to :func:`is_ultrafilter`; both routes are kept so the
    equivalence can be tested rather than assumed.  The two side conditions
    matter: the empty family and the full powerset satisfy the bare U1+U2
    laws but are not ultrafilters.
    """
    eff = vs.efficacious
    if not eff or 0 in eff:
        return False
    return check_condition(vs, "U1") and check_condition(vs, "U2")


def find_dictator(vs: VotingSystem) -> Optional[int]:
    """The member d such that the system is exactly make_dictator(n, d)."""
    for d in range(vs.n):
        if 1 << d in vs.efficacious and vs == make_dictator(vs.n, d):
            return d
    return None


# ---------------------------------------------------------------------------
# constructors


def make_majority(n: int, chair: Optional[int] = None) -> VotingSystem:
    """Simple majority, optionally with a chair's casting vote.

    A coalition is efficacious when it outnumbers its opposite, or (chair
    given) when it contains the chair and exactly ties its opposite.
    """
    asm = Assembly(n)
    if chair is not None and not 0 <= chair < n:
        raise ValidationError("chair %r outside assembly" % (chair,))
    masks = []
    for k in range(1 << n):
        size = k.bit_count()
        if 2 * size > n:
            masks.append(k)
        elif chair is not None and 2 * size == n and k >> chair & 1:
            masks.append(k)
    return VotingSystem(asm, masks)


def make_dictator(n: int, d: int) -> VotingSystem:
    """All coalitions containing the dictator d."""
    asm = Assembly(n)
    if not 0 <= d < n:
        raise ValidationError("dictator %r outside assembly" % (d,))
    return VotingSystem(asm, (k for k in range(1 << n) if k >> d & 1))


def make_weighted(n: int, w: WeightVector) -> VotingSystem:
    """Coalitions strictly heavier than their opposite, under weights w."""
    asm = Assembly(n)
    if len(w.weights) != n:
        raise ValidationError("expected %d weights, got %d" % (n, len(w.weights)))
    total = sum(w.weights, Fraction(0))
    masks = []
    for k in range(1 << n):
        pk = sum((w.weights[x] for x in range(n) if k >> x & 1), Fraction(0))
        if 2 * pk > total:
            masks.append(k)
    return VotingSystem(asm, masks)


def weighted_is_valid(n: int, w: WeightVector) -> bool:
    """True when no coalition has the same weight as its opposite."""
    if len(w.weights) != n:
        raise ValidationError("expected %d weights, got %d" % (n, len(w.weights)))
    total = sum(w.weights, Fraction(0))
    return all(
        2 * sum((w.weights[x] for x in range(n) if k >> x & 1), Fraction(0)) != total
        for k in range(1 << n)
    )


def make_fano() -> VotingSystem:
    """The 7-point projective-plane system: efficacious are the coalitions
    with at least 5 points or containing one of the 7 lines.

    Satisfies C1 and C2 yet is not obtainable from any weighting.
    """
    line_masks = [Coalition.of(line, 7).members for line in FANO_LINES]
    masks = [
        k
        for k in range(1 << 7)
        if k.bit_count() >= 5 or any(k & lm == lm for lm in line_masks)
    ]
    return VotingSystem(Assembly(7), masks)


# ---------------------------------------------------------------------------
# weight representability (exact Fourier-Motzkin)


def _minimal_masks(eff: frozenset[int]) -> list[int]:
    """Inclusion-minimal members of the family."""
    by_size = sorted(eff, key=lambda k: (k.bit_count(), k))
    minimal: list[int] = []
    for k in by_size:
        if not any(mk & k == mk for mk in minimal):
            minimal.append(k)
    return minimal


def weight_representable(vs: VotingSystem) -> Optional[WeightVector]:
    """Nonnegative rational weights reproducing the system exactly, if any.

    Decides feasibility of the strict homogeneous system
    { p(K) - p(K^c) > 0 : K efficacious } over nonnegative rationals by
    Fourier-Motzkin elimination.  Weighted-valid systems satisfy C1 and C2,
    so anything failing those is rejected immediately; under C1 the
    constraints for non-efficacious coalitions are the complements'
    constraints, and under C2 with nonnegative weights only the
    inclusion-minimal efficacious coalitions are binding.
    """
    n = vs.n
    if n > 10:
        raise ResourceGuardError(
            "weight_representable limited to assemblies of size <= 10"
        )
    if not (check_condition(vs, "C1") and check_condition(vs, "C2")):
        return None
    rows = []
    for k in _minimal_masks(vs.efficacious):
        coeffs = [Fraction(1 if k >> x & 1 else -1) for x in range(n)]
        rows.append(fm.Row(coeffs, strict=True))
    for x in range(n):
        unit = [Fraction(0)] * n
        unit[x] = Fraction(1)
        rows.append(fm.Row(unit, strict=False))
    solution = fm.solve_homogeneous(n, rows)
    if solution is None:
        return None
    weights = WeightVector(tuple(solution))
    if make_weighted(n, weights) != vs or not weighted_is_valid(n, weights):
        raise PropertyViolationError(
            "Fourier-Motzkin witness failed the round-trip check"
        )
    return weights


# ---------------------------------------------------------------------------
# enumeration, Guilbaud, incoherence


def _monotone_family_masks(n: int) -> list[int]:
    """All upward-closed coalition families on n members, as family masks.

    Doubling construction: a monotone family on k+1 members is a pair
    (g, h) of monotone families on k members with g <= h pointwise, where
    g is the slice without the new member and h the slice with it.
    """
    fams = [0, 1]  # on the empty assembly: empty family, {empty coalition}
    for k in range(n):
        width = 1 << (1 << k)
        new = []
        for g in fams:
            for h in fams:
                if g & h == g:  # bitwise g <= h is subset on set bits
                    new.append(g | (h << (1 << k)))
        fams = new
    return fams


def enumerate_systems(n: int, required: Iterable[str]) -> Iterator[VotingSystem]:
    """Yield every voting system on n members satisfying the conditions.

    Each system is produced once, in increasing family-mask order.  With C2
    among the requirements the search runs over upward-closed families only
    (n <= 5); otherwise all 2^(2^n) families are classified (n <= 4).
    """
    req = frozenset(required)
    unknown = req.difference(CONDITIONS)
    if unknown:
        raise ValidationError("unknown conditions %s" % sorted(unknown))
    asm = Assembly(n)
    m = 1 << n

    def from_family_mask(fam: int) -> VotingSystem:
        return VotingSystem(asm, (k for k in range(m) if fam >> k & 1))

    if "C2" in req:
        if n > 5:
            raise ResourceGuardError("enumeration with C2 limited to n <= 5")
        rest = req - {"C2"}
        for fam in sorted(_monotone_family_masks(n)):
            vs = from_family_mask(fam)
            if all(check_condition(vs, c) for c in rest):
                yield vs
    else:
        if n > 4:
            raise ResourceGuardError("full enumeration limited to n <= 4")
        flags = kernels.classify_families(n)
        want = 0
        for c in req:
            want |= {
                "C1": kernels.FLAG_C1,
                "C3": kernels.FLAG_C3,
                "U1": kernels.FLAG_U1,
                "U2": kernels.FLAG_U2,
            }[c]
        for fam in range(len(flags)):
            if flags[fam] & want == want:
                yield from_family_mask(fam)


@dataclass(frozen=True)
class GuilbaudReport:
    """Outcome of the dictatorship sweep for one assembly size."""

    n: int
    system_count: int
    all_dictatorial: bool
    intersections_are_singletons: bool

    @property
    def ok(self) -> bool:
        return self.all_dictatorial and self.intersections_are_singletons


def guilbaud_verify(n: int, *, report: bool = False):
    """Check that every C1+C2+C3 system on n members is dictatorial.

    Also exercises the proof mechanism: the intersection M of all
    efficacious coalitions must itself be efficacious and a singleton.
    Returns a boolean, or the full :class:`GuilbaudReport` with
    ``report=True``.
    """
    if n > 4:
        raise ResourceGuardError("guilbaud_verify limited to n <= 4")
    count = 0
    all_dict = True
    singletons = True
    for vs in enumerate_systems(n, {"C1", "C2", "C3"}):
        count += 1
        if find_dictator(vs) is None:
            all_dict = False
        m_mask = vs.assembly.full_mask
        for k in vs.efficacious:
            m_mask &= k
        if m_mask not in vs.efficacious or m_mask.bit_count() != 1:
            singletons = False
    rep = GuilbaudReport(n, count, all_dict, singletons)
    return rep if report else rep.ok


def incoherence_witness(
    vs: VotingSystem,
) -> Optional[tuple[Coalition, Coalition, Coalition]]:
    """Efficacious K, L whose intersection is not efficacious, if C3 fails.

    This is the three-question lottery scenario: the assembly awards the
    prize to a member of K, to a member of L, and then refuses to award it
    to any member of K intersect L.  Requires a system satisfying C1+C2.
    """
    if not (check_condition(vs, "C1") and check_condition(vs, "C2")):
        raise ValidationError("incoherence_witness requires a C1+C2 system")
    eff = sorted(vs.efficacious, key=_mask_sort_key)
    for k in eff:
        for l in eff:
            if k & l not in vs.efficacious:
                n = vs.n
                return (Coalition(k, n), Coalition(l, n), Coalition(k & l, n))
    return None
