"""Preference profiles and collective rankings under a voting system.

Voters rank candidates by strict total orders; the assembly compares
candidates pairwise and a coalition-based voting system decides each pair.
The module provides pairwise tallies, the collective relation and its
cycles, the six-label machinery on a candidate triple, the profile
conditions (S), (T), (V) and their theorem chain, Sen's value restriction,
exact cycle probabilities, and the three classical election methods.

For a fixed candidate triple (a, b, c) the six strict orders are labelled
by Z/6Z exactly as follows:

    1: a>b>c   2: a>c>b   3: c>a>b   4: c>b>a   5: b>c>a   6: b>a>c

Consecutive labels share their top or bottom candidate and labels p, p+3
are reversed orders; all label arithmetic below is modulo 6 on this table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Mapping, Optional, Sequence

from .coalitions import Coalition, VotingSystem, check_condition, make_majority
from .errors import ResourceGuardError, ValidationError

#: label -> order of the triple (a,b,c) given as indices into the triple
LABEL_TABLE: dict[int, tuple[int, int, int]] = {
    1: (0, 1, 2),
    2: (0, 2, 1),
    3: (2, 0, 1),
    4: (2, 1, 0),
    5: (1, 2, 0),
    6: (1, 0, 2),
}

_ORDER_TO_LABEL = {order: p for p, order in LABEL_TABLE.items()}


def label_add(p: int, k: int) -> int:
    """Label arithmetic modulo 6 on representatives 1..6."""
    return (p - 1 + k) % 6 + 1


@dataclass(frozen=True)
class Ranking:
    """A strict total order over candidates 0..c-1, best first."""

    order: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))
        if sorted(self.order) != list(range(len(self.order))):
            raise ValidationError(
                "ranking %r is not a permutation of 0..c-1 "
                "(ties and partial ballots are not accepted)" % (self.order,)
            )

    def prefers(self, x: int, y: int) -> bool:
        return self.order.index(x) < self.order.index(y)

    def restrict_label(self, triple: tuple[int, int, int]) -> int:
        """The Z/6 label of this ranking restricted to the triple."""
        ranked = sorted(triple, key=self.order.index)
        pattern = tuple(triple.index(c) for c in ranked)
        return _ORDER_TO_LABEL[pattern]


class Profile:
    """candidate names plus one ranking per voter (voters are 0..n-1)."""

    __slots__ = ("candidates", "rankings")

    def __init__(self, candidates: Sequence[str], rankings: Iterable[Ranking]):
        names = tuple(str(c) for c in candidates)
        if len(set(names)) != len(names) or not names:
            raise ValidationError("candidate names must be nonempty and distinct")
        rks = tuple(rankings)
        if not rks:
            raise ValidationError("a profile needs at least one voter")
        for r in rks:
            if len(r.order) != len(names):
                raise ValidationError("ranking arity differs from candidate count")
        object.__setattr__(self, "candidates", names)
        object.__setattr__(self, "rankings", rks)

    def __setattr__(self, *args):
        raise AttributeError("Profile is immutable")

    @property
    def n(self) -> int:
        return len(self.rankings)

    @property
    def c(self) -> int:
        return len(self.candidates)

    def ballot_counts(self) -> dict[Ranking, int]:
        """Condensed form: distinct rankings with multiplicities."""
        out: dict[Ranking, int] = {}
        for r in self.rankings:
            out[r] = out.get(r, 0) + 1
        return out

    @classmethod
    def from_ballots(
        cls, candidates: Sequence[str], ballots: Iterable[tuple[Sequence[str], int]]
    ) -> "Profile":
        """Build from (ranking given by candidate names, count) pairs."""
        names = tuple(str(c) for c in candidates)
        index = {c: i for i, c in enumerate(names)}
        rankings = []
        for order_names, count in ballots:
            if count < 0:
                raise ValidationError("ballot count must be nonnegative")
            try:
                order = tuple(index[str(c)] for c in order_names)
            except KeyError as exc:
                raise ValidationError("unknown candidate %s" % (exc,)) from exc
            rankings.extend([Ranking(order)] * count)
        return cls(names, rankings)

    def to_json_dict(self) -> dict:
        ballots = [
            {"ranking": [self.candidates[i] for i in r.order], "count": cnt}
            for r, cnt in sorted(
                self.ballot_counts().items(), key=lambda kv: kv[0].order
            )
        ]
        return {"candidates": list(self.candidates), "ballots": ballots}

    @classmethod
    def from_json_dict(cls, doc: dict) -> "Profile":
        try:
            candidates = doc["candidates"]
            ballots = [(b["ranking"], b.get("count", 1)) for b in doc["ballots"]]
        except (KeyError, TypeError) as exc:
            raise ValidationError(
                "profile document needs 'candidates' and 'ballots'"
            ) from exc
        return cls.from_ballots(candidates, ballots)


@dataclass(frozen=True)
class CollectiveRelation:
    """The strict collective preference on ordered candidate pairs."""

    candidates: int
    wins: frozenset[tuple[int, int]]

    def prefers(self, x: int, y: int) -> bool:
        return (x, y) in self.wins

    def is_total_asymmetric(self) -> bool:
        return all(
            ((x, y) in self.wins) != ((y, x) in self.wins)
            for x in range(self.candidates)
            for y in range(x + 1, self.candidates)
        )


def pairwise_tally(p: Profile) -> dict[tuple[int, int], int]:
    """count[x, y] = number of voters ranking x above y."""
    counts = {}
    for x in range(p.c):
        for y in range(p.c):
            if x != y:
                counts[(x, y)] = sum(1 for r in p.rankings if r.prefers(x, y))
    return counts


def collective_relation(p: Profile, vs: VotingSystem) -> CollectiveRelation:
    """x beats y when the coalition of voters preferring x to y is efficacious.

    The assembly must have one seat per voter.  Under a C1 system the
    result is total and asymmetric; otherwise it may be partial, which
    ``is_total_asymmetric`` reports.
    """
    if vs.n != p.n:
        raise ValidationError(
            "assembly size %d does not match voter count %d" % (vs.n, p.n)
        )
    wins = set()
    for x in range(p.c):
        for y in range(p.c):
            if x == y:
                continue
            mask = 0
            for v, r in enumerate(p.rankings):
                if r.prefers(x, y):
                    mask |= 1 << v
            if vs.is_efficacious(mask):
                wins.add((x, y))
    return CollectiveRelation(p.c, frozenset(wins))


def find_cycle(r: CollectiveRelation) -> Optional[tuple[int, ...]]:
    """A shortest directed cycle of the strict relation, or None.

    For a total asymmetric relation acyclicity is equivalent to
    acyclicity on every candidate triple, so 3-cycles are scanned first;
    a breadth-first search covers partial relations.
    """
    for a in range(r.candidates):
        for b in range(r.candidates):
            for c in range(r.candidates):
                if a < min(b, c) and len({a, b, c}) == 3:
                    if r.prefers(a, b) and r.prefers(b, c) and r.prefers(c, a):
                        return (a, b, c)
    # partial relations may have longer shortest cycles
    succ = {x: sorted(y for (xx, y) in r.wins if xx == x) for x in range(r.candidates)}
    best: Optional[tuple[int, ...]] = None
    for start in range(r.candidates):
        frontier = [(start,)]
        seen = {start}
        while frontier:
            new = []
            for path in frontier:
                for y in succ[path[-1]]:
                    if y == start and len(path) >= 3:
                        if best is None or len(path) < len(best):
                            best = path
                    elif y not in seen:
                        seen.add(y)
                        new.append(path + (y,))
            frontier = new
    return best


def label_profile(
    p: Profile, triple: tuple[int, int, int]
) -> dict[int, Coalition]:
    """Partition the assembly by the label of each voter's restricted ranking.

    Returns K(p) for every label p in 1..6, as coalitions of voters.
    """
    if p.c < 3:
        raise ValidationError("labelling needs at least three candidates")
    if len(set(triple)) != 3 or not all(0 <= t < p.c for t in triple):
        raise ValidationError("triple must name three distinct candidates")
    masks = {lab: 0 for lab in range(1, 7)}
    for v, r in enumerate(p.rankings):
        masks[r.restrict_label(triple)] |= 1 << v
    return {lab: Coalition(mask, p.n) for lab, mask in masks.items()}


def _k_union(ks: Mapping[int, Coalition], *labels: int) -> Coalition:
    out = ks[label_add(labels[0], 0)]
    for lab in labels[1:]:
        out = out.union(ks[label_add(lab, 0)])
    return out


def check_profile_condition(
    p: Profile, vs: VotingSystem, cond: str, triple: tuple[int, int, int]
) -> bool:
    """Literal quantifier over the six labels for condition (S), (T) or (V).

    (S) some K(p, p+1) or K(p, p+3) is empty;
    (T) some K(p, p+1) is efficacious;
    (V) some K(p, p+1, p+2) and K(p+1, p+2, p+3) are both efficacious.

    (T) and (V) quantify over the voting system, which must satisfy C1+C2.
    """
    ks = label_profile(p, triple)
    if cond == "S":
        return any(
            len(_k_union(ks, q, q + 1)) == 0 or len(_k_union(ks, q, q + 3)) == 0
            for q in range(1, 7)
        )
    if cond in ("T", "V"):
        if vs.n != p.n:
            raise ValidationError("assembly size does not match voter count")
        if not (check_condition(vs, "C1") and check_condition(vs, "C2")):
            raise ValidationError("conditions (T) and (V) require a C1+C2 system")
        if cond == "T":
            return any(vs.is_efficacious(_k_union(ks, q, q + 1)) for q in range(1, 7))
        return any(
            vs.is_efficacious(_k_union(ks, q, q + 1, q + 2))
            and vs.is_efficacious(_k_union(ks, q + 1, q + 2, q + 3))
            for q in range(1, 7)
        )
    raise ValidationError("unknown profile condition %r" % (cond,))


def sen_condition(p: Profile, triple: tuple[int, int, int]) -> bool:
    """Sen's value restriction on the triple: some rank r and candidate t
    such that no voter places t at rank r among the three."""
    if len(set(triple)) != 3 or not all(0 <= t < p.c for t in triple):
        raise ValidationError("triple must name three distinct candidates")
    for r in range(3):
        for t in range(3):
            if all(
                LABEL_TABLE[rk.restrict_label(triple)][r] != t for rk in p.rankings
            ):
                return True
    return False


@dataclass(frozen=True)
class CoherenceReport:
    """Joint evaluation of (S), (T), (V) and collective coherence."""

    s: bool
    t: bool
    v: bool
    coherent: bool
    chain_ok: bool = field(init=False)

    def __post_init__(self):
        chain = (not self.s or self.t) and (not self.t or self.v)
        object.__setattr__(self, "chain_ok", chain and (self.v == self.coherent))


def coherence_theorem_check(p: Profile, vs: VotingSystem) -> CoherenceReport:
    """Evaluate S, T, V and acyclicity on a three-candidate profile.

    ``chain_ok`` reports the full theorem chain S => T => V and
    V <=> coherent for this instance; it is a theorem for C1+C2 systems,
    so False indicates a defect.
    """
    if p.c != 3:
        raise ValidationError("coherence check requires exactly three candidates")
    triple = (0, 1, 2)
    s = check_profile_condition(p, vs, "S", triple)
    t = check_profile_condition(p, vs, "T", triple)
    v = check_profile_condition(p, vs, "V", triple)
    coherent = find_cycle(collective_relation(p, vs)) is None
    return CoherenceReport(s, t, v, coherent)


# ---------------------------------------------------------------------------
# cycle probability


def _label_beats(x: int, y: int) -> tuple[int, ...]:
    """Labels whose order ranks candidate x above candidate y (indices 0..2)."""
    return tuple(
        lab for lab, order in LABEL_TABLE.items() if order.index(x) < order.index(y)
    )


def cycle_probability(voters: int) -> Fraction:
    """Probability of a majority cycle among three candidates.

    Voters draw independently and uniformly among the six strict orders;
    the result is the exact fraction of the 6^voters assignments whose
    strict-majority pairwise relation contains a cycle.  Enumerates label
    multiplicity vectors with multinomial coefficients, which agrees with
    the literal 6^n enumeration.
    """
    if voters < 1:
        raise ValidationError("need at least one voter")
    if voters > 7:
        raise ResourceGuardError("cycle_probability limited to <= 7 voters")
    pair_labels = {
        (x, y): _label_beats(x, y) for x in range(3) for y in range(3) if x != y
    }
    cyclic = 0

    def compositions(total: int, parts: int):
        if parts == 1:
            yield (total,)
            return
        for head in range(total + 1):
            for rest in compositions(total - head, parts - 1):
                yield (head,) + rest

    for counts in compositions(voters, 6):
        by_label = dict(zip(range(1, 7), counts))

        def beats(x: int, y: int) -> bool:
            return 2 * sum(by_label[lab] for lab in pair_labels[(x, y)]) > voters

        if any(
            beats(a, b) and beats(b, c) and beats(c, a)
            for a, b, c in permutations(range(3))
        ):
            weight = math.factorial(voters)
            for cnt in counts:
                weight //= math.factorial(cnt)
            cyclic += weight
    return Fraction(cyclic, 6**voters)


# ---------------------------------------------------------------------------
# election methods


@dataclass(frozen=True)
class ElectionOutcome:
    """Result of one election method on one profile."""

    method: str
    winner: Optional[str]
    detail: dict

    def to_json_dict(self) -> dict:
        return {"method": self.method, "winner": self.winner, **self.detail}


def _first_place_counts(p: Profile) -> dict[int, int]:
    counts = {x: 0 for x in range(p.c)}
    for r in p.rankings:
        counts[r.order[0]] += 1
    return counts


def run_election(p: Profile, method: str) -> ElectionOutcome:
    """Run one of the three classical methods.

    ``plurality`` elects the candidate with the most first places;
    ``two_round`` holds a runoff between the top two using the full
    rankings; ``pairwise`` compares candidates two by two under strict
    majority and reports either the collective ranking or the cycle.
    All ties are broken toward the lowest candidate id (a deterministic
    stand-in for the traditional by-age clause).
    """
    names = p.candidates
    if method == "plurality":
        counts = _first_place_counts(p)
        winner = min(range(p.c), key=lambda x: (-counts[x], x))
        return ElectionOutcome(
            method,
            names[winner],
            {"first_round": {names[x]: counts[x] for x in range(p.c)}},
        )

    if method == "two_round":
        counts = _first_place_counts(p)
        order = sorted(range(p.c), key=lambda x: (-counts[x], x))
        a, b = order[0], order[1]
        a_votes = sum(1 for r in p.rankings if r.prefers(a, b))
        b_votes = p.n - a_votes
        winner = a if a_votes >= b_votes else b
        if a_votes == b_votes:
            winner = min(a, b)
        return ElectionOutcome(
            method,
            names[winner],
            {
                "first_round": {names[x]: counts[x] for x in range(p.c)},
                "runoff": {names[a]: a_votes, names[b]: b_votes},
            },
        )

    if method == "pairwise":
        tallies = pairwise_tally(p)
        wins = frozenset((x, y) for (x, y), cnt in tallies.items() if 2 * cnt > p.n)
        relation = CollectiveRelation(p.c, wins)
        cycle = find_cycle(relation)
        detail: dict = {
            "tallies": {
                "%s>%s" % (names[x], names[y]): cnt for (x, y), cnt in sorted(tallies.items())
            }
        }
        if cycle is not None:
            detail["cycle"] = [names[x] for x in cycle]
            return ElectionOutcome(method, None, detail)
        if not relation.is_total_asymmetric():
            detail["note"] = "pairwise relation not total (tied pairs)"
            return ElectionOutcome(method, None, detail)
        ranking = sorted(
            range(p.c),
            key=lambda x: (-sum(1 for y in range(p.c) if (x, y) in wins), x),
        )
        detail["ranking"] = [names[x] for x in ranking]
        return ElectionOutcome(method, names[ranking[0]], detail)

    raise ValidationError("unknown election method %r" % (method,))


def majority_for(p: Profile, chair: Optional[int] = None) -> VotingSystem:
    """Simple majority sized for the profile's assembly (helper)."""
    return make_majority(p.n, chair)
