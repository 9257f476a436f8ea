"""Filters, ultrafilters and grilles on finite index sets.

A filter is stored extensionally: a nonempty, upward-closed, intersection
stable family of nonempty subsets of a finite ground set, with the closure
properties checked eagerly at construction.  On a finite ground set every
ultrafilter is principal (generated by a point), so the grille of a filter,
the set of finer ultrafilters, Grimeisen's filtered sum and the ordinal
product are all finitely computable and are verified rather than assumed.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Hashable, Iterable, Mapping

from .errors import ResourceGuardError, ValidationError, PropertyViolationError

GroundElement = Hashable


def _subsets(ground: frozenset) -> Iterable[frozenset]:
    items = sorted(ground, key=repr)
    for r in range(len(items) + 1):
        for combo in combinations(items, r):
            yield frozenset(combo)


class FiniteFilter:
    """A filter on a finite ground set, stored as an explicit family."""

    __slots__ = ("ground", "sets")

    def __init__(self, ground: Iterable[GroundElement], sets: Iterable[Iterable[GroundElement]]):
        g = frozenset(ground)
        fam = frozenset(frozenset(s) for s in sets)
        if not g:
            raise ValidationError("ground set must be nonempty")
        if not fam:
            raise ValidationError("a filter is a nonempty family")
        for s in fam:
            if not s <= g:
                raise ValidationError("member set %r not within ground" % (sorted(s, key=repr),))
            if not s:
                raise ValidationError("the empty set never belongs to a filter")
        # upward closure: adding any single missing element stays inside
        for s in fam:
            for e in g - s:
                if s | {e} not in fam:
                    raise ValidationError("family is not closed under supersets")
        # intersection stability via the inclusion-minimal members
        minimal = _minimal_sets(fam)
        for a in minimal:
            for b in minimal:
                if a & b not in fam:
                    raise ValidationError("family is not closed under intersections")
        object.__setattr__(self, "ground", g)
        object.__setattr__(self, "sets", fam)

    def __setattr__(self, *args):
        raise AttributeError("filters are immutable")

    @classmethod
    def generated(
        cls, ground: Iterable[GroundElement], generators: Iterable[Iterable[GroundElement]]
    ) -> "FiniteFilter":
        """The smallest filter containing every generator set."""
        g = frozenset(ground)
        gens = [frozenset(s) for s in generators]
        base = g
        for s in gens:
            base &= s
        if not gens:
            gens = [g]
        # all supersets of intersections of generators; on finite ground the
        # upward closure of all finite intersections
        inter_closed = set()
        for r in range(1, len(gens) + 1):
            for combo in combinations(gens, r):
                x = g
                for s in combo:
                    x &= s
                inter_closed.add(x)
        fam = {s for s in _subsets(g) if any(s >= x for x in inter_closed)}
        return cls(g, fam)

    @classmethod
    def trivial(cls, ground: Iterable[GroundElement]) -> "FiniteFilter":
        """The coarsest filter {ground}."""
        g = frozenset(ground)
        return cls(g, [g])

    def __contains__(self, s) -> bool:
        return frozenset(s) in self.sets

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FiniteFilter)
            and self.ground == other.ground
            and self.sets == other.sets
        )

    def __hash__(self) -> int:
        return hash((self.ground, self.sets))

    def __repr__(self) -> str:
        kind = type(self).__name__
        return "%s(ground=%s, %d sets)" % (kind, sorted(self.ground, key=repr), len(self.sets))

    def minimal_sets(self) -> tuple[frozenset, ...]:
        return tuple(_minimal_sets(self.sets))

    def is_ultrafilter(self) -> bool:
        """Exactly one of X and its complement belongs, for every X."""
        return all(
            (s in self.sets) != (self.ground - s in self.sets)
            for s in _subsets(self.ground)
        )

    def kernel(self) -> frozenset:
        """The intersection of all member sets."""
        out = self.ground
        for s in self.minimal_sets():
            out &= s
        return out


def _minimal_sets(fam: Iterable[frozenset]) -> list[frozenset]:
    by_size = sorted(fam, key=lambda s: (len(s), sorted(s, key=repr).__repr__()))
    minimal: list[frozenset] = []
    for s in by_size:
        if not any(m <= s for m in minimal):
            minimal.append(s)
    return minimal


class FiniteUltrafilter(FiniteFilter):
    """A filter containing exactly one of every complementary pair."""

    def __init__(self, ground, sets):
        super().__init__(ground, sets)
        if not self.is_ultrafilter():
            raise ValidationError(
                "family misses the exactly-one-of-X-and-complement law"
            )

    @property
    def point(self) -> GroundElement:
        """The generating point (finite ultrafilters are principal)."""
        kernel = self.kernel()
        if len(kernel) != 1:
            raise PropertyViolationError(
                "finite ultrafilter with non-singleton kernel"
            )
        return next(iter(kernel))


class Grille:
    """The family of sets meeting every member of a filter."""

    __slots__ = ("ground", "sets")

    def __init__(self, ground: Iterable[GroundElement], sets: Iterable[Iterable[GroundElement]]):
        object.__setattr__(self, "ground", frozenset(ground))
        object.__setattr__(self, "sets", frozenset(frozenset(s) for s in sets))

    def __setattr__(self, *args):
        raise AttributeError("grilles are immutable")

    def __contains__(self, s) -> bool:
        return frozenset(s) in self.sets

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Grille)
            and self.ground == other.ground
            and self.sets == other.sets
        )

    def __hash__(self) -> int:
        return hash((self.ground, self.sets))


# ---------------------------------------------------------------------------
# operations


def principal(ground: Iterable[GroundElement], x: GroundElement) -> FiniteUltrafilter:
    """The trivial ultrafilter of all sets containing x."""
    g = frozenset(ground)
    if x not in g:
        raise ValidationError("%r is not a ground element" % (x,))
    return FiniteUltrafilter(g, (s for s in _subsets(g) if x in s))


def enumerate_ultrafilters(ground: Iterable[GroundElement]) -> list[FiniteUltrafilter]:
    """All ultrafilters on the ground set: exactly the principal ones."""
    g = frozenset(ground)
    if len(g) > 16:
        raise ResourceGuardError("ultrafilter enumeration limited to |I| <= 16")
    return [principal(g, x) for x in sorted(g, key=repr)]


@lru_cache(maxsize=4096)
def grille(f: FiniteFilter) -> Grille:
    """All sets meeting every member of the filter.

    Always contains the filter; equals it exactly when the filter is an
    ultrafilter.  It is also the union of the finer ultrafilters, which is
    cross-checked here.  Results are cached (filters are immutable).
    """
    minimal = f.minimal_sets()
    sets = [s for s in _subsets(f.ground) if all(s & m for m in minimal)]
    g = Grille(f.ground, sets)
    union: set[frozenset] = set()
    for u in finer_ultrafilters(f):
        union |= u.sets
    if frozenset(union) != g.sets:
        raise PropertyViolationError("grille differs from the union of finer ultrafilters")
    return g


@lru_cache(maxsize=4096)
def _finer_tuple(f: FiniteFilter) -> tuple:
    return tuple(principal(f.ground, x) for x in sorted(f.kernel(), key=repr))


def finer_ultrafilters(f: FiniteFilter) -> list[FiniteUltrafilter]:
    """The ultrafilters refining the filter: principal at kernel points.

    Their intersection recovers the filter, which is cross-checked.
    """
    out = list(_finer_tuple(f))
    inter = None
    for u in out:
        inter = u.sets if inter is None else inter & u.sets
    if inter is None or frozenset(inter) != f.sets:
        raise PropertyViolationError(
            "filter differs from the intersection of its finer ultrafilters"
        )
    return out


def grimeisen_sum(
    master: FiniteUltrafilter,
    parts: Mapping[GroundElement, tuple[Iterable[GroundElement], FiniteUltrafilter]],
) -> FiniteUltrafilter:
    """Grimeisen's filtered sum of the family of ultrafilters.

    ``master`` lives on the set of part indices; each part supplies a
    pairwise-disjoint ground set with its own ultrafilter.  A coalition K
    of the union is efficacious when { p : K intersect I_p in U_p } is
    efficacious for the master.  The result is verified to be an
    ultrafilter.
    """
    if frozenset(parts.keys()) != master.ground:
        raise ValidationError("parts must be indexed exactly by the master ground")
    grounds: dict[GroundElement, frozenset] = {}
    union: set = set()
    for p, (ip, up) in parts.items():
        ipf = frozenset(ip)
        if frozenset(up.ground) != ipf:
            raise ValidationError("part %r ultrafilter not on its ground" % (p,))
        if union & ipf:
            raise ValidationError("part grounds must be pairwise disjoint")
        union |= ipf
        grounds[p] = ipf
    if len(union) > 16:
        raise ResourceGuardError("grimeisen_sum limited to a union of <= 16 elements")
    total = frozenset(union)
    sets = []
    for k in _subsets(total):
        deciders = frozenset(p for p in grounds if k & grounds[p] in parts[p][1].sets)
        if deciders in master.sets:
            sets.append(k)
    return FiniteUltrafilter(total, sets)


def ordinal_product(u: FiniteUltrafilter, v: FiniteUltrafilter) -> FiniteUltrafilter:
    """The ordinal product of u (on I) by v (on J), on the ground I x J.

    K is efficacious when { j : { i : (i,j) in K } in u } is efficacious
    for v.  Decomposes as a Grimeisen sum over the horizontal slices
    I_j = { (i,j) : i in I }; the roles of u and v are not symmetric.
    """
    if len(u.ground) * len(v.ground) > 16:
        raise ResourceGuardError("ordinal_product limited to |I|*|J| <= 16")
    ground = frozenset((i, j) for i in u.ground for j in v.ground)
    sets = []
    for k in _subsets(ground):
        l = frozenset(
            j
            for j in v.ground
            if frozenset(i for i in u.ground if (i, j) in k) in u.sets
        )
        if l in v.sets:
            sets.append(k)
    return FiniteUltrafilter(ground, sets)


def relabel(f: FiniteFilter, mapping: Mapping[GroundElement, GroundElement]) -> FiniteFilter:
    """Image of a filter under a bijective relabelling of the ground."""
    if set(mapping.keys()) != set(f.ground) or len(set(mapping.values())) != len(f.ground):
        raise ValidationError("relabelling must be a bijection on the ground")
    cls = FiniteUltrafilter if isinstance(f, FiniteUltrafilter) else FiniteFilter
    return cls(
        (mapping[x] for x in f.ground),
        (frozenset(mapping[x] for x in s) for s in f.sets),
    )


# JSON helpers -------------------------------------------------------------


def filter_from_json_dict(doc: dict) -> FiniteFilter:
    """Read a filter from {"ground": [...]} plus one of "principal",
    "generators" (a list of sets) or "sets" (the full family)."""
    try:
        ground = doc["ground"]
    except (KeyError, TypeError) as exc:
        raise ValidationError("filter document needs a 'ground' list") from exc
    if "principal" in doc:
        return principal(ground, doc["principal"])
    if "generators" in doc:
        return FiniteFilter.generated(ground, doc["generators"])
    if "sets" in doc:
        return FiniteFilter(ground, doc["sets"])
    raise ValidationError("filter document needs 'principal', 'generators' or 'sets'")


def filter_to_json_dict(f: FiniteFilter) -> dict:
    return {
        "ground": sorted(f.ground, key=repr),
        "sets": sorted([sorted(s, key=repr) for s in f.sets], key=lambda s: (len(s), repr(s))),
    }
