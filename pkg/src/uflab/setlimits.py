"""Discrete-case limits of indexed set families along filters.

For a family (E_i) of subsets of a finite universe and a filter F on the
index set with grille G, the lower and upper limits are

    liminf = intersection over J in G of the unions  U_{i in J} E_i,
    limsup = intersection over J in F of those unions,

with the dual union-of-intersections forms and the pointwise
characterizations x in liminf <=> I(x) in F and x in limsup <=> I(x) in G,
where I(x) = { i : x in E_i }.  All three routes are computed and compared
on every call, so the defining identities are verified, not assumed.

The bracket sets I[F, M] = { i : F n M = F n E_i } support the limit lemma
(I[F, L] always efficacious for an ultrafilter limit L) and the finite
rendering of diagonals: on a finite index set the uniform-filter cardinal
clause degenerates, so "the same finite piece of many members" is rendered
with an explicit witness threshold q.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Hashable, Iterable, Mapping, Optional

from .errors import PropertyViolationError, ValidationError
from .filters import FiniteFilter, FiniteUltrafilter, Grille, grille


class SetFamily:
    """Finitely many subsets E_i of a finite universe, indexed by I."""

    __slots__ = ("universe", "sets")

    def __init__(self, universe: Iterable[Hashable], sets: Mapping[Hashable, Iterable[Hashable]]):
        uni = frozenset(universe)
        fam = {i: frozenset(s) for i, s in sets.items()}
        if not fam:
            raise ValidationError("a set family needs at least one index")
        for i, s in fam.items():
            if not s <= uni:
                raise ValidationError("member %r exceeds the universe" % (i,))
        object.__setattr__(self, "universe", uni)
        object.__setattr__(self, "sets", MappingProxyType(fam))

    def __setattr__(self, *args):
        raise AttributeError("SetFamily is immutable")

    @property
    def index_elements(self) -> frozenset:
        return frozenset(self.sets.keys())

    @classmethod
    def from_json_dict(cls, doc: dict) -> "SetFamily":
        try:
            universe = doc["universe"]
            sets = doc["sets"]
        except (KeyError, TypeError) as exc:
            raise ValidationError("family document needs 'universe' and 'sets'") from exc
        return cls(universe, sets)


@dataclass(frozen=True)
class LimitPair:
    """Lower and upper limits; ``lim`` is present iff they coincide."""

    liminf: frozenset
    limsup: frozenset
    lim: Optional[frozenset]


def index_set(fam: SetFamily, x: Hashable) -> frozenset:
    """I(x): the indices whose member set contains x."""
    if x not in fam.universe:
        raise ValidationError("%r is not in the universe" % (x,))
    return frozenset(i for i, s in fam.sets.items() if x in s)


def _union_over(fam: SetFamily, j: frozenset) -> frozenset:
    out: frozenset = frozenset()
    for i in j:
        out |= fam.sets[i]
    return out


def _intersection_over(fam: SetFamily, j: frozenset) -> frozenset:
    out = fam.universe
    for i in j:
        out &= fam.sets[i]
    return out


def set_limits(fam: SetFamily, f: FiniteFilter) -> LimitPair:
    """Lower and upper limits of the family along the filter.

    Computes the primal intersection-of-unions formulas, the dual
    union-of-intersections formulas and the I(x) membership
    characterizations, and insists all three agree.
    """
    if f.ground != fam.index_elements:
        raise ValidationError("filter ground differs from the family index set")
    g: Grille = grille(f)

    liminf = fam.universe
    for j in g.sets:
        liminf &= _union_over(fam, j)
    limsup = fam.universe
    for j in f.sets:
        limsup &= _union_over(fam, j)

    liminf_dual: frozenset = frozenset()
    for j in f.sets:
        liminf_dual |= _intersection_over(fam, j)
    limsup_dual: frozenset = frozenset()
    for j in g.sets:
        limsup_dual |= _intersection_over(fam, j)

    liminf_member = frozenset(x for x in fam.universe if index_set(fam, x) in f.sets)
    limsup_member = frozenset(x for x in fam.universe if index_set(fam, x) in g.sets)

    if not (liminf == liminf_dual == liminf_member):
        raise PropertyViolationError("liminf formulas disagree")
    if not (limsup == limsup_dual == limsup_member):
        raise PropertyViolationError("limsup formulas disagree")
    if not liminf <= limsup:
        raise PropertyViolationError("liminf exceeds limsup")
    return LimitPair(liminf, limsup, liminf if liminf == limsup else None)


def limit_along(fam: SetFamily, u: FiniteUltrafilter) -> frozenset:
    """The limit along an ultrafilter (always exists)."""
    pair = set_limits(fam, u)
    if pair.lim is None:
        raise PropertyViolationError("ultrafilter limits must collapse")
    return pair.lim


def _subsets_of(universe: frozenset) -> Iterable[frozenset]:
    items = sorted(universe, key=repr)
    n = len(items)
    for mask in range(1 << n):
        yield frozenset(items[k] for k in range(n) if mask >> k & 1)


def i_bracket(fam: SetFamily, f_set: Iterable[Hashable], m: Iterable[Hashable]) -> frozenset:
    """I[F, M] = { i : F n M = F n E_i }.

    Also checks the decomposition into the I(x) sets:
    I[F, M] is the intersection of I(x) for x in F n M and of the
    complements of I(x) for x in F minus M.
    """
    fs = frozenset(f_set)
    ms = frozenset(m)
    direct = frozenset(i for i, s in fam.sets.items() if fs & ms == fs & s)
    decomposed = fam.index_elements
    for x in fs & ms & fam.universe:
        decomposed &= index_set(fam, x)
    for x in (fs - ms) & fam.universe:
        decomposed &= fam.index_elements - index_set(fam, x)
    for x in fs - fam.universe:
        if x in ms:
            # an element outside the universe can never be in F n E_i
            decomposed = frozenset()
    if direct != decomposed:
        raise PropertyViolationError("bracket decomposition identity failed")
    return direct


def limit_lemma_check(fam: SetFamily, u: FiniteUltrafilter) -> bool:
    """With L the limit along u, verify I[F, L] in u for every F."""
    lim = limit_along(fam, u)
    return all(i_bracket(fam, fs, lim) in u.sets for fs in _subsets_of(fam.universe))


def is_diagonal_truncated(d: Iterable[Hashable], fam: SetFamily, q: int) -> bool:
    """Finite rendering of "D is a diagonal": every finite piece of D is
    the same piece of at least q family members.

    The infinite definition asks |I[F, D]| = |I|, which on a finite index
    set would force D to agree with every member; the threshold q keeps
    every bracket computation exact while making "many" explicit.
    """
    if q < 1:
        raise ValidationError("threshold q must be at least 1")
    ds = frozenset(d)
    return all(
        len(i_bracket(fam, fs, ds)) >= q for fs in _subsets_of(fam.universe)
    )


def theorem_2_5_check(fam: SetFamily, u: FiniteUltrafilter) -> bool:
    """The ultrafilter limit is a diagonal (at witness threshold 1)."""
    return is_diagonal_truncated(limit_along(fam, u), fam, 1)
