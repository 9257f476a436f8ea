"""Finite topologies, specialization preorders, and their bijection.

On a finite point set the ultrafilters are exactly the points, so the
relation "every open set containing x also contains y" is an ordinary
reflexive transitive relation on the points; it captures the whole
topology.  Conversely any preorder yields a topology whose opens are the
successor-closed sets, and the two constructions invert one another.

Composition below is left-to-right: (R.S)(x, z) iff x R y and y S z for
some y.  With that convention a finite space is normal exactly when
T T^-1 is contained in T^-1 T, and extremally disconnected (the closure
of every open is open) exactly when T^-1 T is contained in T T^-1; both
characterizations are computed alongside the direct definitions and the
agreement is reported, not assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ResourceGuardError, ValidationError


class FiniteTopology:
    """Points 0..k-1 with an explicit family of open sets (bitmasks)."""

    __slots__ = ("points", "opens")

    def __init__(self, points: int, opens: Iterable[int]):
        if points < 1:
            raise ValidationError("a topology needs at least one point")
        full = (1 << points) - 1
        fam = frozenset(int(o) for o in opens)
        for o in fam:
            if not 0 <= o <= full:
                raise ValidationError("open %#x outside the point set" % (o,))
        if 0 not in fam or full not in fam:
            raise ValidationError("opens must include the empty set and the space")
        for a in fam:
            for b in fam:
                if a | b not in fam or a & b not in fam:
                    raise ValidationError("opens must be closed under union and intersection")
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "opens", fam)

    def __setattr__(self, *args):
        raise AttributeError("FiniteTopology is immutable")

    @classmethod
    def from_sets(cls, points: int, opens: Iterable[Iterable[int]]) -> "FiniteTopology":
        masks = []
        for o in opens:
            mask = 0
            for x in o:
                if not 0 <= int(x) < points:
                    raise ValidationError("point %r out of range" % (x,))
                mask |= 1 << int(x)
            masks.append(mask)
        return cls(points, masks)

    def open_sets(self) -> list[list[int]]:
        return sorted(
            [[x for x in range(self.points) if o >> x & 1] for o in self.opens],
            key=lambda s: (len(s), s),
        )

    def closed_masks(self) -> frozenset:
        full = (1 << self.points) - 1
        return frozenset(full ^ o for o in self.opens)

    def closure(self, mask: int) -> int:
        """Smallest closed superset of the given point set."""
        best = (1 << self.points) - 1
        for c in self.closed_masks():
            if mask & c == mask and c.bit_count() < best.bit_count():
                best = c
        return best

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FiniteTopology)
            and self.points == other.points
            and self.opens == other.opens
        )

    def __hash__(self) -> int:
        return hash((self.points, self.opens))

    @classmethod
    def from_json_dict(cls, doc: dict) -> "FiniteTopology":
        try:
            return cls.from_sets(doc["points"], doc["opens"])
        except (KeyError, TypeError) as exc:
            raise ValidationError("topology document needs 'points' and 'opens'") from exc

    def to_json_dict(self) -> dict:
        return {"points": self.points, "opens": self.open_sets()}


class Preorder:
    """A reflexive transitive relation on 0..k-1, as a boolean matrix."""

    __slots__ = ("points", "relation")

    def __init__(self, relation: Sequence[Sequence[bool]]):
        rel = tuple(tuple(bool(v) for v in row) for row in relation)
        k = len(rel)
        if k < 1 or any(len(row) != k for row in rel):
            raise ValidationError("relation must be a nonempty square matrix")
        for i in range(k):
            if not rel[i][i]:
                raise ValidationError("relation is not reflexive")
        for i in range(k):
            for j in range(k):
                if rel[i][j]:
                    for l in range(k):
                        if rel[j][l] and not rel[i][l]:
                            raise ValidationError("relation is not transitive")
        object.__setattr__(self, "points", k)
        object.__setattr__(self, "relation", rel)

    def __setattr__(self, *args):
        raise AttributeError("Preorder is immutable")

    def holds(self, x: int, y: int) -> bool:
        return self.relation[x][y]

    def __eq__(self, other) -> bool:
        return isinstance(other, Preorder) and self.relation == other.relation

    def __hash__(self) -> int:
        return hash(self.relation)

    def inverse(self) -> "Preorder":
        k = self.points
        return Preorder(tuple(tuple(self.relation[y][x] for y in range(k)) for x in range(k)))


def _compose(a: Sequence[Sequence[bool]], b: Sequence[Sequence[bool]]) -> tuple:
    k = len(a)
    return tuple(
        tuple(any(a[x][y] and b[y][z] for y in range(k)) for z in range(k))
        for x in range(k)
    )


def _matrix_subset(a, b) -> bool:
    return all(not av or bv for ra, rb in zip(a, b) for av, bv in zip(ra, rb))


def nasse_of(topo: FiniteTopology) -> Preorder:
    """x below y when every open containing x also contains y."""
    k = topo.points
    rel = tuple(
        tuple(
            all(o >> y & 1 for o in topo.opens if o >> x & 1)
            for y in range(k)
        )
        for x in range(k)
    )
    return Preorder(rel)


def topo_of(pre: Preorder) -> FiniteTopology:
    """Opens are the successor-closed sets of the preorder.

    Inverse of :func:`nasse_of`: both round-trips are identities.
    """
    k = pre.points
    opens = []
    for mask in range(1 << k):
        if all(
            pre.relation[x][y] <= bool(mask >> y & 1)
            for x in range(k)
            if mask >> x & 1
            for y in range(k)
        ):
            opens.append(mask)
    return FiniteTopology(k, opens)


def enumerate_topologies(k: int) -> list[FiniteTopology]:
    """Every topology on k points, by brute closure checking."""
    if k > 4:
        raise ResourceGuardError("topology enumeration limited to k <= 4")
    full = (1 << k) - 1
    others = [s for s in range(1 << k) if s not in (0, full)]
    out = []
    for pick in range(1 << len(others)):
        fam = {0, full} | {others[i] for i in range(len(others)) if pick >> i & 1}
        if all(a | b in fam and a & b in fam for a in fam for b in fam):
            out.append(FiniteTopology(k, fam))
    return out


def enumerate_preorders(k: int) -> list[Preorder]:
    """Every preorder on k points, by brute transitivity checking."""
    if k > 4:
        raise ResourceGuardError("preorder enumeration limited to k <= 4")
    offdiag = [(i, j) for i in range(k) for j in range(k) if i != j]
    out = []
    for pick in range(1 << len(offdiag)):
        rel = [[i == j for j in range(k)] for i in range(k)]
        for idx, (i, j) in enumerate(offdiag):
            if pick >> idx & 1:
                rel[i][j] = True
        if all(
            not (rel[i][j] and rel[j][l]) or rel[i][l]
            for i in range(k)
            for j in range(k)
            for l in range(k)
        ):
            out.append(Preorder(rel))
    return out


@dataclass(frozen=True)
class CorrespondenceCount:
    topologies: int
    preorders: int

    @property
    def equal(self) -> bool:
        return self.topologies == self.preorders


def count_correspondence(k: int) -> CorrespondenceCount:
    """Count topologies and preorders on k points by two independent sweeps."""
    return CorrespondenceCount(len(enumerate_topologies(k)), len(enumerate_preorders(k)))


@dataclass(frozen=True)
class NormalityReport:
    """Direct separation checks against the relation-composition criteria."""

    normal_direct: bool
    nasse_condition: bool
    extremally_disconnected_direct: bool
    nasse_condition_ed: bool

    @property
    def agree(self) -> bool:
        return self.normal_direct == self.nasse_condition

    @property
    def agree_ed(self) -> bool:
        return self.extremally_disconnected_direct == self.nasse_condition_ed


def normality_check(topo: FiniteTopology) -> NormalityReport:
    """Evaluate normality and extremal disconnectedness both ways.

    Direct normality: every two disjoint closed sets lie in disjoint open
    sets.  Direct extremal disconnectedness: the closure of every open set
    is open.  The relation criteria use the nasse T of the space.
    """
    if topo.points > 5:
        raise ResourceGuardError("normality check limited to k <= 5")
    closed = topo.closed_masks()
    normal = True
    for a in closed:
        for b in closed:
            if a & b:
                continue
            if not any(
                u & v == 0 and a & u == a and b & v == b
                for u in topo.opens
                for v in topo.opens
            ):
                normal = False
    extremal = all(topo.closure(o) in topo.opens for o in topo.opens)

    t = nasse_of(topo).relation
    t_inv = tuple(tuple(t[y][x] for y in range(topo.points)) for x in range(topo.points))
    tti = _compose(t, t_inv)
    itt = _compose(t_inv, t)
    return NormalityReport(
        normal_direct=normal,
        nasse_condition=_matrix_subset(tti, itt),
        extremally_disconnected_direct=extremal,
        nasse_condition_ed=_matrix_subset(itt, tti),
    )
