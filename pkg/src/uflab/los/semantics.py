"""Tarskian evaluation, truth sets, finite ultraproducts, and the
fundamental-lemma verifier.

Given structures X_i indexed by a finite assembly I, per-index choices
x = (x_i) and a statement P, the truth set is

    V(P; x, ..., y) = { i in I : P(x_i, ..., y_i) holds in X_i },

and P is *true along* an ultrafilter U when V(P) is efficacious (in U).
The ultraproduct is the product of the universes modulo agreement on an
efficacious index set; on a finite assembly every ultrafilter is
principal, so the quotient is isomorphic to the distinguished factor.
The verifier evaluates statements on both sides - in the quotient and via
truth sets - and reports whether they agree; the existential case is also
exercised constructively, completing a per-index witness with a default
element (the least element of each universe) outside the deciding
coalition.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from types import MappingProxyType
from typing import Hashable, Mapping, Optional

from ..errors import PropertyViolationError, ValidationError
from ..filters import FiniteUltrafilter
from .syntax import Eq, Exists, Formula, Not, Or, Rel, free_vars


@dataclass(frozen=True)
class Signature:
    """Relation names with arities, plus distinguished constant names."""

    relations: Mapping[str, int]
    constants: frozenset[str] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "relations", MappingProxyType(dict(self.relations)))
        object.__setattr__(self, "constants", frozenset(self.constants))
        for name, arity in self.relations.items():
            if arity < 1:
                raise ValidationError("relation %r needs arity >= 1" % name)
        if self.constants & set(self.relations):
            raise ValidationError("constant and relation names must not clash")


class Structure:
    """A finite relational structure.

    The universe is kept as a tuple: its order is the documented total
    order used for default witness elements (least element first).
    """

    __slots__ = ("universe", "relations", "constants")

    def __init__(
        self,
        universe,
        relations: Mapping[str, object] = (),
        constants: Mapping[str, Hashable] = (),
    ):
        uni = tuple(universe)
        if not uni or len(set(uni)) != len(uni):
            raise ValidationError("universe must be nonempty without repeats")
        rels = {}
        for name, tuples in dict(relations).items():
            fixed = frozenset(tuple(t) for t in tuples)
            arities = {len(t) for t in fixed}
            if len(arities) > 1:
                raise ValidationError("relation %r has mixed arities" % name)
            for t in fixed:
                if not set(t) <= set(uni):
                    raise ValidationError("relation %r mentions foreign elements" % name)
            rels[name] = fixed
        consts = dict(constants)
        for name, v in consts.items():
            if v not in uni:
                raise ValidationError("constant %r outside the universe" % name)
        object.__setattr__(self, "universe", uni)
        object.__setattr__(self, "relations", MappingProxyType(rels))
        object.__setattr__(self, "constants", MappingProxyType(consts))

    def __setattr__(self, *args):
        raise AttributeError("Structure is immutable")

    def default_element(self):
        return self.universe[0]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Structure)
            and self.universe == other.universe
            and dict(self.relations) == dict(other.relations)
            and dict(self.constants) == dict(other.constants)
        )

    def __hash__(self):
        return hash(
            (self.universe, tuple(sorted(self.relations.items())), tuple(sorted(self.constants.items())))
        )

    @classmethod
    def from_json_dict(cls, doc: dict) -> "Structure":
        try:
            universe = doc["universe"]
        except (KeyError, TypeError) as exc:
            raise ValidationError("structure document needs a 'universe' list") from exc
        return cls(universe, doc.get("relations", {}), doc.get("constants", {}))

    def to_json_dict(self) -> dict:
        return {
            "universe": list(self.universe),
            "relations": {
                name: sorted([list(t) for t in tuples])
                for name, tuples in sorted(self.relations.items())
            },
            "constants": dict(sorted(self.constants.items())),
        }


def _term_value(st: Structure, term: str, env: Mapping[str, Hashable]):
    if term in env:
        return env[term]
    if term in st.constants:
        return st.constants[term]
    raise ValidationError("unbound name %r" % term)


def evaluate(st: Structure, f: Formula, env: Mapping[str, Hashable] = ()) -> bool:
    """Truth of the formula in the structure under the environment."""
    env = dict(env)
    if isinstance(f, Eq):
        return _term_value(st, f.left, env) == _term_value(st, f.right, env)
    if isinstance(f, Rel):
        if f.name not in st.relations:
            raise ValidationError("unknown relation %r" % f.name)
        values = tuple(_term_value(st, t, env) for t in f.terms)
        return values in st.relations[f.name]
    if isinstance(f, Not):
        return not evaluate(st, f.body, env)
    if isinstance(f, Or):
        return evaluate(st, f.left, env) or evaluate(st, f.right, env)
    if isinstance(f, Exists):
        return any(
            evaluate(st, f.body, {**env, f.var: e}) for e in st.universe
        )
    raise TypeError("not a formula: %r" % (f,))


# ---------------------------------------------------------------------------
# indexed families, truth sets, truth along an ultrafilter

#: a family of structures indexed by the assembly
StructureFamily = Mapping[Hashable, Structure]

#: one collective choice: per-index element, total on the assembly
IndexedChoice = Mapping[Hashable, Hashable]


def _check_family(family: StructureFamily, u: Optional[FiniteUltrafilter] = None):
    if not family:
        raise ValidationError("the family must be nonempty")
    if u is not None and frozenset(family.keys()) != u.ground:
        raise ValidationError("ultrafilter ground differs from the family index set")


def _check_choices(
    family: StructureFamily, f: Formula, choices: Mapping[str, IndexedChoice]
) -> None:
    needed = free_vars(f)
    # names interpreted by every structure as constants need no choices
    for name in needed:
        if all(name in st.constants for st in family.values()):
            continue
        if name not in choices:
            raise ValidationError("no indexed choice for free name %r" % name)
        ch = choices[name]
        for i, st in family.items():
            if i not in ch:
                raise ValidationError("choice for %r misses index %r" % (name, i))
            if ch[i] not in st.universe:
                raise ValidationError(
                    "choice for %r at index %r is outside that universe" % (name, i)
                )


def truth_set(
    family: StructureFamily, f: Formula, choices: Mapping[str, IndexedChoice]
) -> frozenset:
    """V(P): the coalition of indices whose structure satisfies P."""
    _check_family(family)
    _check_choices(family, f, choices)
    out = []
    for i, st in family.items():
        env = {name: ch[i] for name, ch in choices.items()}
        if evaluate(st, f, env):
            out.append(i)
    return frozenset(out)


def holds_along(
    u: FiniteUltrafilter,
    family: StructureFamily,
    f: Formula,
    choices: Mapping[str, IndexedChoice] = (),
) -> bool:
    """Truth along the ultrafilter: the truth set is efficacious."""
    _check_family(family, u)
    return truth_set(family, f, dict(choices)) in u.sets


# ---------------------------------------------------------------------------
# ultraproducts


@dataclass(frozen=True)
class UClass:
    """An ultraproduct element: a class of index-indexed tuples mod U.

    ``rep`` is the canonical representative (the member choice function,
    as a tuple following the sorted index order).
    """

    rep: tuple

    def __repr__(self):
        return "[%s]" % (",".join(map(repr, self.rep)))


@dataclass(frozen=True)
class Ultraproduct:
    """Quotient structure with its isomorphism onto the deciding factor."""

    structure: Structure
    indices: tuple
    point: Hashable  # the ultrafilter's principal point
    iso: Mapping[UClass, Hashable]  # class -> element of the factor at `point`

    def class_of(self, choice: IndexedChoice) -> UClass:
        """The quotient element of a per-index choice function."""
        values = tuple(choice[i] for i in self.indices)
        for cls in self.structure.universe:
            if cls.rep[self.indices.index(self.point)] == values[self.indices.index(self.point)]:
                return cls
        raise ValidationError("choice does not match any class")


def ultraproduct(family: StructureFamily, u: FiniteUltrafilter) -> Ultraproduct:
    """The quotient of the product of the family by agreement modulo u.

    Two choice functions are identified when they agree on an efficacious
    coalition; relations hold on classes when they hold on an efficacious
    coalition of coordinates.  On the finite assemblies handled here the
    ultrafilter is principal, so classes are keyed by the coordinate at
    its point; the returned isomorphism onto that factor realizes the
    identification explicitly.
    """
    _check_family(family, u)
    indices = tuple(sorted(family.keys(), key=repr))
    point = u.point
    p_at = indices.index(point)
    factor = family[point]

    # one canonical representative per class: the member at `point` decides,
    # all other coordinates take their structure's default element
    classes = []
    iso = {}
    for e in factor.universe:
        rep = tuple(
            e if k == p_at else family[i].default_element()
            for k, i in enumerate(indices)
        )
        cls = UClass(rep)
        classes.append(cls)
        iso[cls] = e

    by_point_value = {iso[cls]: cls for cls in classes}

    rel_names = set()
    for st in family.values():
        rel_names |= set(st.relations.keys())
    relations = {}
    for name in rel_names:
        arities = {
            len(next(iter(st.relations[name])))
            for st in family.values()
            if name in st.relations and st.relations[name]
        }
        if len(arities) > 1:
            raise ValidationError("relation %r has mixed arities across the family" % name)
        arity = arities.pop() if arities else 1
        tuples = []
        for combo in product(classes, repeat=arity):
            deciders = frozenset(
                i
                for k, i in enumerate(indices)
                if name in family[i].relations
                and tuple(c.rep[k] for c in combo) in family[i].relations[name]
            )
            if deciders in u.sets:
                tuples.append(tuple(combo))
        relations[name] = tuples

    const_names = set()
    for st in family.values():
        const_names |= set(st.constants.keys())
    constants = {}
    for name in const_names:
        if not all(name in st.constants for st in family.values()):
            raise ValidationError("constant %r missing from part of the family" % name)
        constants[name] = by_point_value[factor.constants[name]]

    structure = Structure(tuple(classes), relations, constants)
    return Ultraproduct(structure, indices, point, MappingProxyType(iso))


# ---------------------------------------------------------------------------
# the fundamental lemma, verified


@dataclass(frozen=True)
class LosVerdict:
    """Both sides of the fundamental lemma for one instance."""

    lhs: bool  # truth in the ultraproduct
    rhs: bool  # truth along the ultrafilter
    #: for existential statements true along u: the completed witness choice
    witness: Optional[dict]

    @property
    def agree(self) -> bool:
        return self.lhs == self.rhs


def existential_witness(
    u: FiniteUltrafilter,
    family: StructureFamily,
    f: Exists,
    choices: Mapping[str, IndexedChoice],
) -> dict:
    """A per-index witness for an existential statement true along u.

    On the deciding coalition W each index picks its least satisfying
    element; outside W the default element completes the choice (which
    element is immaterial).  The completed choice makes the body true
    along u; that is re-checked here.
    """
    w = truth_set(family, f, dict(choices))
    if w not in u.sets:
        raise ValidationError("witness requested for a statement false along u")
    witness: dict = {}
    for i, st in family.items():
        witness[i] = st.default_element()
        if i in w:
            env = {name: ch[i] for name, ch in choices.items()}
            for e in st.universe:
                if evaluate(st, f.body, {**env, f.var: e}):
                    witness[i] = e
                    break
    extended = {**dict(choices), f.var: witness}
    if not holds_along(u, family, f.body, extended):
        raise PropertyViolationError("completed witness fails the body along u")
    return witness


def los_verify(
    family: StructureFamily,
    u: FiniteUltrafilter,
    f: Formula,
    choices: Mapping[str, IndexedChoice] = (),
) -> LosVerdict:
    """Fundamental lemma, both routes: quotient truth vs truth along u.

    ``lhs`` evaluates the formula in the ultraproduct with the choices
    mapped to their classes; ``rhs`` asks whether the truth set is
    efficacious.  Disagreement would falsify the lemma, so ``agree`` is
    the tested property.  For an existential formula true along u the
    constructive witness completion is exercised as well.
    """
    choices = dict(choices)
    _check_family(family, u)
    _check_choices(family, f, choices)
    up = ultraproduct(family, u)
    env = {name: up.class_of(ch) for name, ch in choices.items()}
    lhs = evaluate(up.structure, f, env)
    rhs = holds_along(u, family, f, choices)
    witness = None
    if isinstance(f, Exists) and rhs:
        witness = existential_witness(u, family, f, choices)
    return LosVerdict(lhs, rhs, witness)
