"""First-order syntax and semantics, ultraproducts, fundamental lemma."""

import random

import pytest

from uflab import los
from uflab.filters import principal
from uflab.los.syntax import Eq, Exists, Not, Or, Rel

ORDER3 = los.Structure((0, 1, 2), {"L": [(0, 1), (0, 2), (1, 2)]})


class TestParser:
    def test_forall_desugars(self):
        f = los.parse_formula("forall x. not R(x,x)")
        assert f == Not(Exists("x", Not(Not(Rel("R", ("x", "x"))))))

    def test_equality_atom(self):
        assert los.parse_formula("x = y") == Eq("x", "y")

    def test_and_desugars(self):
        f = los.parse_formula("(P(x) and Q(y))")
        assert f == Not(Or(Not(Rel("P", ("x",))), Not(Rel("Q", ("y",)))))

    def test_implies_desugars(self):
        f = los.parse_formula("(x = y implies R(x,y))")
        assert f == Or(Not(Eq("x", "y")), Rel("R", ("x", "y")))

    def test_error_carries_position(self):
        with pytest.raises(los.ParseError) as err:
            los.parse_formula("(p or")
        assert err.value.line == 1 and err.value.col == 4

    def test_trailing_input(self):
        with pytest.raises(los.ParseError):
            los.parse_formula("x = y y")

    def test_keywords_not_terms(self):
        with pytest.raises(los.ParseError):
            los.parse_formula("exists not. x = y")

    def test_print_parse_round_trip_corpus(self):
        corpus = [
            "x = y",
            "not x = y",
            "(x = y or R(x,y))",
            "exists z. (R(x,z) and R(z,y))",
            "forall v. (P(v) implies exists w. R(v,w))",
            "not (P(x) or not P(x))",
        ]
        rng = random.Random(8)
        for _ in range(44):
            corpus.append(
                los.print_formula(los.randgen.random_formula(rng, ("x", "y"), 5))
            )
        assert len(corpus) == 50
        for text in corpus:
            ast = los.parse_formula(text)
            assert los.parse_formula(los.print_formula(ast)) == ast

    def test_free_vars(self):
        f = los.parse_formula("exists z. (R(x,z) and R(z,y))")
        assert los.free_vars(f) == {"x", "y"}


class TestEvaluate:
    def test_equality_of_same_element(self):
        assert los.evaluate(ORDER3, Eq("x", "y"), {"x": 1, "y": 1})
        assert not los.evaluate(ORDER3, Eq("x", "y"), {"x": 1, "y": 2})

    def test_exists_over_empty_relation(self):
        st = los.Structure((0, 1), {"R": []})
        assert not los.evaluate(st, los.parse_formula("exists z. R(z,z)"), {})

    def test_two_step_reachability_hand_table(self):
        f = los.parse_formula("exists z. (L(x,z) and L(z,y))")
        table = {
            (x, y): los.evaluate(ORDER3, f, {"x": x, "y": y})
            for x in range(3)
            for y in range(3)
        }
        assert [pair for pair, value in sorted(table.items()) if value] == [(0, 2)]

    def test_unbound_name(self):
        with pytest.raises(Exception):
            los.evaluate(ORDER3, Eq("x", "y"), {"x": 0})

    def test_constants_resolve(self):
        st = los.Structure((0, 1), {"R": [(0, 1)]}, {"bottom": 0})
        assert los.evaluate(st, los.parse_formula("exists z. R(bottom,z)"), {})

    def test_desugaring_laws(self):
        # And and Forall mean what they should, by brute comparison
        rng = random.Random(17)
        for _ in range(100):
            st = los.randgen.random_structure(rng, max_universe=4)
            p = los.randgen.random_formula(rng, ("x",), 3)
            q = los.randgen.random_formula(rng, ("x",), 3)
            for e in st.universe:
                env = {"x": e}
                conj = Not(Or(Not(p), Not(q)))
                assert los.evaluate(st, conj, env) == (
                    los.evaluate(st, p, env) and los.evaluate(st, q, env)
                )
            forall = Not(Exists("x", Not(p)))
            assert los.evaluate(st, forall, {}) == all(
                los.evaluate(st, p, {"x": e}) for e in st.universe
            )


class TestTruthSets:
    def family(self):
        st2 = los.Structure((0, 1), {"L": [(0, 1)]})
        return {0: ORDER3, 1: ORDER3, 2: st2}

    def test_constant_family_valid_sentence(self):
        fam = {i: ORDER3 for i in range(3)}
        sentence = los.parse_formula("forall v. not L(v,v)")
        assert los.truth_set(fam, sentence, {}) == {0, 1, 2}

    def test_equality_truth_set(self):
        fam = self.family()
        choices = {"x": {0: 0, 1: 1, 2: 0}, "y": {0: 0, 1: 2, 2: 0}}
        assert los.truth_set(fam, Eq("x", "y"), choices) == {0, 2}

    def test_holds_along_principal_is_pointwise(self):
        fam = self.family()
        choices = {"x": {0: 0, 1: 1, 2: 0}, "y": {0: 1, 1: 2, 2: 1}}
        f = Rel("L", ("x", "y"))
        for i in range(3):
            u = principal(range(3), i)
            env = {v: ch[i] for v, ch in choices.items()}
            assert los.holds_along(u, fam, f, choices) == los.evaluate(
                fam[i], f, env
            )

    def test_negation_complements(self):
        fam = self.family()
        choices = {"x": {0: 0, 1: 1, 2: 0}, "y": {0: 1, 1: 2, 2: 1}}
        f = Rel("L", ("x", "y"))
        v_pos = los.truth_set(fam, f, choices)
        v_neg = los.truth_set(fam, Not(f), choices)
        assert v_pos | v_neg == {0, 1, 2} and not v_pos & v_neg

    def test_disjunction_is_union(self):
        fam = self.family()
        choices = {"x": {0: 0, 1: 2, 2: 1}, "y": {0: 1, 1: 2, 2: 1}}
        r = Rel("L", ("x", "y"))
        s = Eq("x", "y")
        assert los.truth_set(fam, Or(r, s), choices) == los.truth_set(
            fam, r, choices
        ) | los.truth_set(fam, s, choices)

    def test_u_equivalent_choices_agree(self):
        # changing a choice off the deciding point never changes the verdict
        fam = self.family()
        u = principal(range(3), 1)
        f = Rel("L", ("x", "y"))
        base = {"x": {0: 0, 1: 0, 2: 0}, "y": {0: 1, 1: 1, 2: 1}}
        verdict = los.holds_along(u, fam, f, base)
        for x2 in (0, 1):
            for y0 in (0, 1, 2):
                tweaked = {"x": {0: 0, 1: 0, 2: x2}, "y": {0: y0, 1: 1, 2: 1}}
                assert los.holds_along(u, fam, f, tweaked) == verdict

    def test_missing_choice_reported(self):
        with pytest.raises(Exception):
            los.truth_set(self.family(), Eq("x", "y"), {"x": {0: 0, 1: 0, 2: 0}})


class TestUltraproduct:
    def test_constant_family_isomorphic_to_factor(self):
        fam = {i: ORDER3 for i in range(3)}
        up = los.ultraproduct(fam, principal(range(3), 1))
        assert len(up.structure.universe) == 3
        # the isomorphism preserves the order relation
        iso = dict(up.iso)
        for c1 in up.structure.universe:
            for c2 in up.structure.universe:
                in_quotient = (c1, c2) in up.structure.relations["L"]
                in_factor = (iso[c1], iso[c2]) in ORDER3.relations["L"]
                assert in_quotient == in_factor

    def test_mixed_family_takes_deciding_factor(self):
        st2 = los.Structure((0, 1), {"L": [(0, 1)]})
        fam = {0: ORDER3, 1: st2}
        up = los.ultraproduct(fam, principal(range(2), 1))
        assert len(up.structure.universe) == len(st2.universe)

    def test_constants_map_through(self):
        st = los.Structure((0, 1), {"R": [(0, 1)]}, {"c": 1})
        fam = {0: st, 1: st}
        up = los.ultraproduct(fam, principal(range(2), 0))
        cls = up.structure.constants["c"]
        assert up.iso[cls] == 1


class TestLosVerify:
    def test_transfer_on_constant_family(self):
        fam = {i: ORDER3 for i in range(3)}
        sentence = los.parse_formula("forall v. not L(v,v)")
        for i in range(3):
            verdict = los.los_verify(fam, principal(range(3), i), sentence, {})
            assert verdict.agree and verdict.lhs == los.evaluate(ORDER3, sentence)

    def test_existential_witness(self):
        fam = {0: ORDER3, 1: ORDER3}
        u = principal(range(2), 0)
        f = los.parse_formula("exists z. z = x")
        choices = {"x": {0: 2, 1: 0}}
        verdict = los.los_verify(fam, u, f, choices)
        assert verdict.agree and verdict.lhs and verdict.rhs
        assert verdict.witness == {0: 2, 1: 0}

    def test_seeded_suite(self):
        rng = random.Random(424242)
        for _ in range(60):
            fam, u, f, choices = los.random_instance(rng)
            assert los.los_verify(fam, u, f, choices).agree

    def test_ground_mismatch(self):
        fam = {0: ORDER3}
        with pytest.raises(Exception):
            los.los_verify(fam, principal(range(2), 0), Eq("x", "x"), {"x": {0: 0}})
