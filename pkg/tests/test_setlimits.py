"""Set limits along filters: formulas, brackets, diagonals."""

import random
from itertools import combinations

import pytest

from uflab import filters as fl
from uflab import setlimits as sl
from uflab.errors import ValidationError

FAMILY = sl.SetFamily({0, 1, 2, 3}, {0: {0, 1}, 1: {1, 2}, 2: {0, 1, 3}})


def subsets(items):
    items = sorted(items)
    for r in range(len(items) + 1):
        for combo in combinations(items, r):
            yield frozenset(combo)


class TestIndexSet:
    def test_examples(self):
        const = sl.SetFamily({0, 1}, {i: {0} for i in range(3)})
        assert sl.index_set(const, 0) == {0, 1, 2}
        assert sl.index_set(const, 1) == frozenset()
        assert sl.index_set(FAMILY, 1) == {0, 1, 2}
        assert sl.index_set(FAMILY, 3) == {2}

    def test_outside_universe(self):
        with pytest.raises(ValidationError):
            sl.index_set(FAMILY, 9)


class TestSetLimits:
    def test_constant_family(self):
        const = sl.SetFamily({0, 1, 2}, {i: {0, 2} for i in range(3)})
        for spec in ({0}, {0, 1}, {0, 1, 2}):
            f = fl.FiniteFilter.generated({0, 1, 2}, [spec])
            pair = sl.set_limits(const, f)
            assert pair.lim == {0, 2}

    def test_ultrafilter_collapses(self):
        for x in range(3):
            pair = sl.set_limits(FAMILY, fl.principal({0, 1, 2}, x))
            assert pair.lim == FAMILY.sets[x]

    def test_non_ultra_example(self):
        f = fl.FiniteFilter.generated({0, 1, 2}, [{0, 2}])
        pair = sl.set_limits(FAMILY, f)
        assert pair.liminf == {0, 1}
        assert pair.limsup == {0, 1, 3}
        assert pair.lim is None

    def test_refinement_chain(self):
        coarse = fl.FiniteFilter.trivial({0, 1, 2})
        fine = fl.FiniteFilter.generated({0, 1, 2}, [{0, 1}])
        p_c = sl.set_limits(FAMILY, coarse)
        p_f = sl.set_limits(FAMILY, fine)
        assert p_c.liminf <= p_f.liminf <= p_f.limsup <= p_c.limsup

    def test_ground_mismatch(self):
        with pytest.raises(ValidationError):
            sl.set_limits(FAMILY, fl.FiniteFilter.trivial({7, 8}))

    def test_membership_characterizations_exhaustive(self):
        # |I| = 2, |E| = 3: every family against every filter; the primal,
        # dual and pointwise routes are compared inside set_limits
        universe = frozenset({0, 1, 2})
        ground = frozenset({0, 1})
        filters = [
            fl.FiniteFilter.generated(ground, [k]) for k in subsets(ground) if k
        ]
        for e0 in subsets(universe):
            for e1 in subsets(universe):
                fam = sl.SetFamily(universe, {0: e0, 1: e1})
                for f in filters:
                    pair = sl.set_limits(fam, f)
                    for x in universe:
                        assert (x in pair.liminf) == (sl.index_set(fam, x) in f.sets)

    def test_membership_characterizations_sampled_larger(self):
        # |E| = 6, |I| = 4 is too large to exhaust; sampled instead, against
        # every filter on the index set
        rng = random.Random(2024)
        universe = frozenset(range(6))
        ground = frozenset(range(4))
        filters = [
            fl.FiniteFilter.generated(ground, [k]) for k in subsets(ground) if k
        ]
        for _ in range(120):
            fam = sl.SetFamily(
                universe,
                {
                    i: frozenset(x for x in universe if rng.random() < 0.5)
                    for i in ground
                },
            )
            for f in filters:
                # set_limits itself asserts the primal, dual and pointwise
                # routes agree; this loop just drives it over the space
                pair = sl.set_limits(fam, f)
                g = fl.grille(f)
                for x in universe:
                    assert (x in pair.limsup) == (sl.index_set(fam, x) in g.sets)
                assert pair.liminf <= pair.limsup


class TestBracket:
    def test_empty_probe(self):
        assert sl.i_bracket(FAMILY, frozenset(), {0}) == {0, 1, 2}

    def test_full_probe_identifies_member(self):
        distinct = sl.SetFamily({0, 1, 2}, {0: {0}, 1: {0, 1}, 2: {2}})
        assert sl.i_bracket(distinct, {0, 1, 2}, {0, 1}) == {1}

    def test_decomposition_on_random_instances(self):
        # the identity is asserted inside i_bracket; drive it over noise
        rng = random.Random(5)
        universe = frozenset(range(5))
        for _ in range(200):
            fam = sl.SetFamily(
                universe,
                {
                    i: frozenset(x for x in universe if rng.random() < 0.5)
                    for i in range(3)
                },
            )
            probe = frozenset(x for x in universe if rng.random() < 0.5)
            m = frozenset(x for x in universe if rng.random() < 0.5)
            sl.i_bracket(fam, probe, m)


class TestLemmasAndDiagonals:
    def test_limit_lemma_all_principal(self):
        for x in range(3):
            assert sl.limit_lemma_check(FAMILY, fl.principal({0, 1, 2}, x))

    def test_constant_family_trivially(self):
        const = sl.SetFamily({0, 1}, {i: {1} for i in range(2)})
        u = fl.principal({0, 1}, 0)
        assert sl.limit_lemma_check(const, u)
        assert sl.theorem_2_5_check(const, u)

    def test_randomized_families(self):
        rng = random.Random(31)
        universe = frozenset(range(4))
        for _ in range(50):
            fam = sl.SetFamily(
                universe,
                {
                    i: frozenset(x for x in universe if rng.random() < 0.5)
                    for i in range(3)
                },
            )
            for x in range(3):
                u = fl.principal({0, 1, 2}, x)
                assert sl.limit_lemma_check(fam, u)
                assert sl.theorem_2_5_check(fam, u)

    def test_diagonal_threshold_counts_duplicates(self):
        fam = sl.SetFamily({0, 1}, {0: {0}, 1: {0}, 2: {1}})
        assert sl.is_diagonal_truncated({0}, fam, 2)
        assert not sl.is_diagonal_truncated({0}, fam, 3)

    def test_threshold_full_forces_constant(self):
        const = sl.SetFamily({0, 1}, {0: {1}, 1: {1}})
        assert sl.is_diagonal_truncated({1}, const, 2)
        mixed = sl.SetFamily({0, 1}, {0: {1}, 1: {0}})
        assert not sl.is_diagonal_truncated({1}, mixed, 2)

    def test_bad_threshold(self):
        with pytest.raises(ValidationError):
            sl.is_diagonal_truncated({0}, FAMILY, 0)
