"""Interval bases, representation counts, diagonal building and validation."""

import pytest

from uflab import additive as ad
from uflab.errors import ValidationError


def half_interval_family(points):
    return ad.IntervalBasisFamily({m: range(0, -(-m // 2) + 1) for m in points})


class TestRepCounts:
    def test_ordered_pairs(self):
        assert ad.rep_count({0, 1}, 1) == 2
        assert ad.rep_count({0, 1}, 2) == 1
        assert ad.rep_count({0, 1}, 3) == 0

    def test_s_max(self):
        assert ad.s_max({0, 1, 2}, 4) == 3  # n = 2: 0+2, 1+1, 2+0

    def test_profile(self):
        prof = ad.RepProfile.of({0, 1, 2}, 4)
        assert prof.counts == (1, 2, 3, 2, 1)
        assert prof.s == 3


class TestIntervalBasis:
    def test_examples(self):
        assert ad.is_interval_basis({0, 1, 2}, 4)
        assert not ad.is_interval_basis({0, 1}, 3)  # max sum is 2
        assert ad.is_interval_basis(range(6), 5)

    def test_elements_must_fit(self):
        assert not ad.is_interval_basis({0, 9}, 4)

    def test_family_validates_at_load(self):
        with pytest.raises(ValidationError):
            ad.IntervalBasisFamily({4: [0, 1]})
        fam = half_interval_family((4, 8))
        assert fam.sample == (4, 8)


class TestBuildDiagonal:
    def test_shared_pattern_family(self):
        # every sample member agrees on [0, ceil(m/2)]; at horizon 8 the
        # survivors are [0..4] (witnessed by B_8) and [0..8] (B_16, B_32)
        # and the lexicographically-least tie-break picks [0..4]
        fam = half_interval_family((4, 8, 16, 32))
        res = ad.build_diagonal(fam, 8)
        assert sorted(res.d) == [0, 1, 2, 3, 4]
        assert res.n_prime == 8
        report = ad.validate_diagonal(fam, res)
        assert report.ok
        sums = {x + y for x in res.d for y in res.d}
        assert all(n in sums for n in range(9))

    def test_single_member_family(self):
        basis = [0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 16]
        fam = ad.IntervalBasisFamily({16: basis})
        res = ad.build_diagonal(fam, 8, early_count=1)
        assert res.d == frozenset(basis) & frozenset(range(9))
        assert ad.validate_diagonal(fam, res).ok

    def test_thin_sample_fails_with_depth(self):
        fam = ad.IntervalBasisFamily({16: range(0, 9)})
        with pytest.raises(ad.DiagonalBuildError) as err:
            ad.build_diagonal(fam, 8)  # early phase needs two witnesses
        assert err.value.depth == 0

    def test_full_interval_family(self):
        fam = ad.IntervalBasisFamily({m: range(m + 1) for m in (8, 16, 32)})
        res = ad.build_diagonal(fam, 8)
        assert sorted(res.d) == list(range(9))
        assert ad.validate_diagonal(fam, res).ok

    def test_branching_prefixes(self):
        # two genuinely different basis shapes: plain prefixes [0, m/2] and
        # bases omitting 2 (legal since 2 = 1+1); both branches survive the
        # whole search and the validator is the oracle for the one the
        # tie-break selects
        bases = {}
        for m in (8, 32):
            bases[m] = list(range(0, m // 2 + 1))
        for m in (16, 64):
            bases[m] = [0, 1] + list(range(3, m // 2 + 2))
        fam = ad.IntervalBasisFamily(bases)
        res = ad.build_diagonal(fam, 8)
        assert 2 not in res.d  # the omit-2 branch sorts first
        assert ad.validate_diagonal(fam, res).ok

    def test_representation_bound_inherited(self):
        fam = half_interval_family((4, 8, 16, 32, 64))
        res = ad.build_diagonal(fam, 16)
        assert ad.s_max(res.d, res.n_prime) <= fam.s_bound()


class TestValidatorIndependence:
    def test_tampered_diagonal_rejected(self):
        fam = half_interval_family((4, 8, 16, 32))
        res = ad.build_diagonal(fam, 8)
        tampered = ad.DiagonalResult(
            res.d | {7}, res.horizon, res.n_prime, res.witnesses
        )
        report = ad.validate_diagonal(fam, tampered)
        assert not report.ok
        assert report.failures

    def test_tampered_witnesses_rejected(self):
        fam = half_interval_family((4, 8, 16, 32))
        res = ad.build_diagonal(fam, 8)
        fake = tuple(w + (999,) for w in res.witnesses)
        report = ad.validate_diagonal(
            fam, ad.DiagonalResult(res.d, res.horizon, res.n_prime, fake)
        )
        assert not report.ok

    def test_json_round_trip(self):
        fam = half_interval_family((4, 8, 16, 32))
        res = ad.build_diagonal(fam, 8)
        doc = res.to_json_dict()
        again = ad.DiagonalResult(
            frozenset(doc["d"]),
            doc["horizon"],
            doc["n_prime"],
            tuple(tuple(w) for w in doc["witnesses"]),
        )
        assert ad.validate_diagonal(fam, again).ok
