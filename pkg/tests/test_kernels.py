"""Kernel backends: mutual agreement and agreement with the direct checkers."""

import random

import numpy as np
import pytest

from uflab import coalitions as co
from uflab import kernels
from uflab.kernels import _fallback


def test_backend_reported():
    assert kernels.BACKEND in {"cython", "numpy-fallback"}


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_backends_agree(n):
    backends = kernels.available_backends()
    reference = _fallback.classify_families(n)
    for name, classify in backends.items():
        assert np.array_equal(classify(n), reference), name


@pytest.mark.parametrize("n", [1, 2])
def test_flags_match_direct_checks_exhaustively(n):
    flags = kernels.classify_families(n)
    for fam in range(len(flags)):
        vs = co.VotingSystem(co.Assembly(n), (k for k in range(1 << n) if fam >> k & 1))
        expected = 0
        for name, bit in (
            ("C1", kernels.FLAG_C1),
            ("C2", kernels.FLAG_C2),
            ("C3", kernels.FLAG_C3),
            ("U1", kernels.FLAG_U1),
            ("U2", kernels.FLAG_U2),
        ):
            if co.check_condition(vs, name):
                expected |= bit
        if vs.efficacious and 0 not in vs.efficacious:
            expected |= kernels.FLAG_PROPER
        assert flags[fam] == expected, fam


@pytest.mark.parametrize("n", [3, 4])
def test_flags_match_direct_checks_sampled(n):
    flags = kernels.classify_families(n)
    rng = random.Random(451)
    for fam in rng.sample(range(len(flags)), min(300, len(flags))):
        vs = co.VotingSystem(co.Assembly(n), (k for k in range(1 << n) if fam >> k & 1))
        for name, bit in (
            ("C1", kernels.FLAG_C1),
            ("C2", kernels.FLAG_C2),
            ("C3", kernels.FLAG_C3),
            ("U1", kernels.FLAG_U1),
            ("U2", kernels.FLAG_U2),
        ):
            assert bool(flags[fam] & bit) == co.check_condition(vs, name)


def test_guard():
    with pytest.raises(ValueError):
        kernels.classify_families(5)


def test_ultrafilter_flag_counts():
    # n principal ultrafilters on n members, via both condition routes
    for n in (1, 2, 3, 4):
        flags = kernels.classify_families(n)
        c123 = (flags & kernels.FLAG_C123) == kernels.FLAG_C123
        ultra = (flags & kernels.FLAG_ULTRA_U) == kernels.FLAG_ULTRA_U
        assert int(np.sum(c123)) == n
        assert np.array_equal(c123, ultra)
