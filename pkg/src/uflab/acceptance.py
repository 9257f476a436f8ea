"""The acceptance suites: every headline theorem, run end to end.

Each criterion is a function returning an :class:`AcceptanceResult`; the
CLI command ``uflab verify all`` and the test suite both drive the same
runners.  Where a criterion calls for an independent oracle (the Guilbaud
sweep, the golden election reports), the oracle lives here as standalone
code that does not share a code path with the implementation it checks.
"""

from __future__ import annotations

import importlib.resources
import json
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Optional

import numpy as np

from . import additive, banach, fintop, kernels, los, setlimits
from .coalitions import (
    check_condition,
    enumerate_systems,
    find_dictator,
    guilbaud_verify,
    incoherence_witness,
    make_fano,
    make_majority,
    weight_representable,
)
from .filters import FiniteFilter, principal
from .profiles import (
    LABEL_TABLE,
    Profile,
    Ranking,
    coherence_theorem_check,
    cycle_probability,
    run_election,
)

DEFAULT_SEED = 20050131


@dataclass(frozen=True)
class AcceptanceResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float
    budget_seconds: Optional[float] = None

    @property
    def within_budget(self) -> bool:
        return self.budget_seconds is None or self.seconds < self.budget_seconds

    @property
    def ok(self) -> bool:
        return self.passed and self.within_budget


def _timed(fn: Callable[[], tuple[bool, str]]) -> tuple[bool, str, float]:
    start = time.perf_counter()
    passed, detail = fn()
    return passed, detail, time.perf_counter() - start


# -- 1 ----------------------------------------------------------------------


def criterion_1_equivalence() -> AcceptanceResult:
    """C1+C2+C3 coincides with the U-style ultrafilter definition, for
    every coalition family on up to 4 members."""

    def run():
        counts = []
        for n in range(1, 5):
            flags = kernels.classify_families(n)
            c123 = (flags & kernels.FLAG_C123) == kernels.FLAG_C123
            ultra_u = (flags & kernels.FLAG_ULTRA_U) == kernels.FLAG_ULTRA_U
            mismatches = int(np.sum(c123 != ultra_u))
            if mismatches:
                return False, "n=%d has %d discrepancies" % (n, mismatches)
            counts.append(int(np.sum(c123)))
        return True, "families swept: %s; ultrafilter counts %s" % (
            [2 ** (2**n) for n in range(1, 5)],
            counts,
        )

    passed, detail, secs = _timed(run)
    return AcceptanceResult(1, "equivalence C1C2C3 <=> U1U2", passed, detail, secs, 60.0)


# -- 2 ----------------------------------------------------------------------


def _oracle_guilbaud_count(n: int) -> tuple[int, bool]:
    """Independent brute-force sweep: literal condition definitions over all
    2^(2^n) families; returns (count of C1+C2+C3 systems, all dictatorial)."""
    m = 1 << n
    full = m - 1
    count = 0
    all_dictatorial = True
    for fam in range(1 << m):
        member = [(fam >> k) & 1 for k in range(m)]
        if not all(member[k] != member[full ^ k] for k in range(m)):
            continue
        if not all(
            not member[k] or member[l]
            for k in range(m)
            for l in range(m)
            if k & l == k
        ):
            continue
        if not all(
            member[k & l] for k in range(m) for l in range(m) if member[k] and member[l]
        ):
            continue
        count += 1
        dictators = [
            d
            for d in range(n)
            if all(member[k] == bool(k >> d & 1) for k in range(m))
        ]
        if len(dictators) != 1:
            all_dictatorial = False
    return count, all_dictatorial


def criterion_2_guilbaud() -> AcceptanceResult:
    """Every C1+C2+C3 system on up to 4 members is dictatorial with a
    singleton efficacious intersection; counts match the oracle."""

    def run():
        details = []
        for n in range(1, 5):
            rep = guilbaud_verify(n, report=True)
            oracle_count, oracle_dict = _oracle_guilbaud_count(n)
            if not (rep.ok and oracle_dict and rep.system_count == oracle_count == n):
                return False, "n=%d: report %r vs oracle (%d, %r)" % (
                    n,
                    rep,
                    oracle_count,
                    oracle_dict,
                )
            details.append("%d:%d" % (n, rep.system_count))
        return True, "system counts " + " ".join(details)

    passed, detail, secs = _timed(run)
    return AcceptanceResult(2, "Guilbaud dictatorship", passed, detail, secs)


# -- 3 ----------------------------------------------------------------------


def criterion_3_probability() -> AcceptanceResult:
    """The three-voter cycle probability is exactly 1/18."""

    def run():
        value = cycle_probability(3)
        ok = value == Fraction(1, 18) and value == Fraction(12, 216)
        return ok, "P = %s" % value

    passed, detail, secs = _timed(run)
    return AcceptanceResult(3, "cycle probability 1/18", passed, detail, secs, 1.0)


# -- 4 ----------------------------------------------------------------------


def load_packaged_json(kind: str, name: str) -> dict:
    text = importlib.resources.files("uflab").joinpath(kind, name).read_text()
    return json.loads(text)


def packaged_bytes(kind: str, name: str) -> bytes:
    return importlib.resources.files("uflab").joinpath(kind, name).read_bytes()


def json_bytes(doc) -> bytes:
    """The canonical byte rendering used for golden comparisons."""
    return (json.dumps(doc, indent=2, sort_keys=True) + "\n").encode()


def criterion_4_historical() -> AcceptanceResult:
    """Both historical 60-voter elections reproduce the reported winners,
    tallies and cycle, byte-identical to the golden reports."""

    def run():
        ex1 = Profile.from_json_dict(load_packaged_json("data", "condorcet1.json"))
        ex2 = Profile.from_json_dict(load_packaged_json("data", "condorcet2.json"))

        plur = run_election(ex1, "plurality")
        two = run_election(ex1, "two_round")
        pair = run_election(ex1, "pairwise")
        if not (
            plur.winner == "A"
            and plur.detail["first_round"]["A"] == 23
            and two.winner == "B"
            and two.detail["runoff"]["B"] == 35
            and pair.winner == "C"
            and pair.detail["ranking"] == ["C", "B", "A"]
            and pair.detail["tallies"]["B>A"] == 35
            and pair.detail["tallies"]["C>B"] == 41
            and pair.detail["tallies"]["C>A"] == 37
        ):
            return False, "example 1 deviates from the reported outcome"

        pair2 = run_election(ex2, "pairwise")
        if not (
            pair2.winner is None
            and pair2.detail["cycle"] == ["A", "B", "C"]
            and pair2.detail["tallies"]["A>B"] == 33
            and pair2.detail["tallies"]["B>C"] == 42
            and pair2.detail["tallies"]["C>A"] == 35
        ):
            return False, "example 2 deviates from the reported cycle"

        goldens = [
            ("condorcet1_plurality.json", plur),
            ("condorcet1_two_round.json", two),
            ("condorcet1_pairwise.json", pair),
            ("condorcet2_pairwise.json", pair2),
        ]
        for name, outcome in goldens:
            if json_bytes(outcome.to_json_dict()) != packaged_bytes("golden", name):
                return False, "golden file %s is not byte-identical" % name
        return True, "winners A/B/C, tallies 35-41-37 and the 33-42-35 cycle"

    passed, detail, secs = _timed(run)
    return AcceptanceResult(4, "historical elections golden", passed, detail, secs)


# -- 5 ----------------------------------------------------------------------


def profile_from_labels(labels: list[int]) -> Profile:
    """Three-candidate profile whose voters pick the given Z/6 labels."""
    rankings = [Ranking(LABEL_TABLE[lab]) for lab in labels]
    return Profile(("a", "b", "c"), rankings)


def criterion_5_separation() -> AcceptanceResult:
    """The two five-voter profiles separate (T) from (S) and (V) from (T)
    under simple majority."""

    def run():
        m5 = make_majority(5)
        rep1 = coherence_theorem_check(profile_from_labels([1, 1, 1, 3, 5]), m5)
        rep2 = coherence_theorem_check(profile_from_labels([1, 2, 3, 4, 5]), m5)
        ok1 = rep1.t and not rep1.s
        ok2 = rep2.v and not rep2.t
        return ok1 and ok2, "profile 1: %s; profile 2: %s" % (rep1, rep2)

    passed, detail, secs = _timed(run)
    return AcceptanceResult(5, "(T) vs (S) and (V) vs (T) separation", passed, detail, secs)


# -- 6 ----------------------------------------------------------------------


def criterion_6_main_theorem() -> AcceptanceResult:
    """(V) <=> acyclic collective relation, plus S => T => V, exhaustively
    over all three-candidate profiles with up to 4 voters and every C1+C2
    system of matching size."""

    def run():
        checked = 0
        for voters in range(1, 5):
            systems = list(enumerate_systems(voters, {"C1", "C2"}))
            for labels in product(range(1, 7), repeat=voters):
                prof = profile_from_labels(list(labels))
                for vs in systems:
                    rep = coherence_theorem_check(prof, vs)
                    if not rep.chain_ok:
                        return False, "violated at labels %s, system %r" % (
                            labels,
                            vs,
                        )
                    checked += 1
        return True, "%d (profile, system) pairs, zero violations" % checked

    passed, detail, secs = _timed(run)
    return AcceptanceResult(6, "(V) <=> coherent, exhaustive", passed, detail, secs, 300.0)


# -- 7 ----------------------------------------------------------------------


def criterion_7_fano() -> AcceptanceResult:
    """The 7-point plane system: C1 and C2 hold, C3 fails, no dictator,
    and no weighting reproduces it (exact Fourier-Motzkin)."""

    def run():
        vs = make_fano()
        ok = (
            check_condition(vs, "C1")
            and check_condition(vs, "C2")
            and not check_condition(vs, "C3")
            and find_dictator(vs) is None
            and weight_representable(vs) is None
            and incoherence_witness(vs) is not None
        )
        return ok, "|E| = %d of %d coalitions" % (len(vs.efficacious), 1 << 7)

    passed, detail, secs = _timed(run)
    return AcceptanceResult(7, "Fano plane counterexample", passed, detail, secs)


# -- 8 ----------------------------------------------------------------------


def criterion_8_los(seed: int = DEFAULT_SEED) -> AcceptanceResult:
    """200 seeded random instances agree between ultraproduct truth and
    truth along the ultrafilter; transfer holds on 50 constant families."""

    def run():
        rng = random.Random(seed)
        for k in range(200):
            family, u, f, choices = los.random_instance(rng)
            verdict = los.los_verify(family, u, f, choices)
            if not verdict.agree:
                return False, "disagreement at instance %d" % k

        for k in range(50):
            st = los.randgen.random_structure(rng)
            body = los.randgen.random_formula(rng, ("x", "y"), rng.randint(1, 3))
            sentence = los.Exists("x", los.Exists("y", body))
            size = rng.randint(1, 3)
            family = {i: st for i in range(size)}
            u = principal(range(size), rng.randrange(size))
            verdict = los.los_verify(family, u, sentence, {})
            if not (verdict.agree and verdict.lhs == los.evaluate(st, sentence)):
                return False, "transfer failed at sentence %d" % k
        return True, "200/200 agreements, 50/50 transfers (seed %d)" % seed

    passed, detail, secs = _timed(run)
    return AcceptanceResult(8, "fundamental lemma suite", passed, detail, secs)


# -- 9 ----------------------------------------------------------------------


def _all_filters(ground: frozenset) -> list[FiniteFilter]:
    """Every filter on a finite ground set (all are principal)."""
    items = sorted(ground, key=repr)
    out = []
    for mask in range(1, 1 << len(items)):
        kernel = frozenset(items[k] for k in range(len(items)) if mask >> k & 1)
        out.append(FiniteFilter.generated(ground, [kernel]))
    return out


def criterion_9_setlimits() -> AcceptanceResult:
    """Exhaustive check of the limit formulas on small families: primal and
    dual forms agree, membership characterizations hold, refinement gives
    the four-term chain, ultrafilters collapse the pair, and the bracket
    lemma I[F, L] in U holds for every finite F."""

    def run():
        universe = frozenset(range(4))
        ground = frozenset(range(3))
        filters = _all_filters(ground)
        ultras = [principal(ground, x) for x in sorted(ground)]
        universe_subsets = list(setlimits._subsets_of(universe))
        families = 0
        for assignment in product(universe_subsets, repeat=len(ground)):
            fam = setlimits.SetFamily(universe, dict(zip(sorted(ground), assignment)))
            pairs = {}
            for f in filters:
                # set_limits itself cross-checks primal, dual and membership
                pairs[f] = setlimits.set_limits(fam, f)
            for f in filters:
                for g in filters:
                    if f.sets <= g.sets:
                        pf, pg = pairs[f], pairs[g]
                        if not (
                            pf.liminf <= pg.liminf
                            and pg.liminf <= pg.limsup
                            and pg.limsup <= pf.limsup
                        ):
                            return False, "chain inclusion failed"
            for u in ultras:
                if pairs[u].lim is None:
                    return False, "ultrafilter limit did not collapse"
                if not setlimits.limit_lemma_check(fam, u):
                    return False, "bracket lemma failed"
                if not setlimits.theorem_2_5_check(fam, u):
                    return False, "limit is not a diagonal at threshold 1"
            families += 1
        return True, "%d families x %d filters" % (families, len(filters))

    passed, detail, secs = _timed(run)
    return AcceptanceResult(9, "set limits along filters", passed, detail, secs)


# -- 10 ---------------------------------------------------------------------


def criterion_10_additive() -> AcceptanceResult:
    """The half-interval sample yields a diagonal prefix at horizon 16 that
    is a basis with the sample's representation bound; the independent
    validator confirms every claim."""

    def run():
        fam = additive.IntervalBasisFamily(
            {m: range(0, -(-m // 2) + 1) for m in (4, 8, 16, 32, 64)}
        )
        result = additive.build_diagonal(fam, 16)
        report = additive.validate_diagonal(fam, result)
        sums = {x + y for x in result.d for y in result.d}
        coverage = all(n in sums for n in range(17))
        bound = additive.s_max(result.d, 16) <= max(
            additive.s_max(b, m) for m, b in fam.bases.items()
        )
        ok = report.ok and coverage and bound and result.n_prime == 16
        return ok, "D = %s, s(D) = %d <= %d" % (
            sorted(result.d),
            report.s_d,
            report.s_bound,
        )

    passed, detail, secs = _timed(run)
    return AcceptanceResult(10, "interval-basis diagonal", passed, detail, secs)


# -- 11 ---------------------------------------------------------------------


def criterion_11_topology() -> AcceptanceResult:
    """Topology and preorder counts agree (1, 4, 29), both round-trips are
    identities up to 3 points, and the normality characterization matches
    direct separation on all 29 three-point topologies."""

    def run():
        expected = {1: 1, 2: 4, 3: 29}
        for k, want in expected.items():
            cc = fintop.count_correspondence(k)
            if not (cc.topologies == cc.preorders == want):
                return False, "counts at k=%d: %r" % (k, cc)
        for k in (1, 2, 3):
            for topo in fintop.enumerate_topologies(k):
                if fintop.topo_of(fintop.nasse_of(topo)) != topo:
                    return False, "topology round-trip failed at k=%d" % k
            for pre in fintop.enumerate_preorders(k):
                if fintop.nasse_of(fintop.topo_of(pre)) != pre:
                    return False, "preorder round-trip failed at k=%d" % k
        reports = [fintop.normality_check(t) for t in fintop.enumerate_topologies(3)]
        if not all(r.agree and r.agree_ed for r in reports):
            return False, "normality characterization disagreed"
        normal = sum(1 for r in reports if r.normal_direct)
        return True, "counts 1/4/29; %d of 29 three-point spaces normal" % normal

    passed, detail, secs = _timed(run)
    return AcceptanceResult(11, "topologies <=> preorders", passed, detail, secs)


# -- 12 ---------------------------------------------------------------------


def criterion_12_banach() -> AcceptanceResult:
    """All five generalized-limit axioms hold exactly on declared-tail
    rational sequences; the alternating sequence gets limit 1/2."""

    def run():
        alternating = banach.SequenceWindow([0, 1, 0, 1], banach.Tail.periodic([0, 1]))
        ones = banach.SequenceWindow([1, 1, 1], banach.Tail.constant(1))
        decaying = banach.SequenceWindow(
            [Fraction(1, k) for k in range(1, 9)], banach.Tail.constant(0)
        )
        period3 = banach.SequenceWindow(
            [2, 0, 1], banach.Tail.periodic([2, 0, 1])
        )
        report = banach.banach_axioms_check([alternating, ones, decaying, period3])
        est = banach.generalized_limit_estimate(alternating)
        ok = (
            report.all_pass
            and est.value == Fraction(1, 2)
            and est.tolerance == 0
        )
        failing = [c.name for c in report.checks if not c.passed]
        detail = "alternating -> %s; %s" % (
            est.value,
            "all axioms exact" if not failing else "failing: %s" % failing,
        )
        return ok, detail

    passed, detail, secs = _timed(run)
    return AcceptanceResult(12, "generalized-limit axioms", passed, detail, secs)


ALL_CRITERIA: tuple[Callable[..., AcceptanceResult], ...] = (
    criterion_1_equivalence,
    criterion_2_guilbaud,
    criterion_3_probability,
    criterion_4_historical,
    criterion_5_separation,
    criterion_6_main_theorem,
    criterion_7_fano,
    criterion_8_los,
    criterion_9_setlimits,
    criterion_10_additive,
    criterion_11_topology,
    criterion_12_banach,
)


def run_all(seed: int = DEFAULT_SEED) -> list[AcceptanceResult]:
    """Run every acceptance suite in order (fixed output order)."""
    results = []
    for fn in ALL_CRITERIA:
        if fn is criterion_8_los:
            results.append(fn(seed))
        else:
            results.append(fn())
    return results
