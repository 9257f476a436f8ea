"""Command-line interface.

One entry point (``uflab``) with a subcommand per module.  Every
subcommand takes ``--json`` for machine-readable output (canonical,
byte-stable rendering) next to the default human form.

Exit codes: 0 for success and true verdicts, 1 when a mathematical
property that should be a theorem fails (so CI can tell "theorem
violated" from "bad input"), 2 for usage errors, unreadable or malformed
files, and resource-guard refusals.
"""

from __future__ import annotations

import json
import os
import random
import sys
from fractions import Fraction
from functools import wraps

import click

from . import acceptance, additive, banach, fintop, los, setlimits
from . import coalitions as co
from . import filters as fl
from . import profiles as pr
from .errors import (
    PropertyViolationError,
    ResourceGuardError,
    UflabError,
    ValidationError,
)


def _color() -> bool:
    return sys.stdout.isatty() and not os.environ.get("NO_COLOR")


def echo_json(doc) -> None:
    click.echo(acceptance.json_bytes(doc), nl=False)


def echo_kv(doc, indent: int = 0) -> None:
    pad = "  " * indent
    for key, value in doc.items():
        if isinstance(value, dict):
            click.echo("%s%s:" % (pad, key))
            echo_kv(value, indent + 1)
        elif isinstance(value, list) and any(isinstance(v, dict) for v in value):
            click.echo("%s%s:" % (pad, key))
            for v in value:
                click.echo("%s  -" % pad)
                echo_kv(v, indent + 2)
        else:
            click.echo("%s%s: %s" % (pad, key, _human(value)))


def _human(value) -> str:
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, list):
        return "[%s]" % ", ".join(_human(v) for v in value)
    return str(value)


def emit(doc: dict, as_json: bool) -> None:
    if as_json:
        echo_json(doc)
    else:
        echo_kv(doc)


def fail_property(message: str) -> None:
    """Report a failed theorem check and exit with code 1."""
    click.secho(message, fg="red" if _color() else None, err=True)
    sys.exit(1)


def load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except FileNotFoundError:
        raise click.UsageError("file not found: %s" % path)
    except json.JSONDecodeError as exc:
        raise click.UsageError("malformed JSON in %s: %s" % (path, exc))
    except OSError as exc:
        raise click.UsageError("cannot read %s: %s" % (path, exc))


def guarded(fn):
    """Map package errors onto the documented exit codes."""

    @wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ResourceGuardError as exc:
            raise click.UsageError("refused (resource guard): %s" % exc)
        except ValidationError as exc:
            raise click.UsageError(str(exc))
        except los.ParseError as exc:
            raise click.UsageError("formula syntax error at %s" % exc)
        except PropertyViolationError as exc:
            fail_property("property violation: %s" % exc)
        except additive.DiagonalBuildError as exc:
            raise click.UsageError("diagonal construction failed: %s" % exc)

    return wrapper


def _coerce(token: str):
    try:
        return int(token)
    except (TypeError, ValueError):
        return token


def _coerce_keys(doc: dict) -> dict:
    return {_coerce(k): v for k, v in doc.items()}


def _parse_members(text: str) -> list:
    return [_coerce(t.strip()) for t in text.split(",") if t.strip() != ""]


def parse_filter_spec(spec: str, ground) -> fl.FiniteFilter:
    """``principal:<x>``, ``generators:<set>;<set>`` or ``trivial``."""
    if spec == "trivial":
        return fl.FiniteFilter.trivial(ground)
    if spec.startswith("principal:"):
        return fl.principal(ground, _coerce(spec.split(":", 1)[1]))
    if spec.startswith("generators:"):
        gens = [
            _parse_members(part)
            for part in spec.split(":", 1)[1].split(";")
            if part.strip()
        ]
        return fl.FiniteFilter.generated(ground, gens)
    raise click.UsageError(
        "filter spec must be 'trivial', 'principal:<x>' or 'generators:<set>;<set>'"
    )


def _json_flag(fn):
    return click.option("--json", "as_json", is_flag=True, help="machine-readable output")(fn)


@click.group()
def main():
    """Voting systems, ultrafilters, set limits and their verification suites."""


# ---------------------------------------------------------------------- vote


@main.group()
def vote():
    """Generalized voting systems on finite assemblies."""


def _load_system(path: str) -> co.VotingSystem:
    return co.VotingSystem.from_json_dict(load_json(path))


@vote.command("check")
@click.option("--system", "path", required=True, type=str, help="voting system JSON")
@click.option("--cond", "conds", multiple=True, type=click.Choice(co.CONDITIONS))
@_json_flag
@guarded
def vote_check(path, conds, as_json):
    """Check the coalition conditions of a voting system."""
    vs = _load_system(path)
    names = conds or co.CONDITIONS
    doc = {
        "n": vs.n,
        "efficacious_count": len(vs.efficacious),
        "conditions": {c: co.check_condition(vs, c) for c in names},
    }
    if not conds:
        doc["is_ultrafilter"] = co.is_ultrafilter(vs)
        doc["is_ultrafilter_u1u2"] = co.is_ultrafilter_u1u2(vs)
    emit(doc, as_json)
    if not conds and doc["is_ultrafilter"] != doc["is_ultrafilter_u1u2"]:
        fail_property("the two ultrafilter definitions disagreed")


@vote.command("dictator")
@click.option("--system", "path", required=True, type=str)
@_json_flag
@guarded
def vote_dictator(path, as_json):
    """Find the dictator of a voting system, if it has one."""
    vs = _load_system(path)
    emit({"n": vs.n, "dictator": co.find_dictator(vs)}, as_json)


@vote.command("weights")
@click.option("--system", "path", required=True, type=str)
@_json_flag
@guarded
def vote_weights(path, as_json):
    """Exact weight representation of a system, if one exists."""
    vs = _load_system(path)
    w = co.weight_representable(vs)
    emit(
        {
            "n": vs.n,
            "representable": w is not None,
            "weights": None if w is None else [str(x) for x in w.weights],
        },
        as_json,
    )


def fano_report() -> dict:
    vs = co.make_fano()
    witness = co.incoherence_witness(vs)
    w = co.weight_representable(vs)
    return {
        "n": vs.n,
        "efficacious_count": len(vs.efficacious),
        "lines": [list(line) for line in co.FANO_LINES],
        "conditions": {c: co.check_condition(vs, c) for c in ("C1", "C2", "C3")},
        "dictator": co.find_dictator(vs),
        "weights": None if w is None else [str(x) for x in w.weights],
        "incoherence_witness": {
            "k": list(witness[0].to_tuple()),
            "l": list(witness[1].to_tuple()),
            "intersection": list(witness[2].to_tuple()),
        },
    }


@vote.command("fano")
@_json_flag
@guarded
def vote_fano(as_json):
    """Report on the 7-point projective-plane counterexample."""
    emit(fano_report(), as_json)


@vote.command("guilbaud")
@click.option("--n", required=True, type=int)
@_json_flag
@guarded
def vote_guilbaud(n, as_json):
    """Sweep all C1+C2+C3 systems on n members for dictatorship."""
    rep = co.guilbaud_verify(n, report=True)
    doc = {
        "n": rep.n,
        "systems": rep.system_count,
        "all_dictatorial": rep.all_dictatorial,
        "intersections_are_singletons": rep.intersections_are_singletons,
    }
    if as_json:
        echo_json(doc)
    else:
        click.echo(
            "%d systems, %s"
            % (
                rep.system_count,
                "all dictatorial" if rep.all_dictatorial else "NOT all dictatorial",
            )
        )
    if not rep.ok:
        fail_property("Guilbaud verification failed at n=%d" % n)


# --------------------------------------------------------------------- elect


@main.group()
def elect():
    """Elections over preference profiles."""


def _load_profile(path: str) -> pr.Profile:
    return pr.Profile.from_json_dict(load_json(path))


@elect.command("run")
@click.option("--method", required=True, type=click.Choice(["plurality", "two_round", "pairwise"]))
@click.option("--profile", "path", required=True, type=str)
@_json_flag
@guarded
def elect_run(method, path, as_json):
    """Run an election method on a profile."""
    outcome = pr.run_election(_load_profile(path), method)
    emit(outcome.to_json_dict(), as_json)


@elect.command("tally")
@click.option("--profile", "path", required=True, type=str)
@_json_flag
@guarded
def elect_tally(path, as_json):
    """Pairwise tallies of a profile."""
    prof = _load_profile(path)
    tallies = pr.pairwise_tally(prof)
    names = prof.candidates
    emit(
        {
            "voters": prof.n,
            "tallies": {
                "%s>%s" % (names[x], names[y]): cnt
                for (x, y), cnt in sorted(tallies.items())
            },
        },
        as_json,
    )


@elect.command("cycles")
@click.option("--profile", "path", required=True, type=str)
@_json_flag
@guarded
def elect_cycles(path, as_json):
    """Find a majority cycle in a profile, if any."""
    prof = _load_profile(path)
    tallies = pr.pairwise_tally(prof)
    wins = frozenset((x, y) for (x, y), cnt in tallies.items() if 2 * cnt > prof.n)
    relation = pr.CollectiveRelation(prof.c, wins)
    cycle = pr.find_cycle(relation)
    emit(
        {
            "total_relation": relation.is_total_asymmetric(),
            "cycle": None if cycle is None else [prof.candidates[x] for x in cycle],
        },
        as_json,
    )


@elect.command("stv-conditions")
@click.option("--profile", "path", required=True, type=str)
@click.option("--chair", type=int, default=None, help="majority chair member")
@_json_flag
@guarded
def elect_stv(path, chair, as_json):
    """Conditions (S), (T), (V), Sen's restriction, and coherence."""
    prof = _load_profile(path)
    vs = pr.majority_for(prof, chair)
    rep = pr.coherence_theorem_check(prof, vs)
    doc = {
        "voters": prof.n,
        "chair": chair,
        "S": rep.s,
        "T": rep.t,
        "V": rep.v,
        "sen": pr.sen_condition(prof, (0, 1, 2)),
        "coherent": rep.coherent,
        "chain_ok": rep.chain_ok,
    }
    emit(doc, as_json)
    if not rep.chain_ok:
        fail_property("the S => T => V <=> coherent chain failed")


@elect.command("prob")
@click.option("--voters", required=True, type=int)
@_json_flag
@guarded
def elect_prob(voters, as_json):
    """Exact probability of a majority cycle with three candidates."""
    p = pr.cycle_probability(voters)
    emit(
        {
            "voters": voters,
            "probability": str(p),
            "cyclic_assignments": p.numerator * (6**voters // p.denominator) if p else 0,
            "total_assignments": 6**voters,
        },
        as_json,
    )


# --------------------------------------------------------------------- ultra


@main.group()
def ultra():
    """Filters and ultrafilters on finite index sets."""


@ultra.command("enumerate")
@click.option("--ground", required=True, type=str, help="comma-separated elements")
@_json_flag
@guarded
def ultra_enumerate(ground, as_json):
    """List every ultrafilter on the ground set (all principal)."""
    elements = _parse_members(ground)
    ultras = fl.enumerate_ultrafilters(elements)
    emit(
        {
            "ground": sorted(map(_human, elements)),
            "count": len(ultras),
            "ultrafilters": [
                {"point": u.point, "sets": len(u.sets)} for u in ultras
            ],
        },
        as_json,
    )


def _filter_from_doc(doc) -> fl.FiniteFilter:
    if not isinstance(doc, dict):
        raise click.UsageError("filter documents must be JSON objects")
    return fl.filter_from_json_dict(doc)


def _as_ultra(f: fl.FiniteFilter) -> fl.FiniteUltrafilter:
    if isinstance(f, fl.FiniteUltrafilter):
        return f
    return fl.FiniteUltrafilter(f.ground, f.sets)


@ultra.command("sum")
@click.option("--file", "path", required=True, type=str,
              help='JSON {"master": <filter>, "parts": {key: <filter>}}')
@_json_flag
@guarded
def ultra_sum(path, as_json):
    """Grimeisen's filtered sum of a family of ultrafilters."""
    doc = load_json(path)
    try:
        master = _as_ultra(_filter_from_doc(doc["master"]))
        parts_doc = doc["parts"]
    except (KeyError, TypeError):
        raise click.UsageError("sum document needs 'master' and 'parts'")
    parts = {}
    for key, part in parts_doc.items():
        u = _as_ultra(_filter_from_doc(part))
        parts[_coerce(key)] = (u.ground, u)
    result = fl.grimeisen_sum(master, parts)
    emit(
        {
            "ground": sorted(map(_human, result.ground)),
            "point": result.point,
            "sets": len(result.sets),
            "is_ultrafilter": result.is_ultrafilter(),
        },
        as_json,
    )


@ultra.command("product")
@click.option("--file", "path", required=True, type=str,
              help='JSON {"left": <filter>, "right": <filter>}')
@_json_flag
@guarded
def ultra_product(path, as_json):
    """Ordinal product of two ultrafilters (left by right)."""
    doc = load_json(path)
    try:
        left = _as_ultra(_filter_from_doc(doc["left"]))
        right = _as_ultra(_filter_from_doc(doc["right"]))
    except (KeyError, TypeError):
        raise click.UsageError("product document needs 'left' and 'right'")
    result = fl.ordinal_product(left, right)
    emit(
        {
            "ground_size": len(result.ground),
            "point": list(result.point),
            "sets": len(result.sets),
            "is_ultrafilter": result.is_ultrafilter(),
        },
        as_json,
    )


# ----------------------------------------------------------------------- los


@main.group("los")
def los_group():
    """First-order language, structures, and the fundamental lemma."""


@los_group.command("parse")
@click.option("--formula", required=True, type=str)
@_json_flag
@guarded
def los_parse(formula, as_json):
    """Parse a formula and show its desugared core form."""
    ast = los.parse_formula(formula)
    emit(
        {
            "core": los.print_formula(ast),
            "free_names": sorted(los.free_vars(ast)),
            "height": los.height(ast),
        },
        as_json,
    )


def _load_structure(doc) -> los.Structure:
    return los.Structure.from_json_dict(doc)


def _load_family(path: str) -> dict:
    doc = load_json(path)
    if isinstance(doc, dict) and "structures" in doc:
        doc = doc["structures"]
    if isinstance(doc, list):
        return {i: _load_structure(d) for i, d in enumerate(doc)}
    if isinstance(doc, dict):
        return {_coerce(k): _load_structure(d) for k, d in doc.items()}
    raise click.UsageError("structures file must hold a list or mapping")


@los_group.command("eval")
@click.option("--formula", required=True, type=str)
@click.option("--structure", "path", required=True, type=str)
@click.option("--env", "env_text", default="", help="comma list var=element")
@_json_flag
@guarded
def los_eval(formula, path, env_text, as_json):
    """Evaluate a formula in a single structure."""
    ast = los.parse_formula(formula)
    st = _load_structure(load_json(path))
    env = {}
    for item in env_text.split(","):
        if item.strip():
            var, _, val = item.partition("=")
            env[var.strip()] = _coerce(val.strip())
    emit({"value": los.evaluate(st, ast, env)}, as_json)


@los_group.command("check")
@click.option("--formula", required=True, type=str)
@click.option("--structures", "path", required=True, type=str)
@click.option("--ultra", "point", required=True, type=str, help="principal point")
@click.option("--choices", "choices_path", type=str, default=None)
@_json_flag
@guarded
def los_check(formula, path, point, choices_path, as_json):
    """Verify the fundamental lemma on one instance."""
    ast = los.parse_formula(formula)
    family = _load_family(path)
    u = fl.principal(family.keys(), _coerce(point))
    choices = {}
    if choices_path is not None:
        choices = {
            var: _coerce_keys(ch) for var, ch in load_json(choices_path).items()
        }
    verdict = los.los_verify(family, u, ast, choices)
    emit(
        {
            "ultraproduct_truth": verdict.lhs,
            "truth_along_ultrafilter": verdict.rhs,
            "agree": verdict.agree,
            "witness": verdict.witness,
        },
        as_json,
    )
    if not verdict.agree:
        fail_property("fundamental lemma violated on this instance")


# -------------------------------------------------------------------- setlim


@main.group()
def setlim():
    """Limits of set families along filters."""


def _load_setfamily(path: str) -> setlimits.SetFamily:
    doc = load_json(path)
    try:
        universe = [_coerce(x) for x in doc["universe"]]
        sets = {_coerce(k): [_coerce(x) for x in v] for k, v in doc["sets"].items()}
    except (KeyError, TypeError):
        raise click.UsageError("family file needs 'universe' and 'sets'")
    return setlimits.SetFamily(universe, sets)


@setlim.command("limits")
@click.option("--family", "path", required=True, type=str)
@click.option("--filter", "spec", required=True, type=str)
@_json_flag
@guarded
def setlim_limits(path, spec, as_json):
    """Lower and upper limits of a family along a filter."""
    fam = _load_setfamily(path)
    filt = parse_filter_spec(spec, fam.index_elements)
    pair = setlimits.set_limits(fam, filt)
    emit(
        {
            "liminf": sorted(map(_human, pair.liminf)),
            "limsup": sorted(map(_human, pair.limsup)),
            "lim": None if pair.lim is None else sorted(map(_human, pair.lim)),
        },
        as_json,
    )


@setlim.command("diagonal-lemma")
@click.option("--family", "path", required=True, type=str)
@click.option("--ultra", "point", required=True, type=str, help="principal point")
@_json_flag
@guarded
def setlim_lemma(path, point, as_json):
    """Check the bracket lemma and the diagonal theorem along an ultrafilter."""
    fam = _load_setfamily(path)
    u = fl.principal(fam.index_elements, _coerce(point))
    limit = setlimits.limit_along(fam, u)
    lemma = setlimits.limit_lemma_check(fam, u)
    diag = setlimits.theorem_2_5_check(fam, u)
    emit(
        {
            "limit": sorted(map(_human, limit)),
            "bracket_lemma": lemma,
            "diagonal_at_threshold_1": diag,
        },
        as_json,
    )
    if not (lemma and diag):
        fail_property("set-limit lemma failed")


# ---------------------------------------------------------------------- diag


@main.group()
def diag():
    """Interval bases and prefix diagonals."""


def _load_basis_family(path: str) -> additive.IntervalBasisFamily:
    return additive.IntervalBasisFamily.from_json_dict(load_json(path))


@diag.command("build")
@click.option("--family", "path", required=True, type=str)
@click.option("--horizon", required=True, type=int)
@click.option("--threshold", default=2, type=int, help="early-phase witness count")
@_json_flag
@guarded
def diag_build(path, horizon, threshold, as_json):
    """Build a diagonal prefix and report witnesses and representation counts."""
    fam = _load_basis_family(path)
    result = additive.build_diagonal(fam, horizon, early_count=threshold)
    profile = additive.RepProfile.of(result.d, result.n_prime)
    doc = result.to_json_dict()
    doc["rep_counts"] = list(profile.counts)
    doc["s_d"] = profile.s
    doc["s_bound"] = fam.s_bound()
    emit(doc, as_json)


@diag.command("validate")
@click.option("--family", "path", required=True, type=str)
@click.option("--result", "result_path", required=True, type=str,
              help="output of 'diag build --json'")
@_json_flag
@guarded
def diag_validate(path, result_path, as_json):
    """Independently validate a built diagonal."""
    fam = _load_basis_family(path)
    doc = load_json(result_path)
    try:
        result = additive.DiagonalResult(
            frozenset(doc["d"]),
            doc["horizon"],
            doc["n_prime"],
            tuple(tuple(w) for w in doc["witnesses"]),
        )
    except (KeyError, TypeError):
        raise click.UsageError("result file must come from 'diag build --json'")
    report = additive.validate_diagonal(fam, result)
    emit(
        {
            "ok": report.ok,
            "n_prime": report.n_prime,
            "s_d": report.s_d,
            "s_bound": report.s_bound,
            "failures": list(report.failures),
        },
        as_json,
    )
    if not report.ok:
        fail_property("diagonal validation failed")


# ---------------------------------------------------------------------- topo


@main.group()
def topo():
    """Finite topologies and specialization preorders."""


@topo.command("count")
@click.option("--k", required=True, type=int)
@_json_flag
@guarded
def topo_count(k, as_json):
    """Count topologies and preorders on k points independently."""
    cc = fintop.count_correspondence(k)
    emit({"k": k, "topologies": cc.topologies, "preorders": cc.preorders, "equal": cc.equal}, as_json)
    if not cc.equal:
        fail_property("topology and preorder counts differ at k=%d" % k)


@topo.command("normal")
@click.option("--file", "path", required=True, type=str)
@_json_flag
@guarded
def topo_normal(path, as_json):
    """Normality and extremal disconnectedness, both ways."""
    t = fintop.FiniteTopology.from_json_dict(load_json(path))
    rep = fintop.normality_check(t)
    emit(
        {
            "normal_direct": rep.normal_direct,
            "nasse_condition": rep.nasse_condition,
            "agree": rep.agree,
            "extremally_disconnected_direct": rep.extremally_disconnected_direct,
            "nasse_condition_ed": rep.nasse_condition_ed,
            "agree_ed": rep.agree_ed,
        },
        as_json,
    )
    if not (rep.agree and rep.agree_ed):
        fail_property("relation characterization disagreed with the direct definition")


@topo.command("roundtrip")
@click.option("--k", type=int, default=None)
@click.option("--file", "path", type=str, default=None)
@_json_flag
@guarded
def topo_roundtrip(k, path, as_json):
    """Verify the topology <-> preorder round-trips."""
    if (k is None) == (path is None):
        raise click.UsageError("give exactly one of --k or --file")
    if path is not None:
        t = fintop.FiniteTopology.from_json_dict(load_json(path))
        ok = fintop.topo_of(fintop.nasse_of(t)) == t
        emit({"roundtrip_identity": ok}, as_json)
        if not ok:
            fail_property("round-trip failed")
        return
    ok_t = all(
        fintop.topo_of(fintop.nasse_of(t)) == t for t in fintop.enumerate_topologies(k)
    )
    ok_p = all(
        fintop.nasse_of(fintop.topo_of(p)) == p for p in fintop.enumerate_preorders(k)
    )
    emit({"k": k, "topology_roundtrips": ok_t, "preorder_roundtrips": ok_p}, as_json)
    if not (ok_t and ok_p):
        fail_property("round-trip failed at k=%d" % k)


# -------------------------------------------------------------------- banach


@main.group("banach")
def banach_group():
    """Cesàro means and generalized-limit checks."""


@banach_group.command("check")
@click.option("--seq", "paths", required=True, multiple=True, type=str)
@_json_flag
@guarded
def banach_check(paths, as_json):
    """Estimate limits and verify the axioms on the convergent inputs."""
    sequences = [banach.SequenceWindow.from_json_dict(load_json(p)) for p in paths]
    per_seq = []
    convergent = []
    for path, x in zip(paths, sequences):
        est = banach.generalized_limit_estimate(x)
        per_seq.append(
            {
                "file": path,
                "status": est.status,
                "value": None if est.value is None else str(est.value),
                "liminf_est": str(est.liminf_est),
                "limsup_est": str(est.limsup_est),
            }
        )
        if est.status == "converged":
            convergent.append(x)
    doc: dict = {"sequences": per_seq}
    axioms_ok = True
    if convergent:
        report = banach.banach_axioms_check(convergent)
        doc["axioms"] = {c.name: c.passed for c in report.checks}
        axioms_ok = report.all_pass
    emit(doc, as_json)
    if not axioms_ok:
        fail_property("a generalized-limit axiom failed")


# -------------------------------------------------------------------- verify


@main.group()
def verify():
    """Acceptance suites."""


@verify.command("all")
@click.option("--seed", default=acceptance.DEFAULT_SEED, type=int,
              help="seed for the randomized suites")
@_json_flag
@guarded
def verify_all(seed, as_json):
    """Run every acceptance suite; one line per criterion."""
    results = acceptance.run_all(seed)
    if as_json:
        echo_json(
            [
                {
                    "number": r.number,
                    "name": r.name,
                    "passed": r.passed,
                    "within_budget": r.within_budget,
                    "seconds": round(r.seconds, 3),
                    "detail": r.detail,
                }
                for r in results
            ]
        )
    else:
        for r in results:
            status = "PASS" if r.ok else "FAIL"
            fg = ("green" if r.ok else "red") if _color() else None
            click.secho(
                "%s [%2d] %-34s (%6.2fs) %s"
                % (status, r.number, r.name, r.seconds, r.detail),
                fg=fg,
            )
    if not all(r.ok for r in results):
        sys.exit(1)


if __name__ == "__main__":
    main()
