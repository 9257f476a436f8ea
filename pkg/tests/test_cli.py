"""CLI surface: subcommands, JSON schemas, golden files, exit codes."""

import importlib.resources
import json

import pytest
from click.testing import CliRunner

from uflab import acceptance
from uflab.cli import main

runner = CliRunner()


def data_path(name: str) -> str:
    return str(importlib.resources.files("uflab").joinpath("data", name))


def invoke(*args):
    return runner.invoke(main, list(args))


def write_json(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


class TestGoldenFiles:
    @pytest.mark.parametrize(
        "profile,method,golden",
        [
            ("condorcet1.json", "plurality", "condorcet1_plurality.json"),
            ("condorcet1.json", "two_round", "condorcet1_two_round.json"),
            ("condorcet1.json", "pairwise", "condorcet1_pairwise.json"),
            ("condorcet2.json", "pairwise", "condorcet2_pairwise.json"),
        ],
    )
    def test_election_reports_are_byte_stable(self, profile, method, golden):
        result = invoke(
            "elect", "run", "--method", method, "--profile", data_path(profile), "--json"
        )
        assert result.exit_code == 0, result.output
        assert result.stdout_bytes == acceptance.packaged_bytes("golden", golden)

    @pytest.mark.parametrize(
        "profile,golden",
        [
            ("separation1.json", "separation1_conditions.json"),
            ("separation2.json", "separation2_conditions.json"),
        ],
    )
    def test_condition_reports_are_byte_stable(self, profile, golden):
        result = invoke(
            "elect", "stv-conditions", "--profile", data_path(profile), "--json"
        )
        assert result.exit_code == 0, result.output
        assert result.stdout_bytes == acceptance.packaged_bytes("golden", golden)

    def test_fano_report_is_byte_stable(self):
        result = invoke("vote", "fano", "--json")
        assert result.exit_code == 0
        assert result.stdout_bytes == acceptance.packaged_bytes(
            "golden", "fano_report.json"
        )


class TestVote:
    def test_check(self, tmp_path):
        path = write_json(
            tmp_path, "maj3.json", {"n": 3, "efficacious": [[0, 1], [0, 2], [1, 2], [0, 1, 2]]}
        )
        result = invoke("vote", "check", "--system", path, "--json")
        doc = json.loads(result.output)
        assert doc["conditions"] == {
            "C1": True, "C2": True, "C3": False, "U1": False, "U2": False
        }
        assert doc["is_ultrafilter"] is False

    def test_dictator(self, tmp_path):
        path = write_json(
            tmp_path, "dict.json", {"n": 3, "efficacious": [[1], [0, 1], [1, 2], [0, 1, 2]]}
        )
        result = invoke("vote", "dictator", "--system", path, "--json")
        assert json.loads(result.output)["dictator"] == 1

    def test_weights(self, tmp_path):
        path = write_json(
            tmp_path, "maj3.json", {"n": 3, "efficacious": [[0, 1], [0, 2], [1, 2], [0, 1, 2]]}
        )
        result = invoke("vote", "weights", "--system", path, "--json")
        doc = json.loads(result.output)
        assert doc["representable"] is True and doc["weights"] == ["1", "1", "1"]

    def test_guilbaud_human_line(self):
        result = invoke("vote", "guilbaud", "--n", "3")
        assert result.exit_code == 0
        assert "3 systems, all dictatorial" in result.output


class TestElect:
    def test_tally(self):
        result = invoke("elect", "tally", "--profile", data_path("condorcet1.json"), "--json")
        doc = json.loads(result.output)
        assert doc["tallies"]["B>A"] == 35

    def test_cycles(self):
        result = invoke("elect", "cycles", "--profile", data_path("condorcet2.json"), "--json")
        doc = json.loads(result.output)
        assert doc["cycle"] == ["A", "B", "C"]

    def test_prob(self):
        result = invoke("elect", "prob", "--voters", "3", "--json")
        doc = json.loads(result.output)
        assert doc["probability"] == "1/18" and doc["cyclic_assignments"] == 12


class TestUltraLosSetlim:
    def test_ultra_enumerate(self):
        result = invoke("ultra", "enumerate", "--ground", "0,1,2", "--json")
        doc = json.loads(result.output)
        assert doc["count"] == 3

    def test_ultra_sum_and_product(self, tmp_path):
        sum_path = write_json(
            tmp_path,
            "sum.json",
            {
                "master": {"ground": ["p", "q"], "principal": "q"},
                "parts": {
                    "p": {"ground": [10, 11], "principal": 11},
                    "q": {"ground": [20, 21], "principal": 20},
                },
            },
        )
        result = invoke("ultra", "sum", "--file", sum_path, "--json")
        assert json.loads(result.output)["point"] == 20
        prod_path = write_json(
            tmp_path,
            "prod.json",
            {
                "left": {"ground": [0, 1], "principal": 1},
                "right": {"ground": [0, 1, 2], "principal": 0},
            },
        )
        result = invoke("ultra", "product", "--file", prod_path, "--json")
        doc = json.loads(result.output)
        assert doc["point"] == [1, 0] and doc["is_ultrafilter"] is True

    def test_los_pipeline(self, tmp_path):
        result = invoke("los", "parse", "--formula", "forall x. not R(x,x)", "--json")
        assert json.loads(result.output)["core"] == "not exists x. not not R(x, x)"
        st_path = write_json(
            tmp_path,
            "st.json",
            {"universe": [0, 1, 2], "relations": {"L": [[0, 1], [0, 2], [1, 2]]}},
        )
        result = invoke(
            "los", "eval",
            "--formula", "exists z. (L(x,z) and L(z,y))",
            "--structure", st_path,
            "--env", "x=0,y=2",
            "--json",
        )
        assert json.loads(result.output)["value"] is True
        fam_path = write_json(
            tmp_path,
            "fam.json",
            {
                "structures": [
                    {"universe": [0, 1], "relations": {"P": [[0]]}},
                    {"universe": [0, 1, 2], "relations": {"P": [[1]]}},
                ]
            },
        )
        result = invoke(
            "los", "check",
            "--formula", "exists z. P(z)",
            "--structures", fam_path,
            "--ultra", "1",
            "--json",
        )
        doc = json.loads(result.output)
        assert doc["agree"] is True and result.exit_code == 0

    def test_setlim(self, tmp_path):
        fam_path = write_json(
            tmp_path,
            "sf.json",
            {"universe": [0, 1, 2, 3], "sets": {"0": [0, 1], "1": [1, 2], "2": [0, 1, 3]}},
        )
        result = invoke(
            "setlim", "limits", "--family", fam_path, "--filter", "generators:0,2", "--json"
        )
        doc = json.loads(result.output)
        assert doc["liminf"] == ["0", "1"] and doc["lim"] is None
        result = invoke(
            "setlim", "diagonal-lemma", "--family", fam_path, "--ultra", "1", "--json"
        )
        doc = json.loads(result.output)
        assert doc["bracket_lemma"] is True and result.exit_code == 0


class TestDiagTopoBanach:
    def test_diag_build_then_validate(self, tmp_path):
        fam_path = write_json(
            tmp_path,
            "bases.json",
            {"bases": {str(m): list(range(0, m // 2 + 1)) for m in (4, 8, 16, 32)}},
        )
        result = invoke("diag", "build", "--family", fam_path, "--horizon", "8", "--json")
        assert result.exit_code == 0
        build_doc = json.loads(result.output)
        res_path = tmp_path / "res.json"
        res_path.write_text(json.dumps(build_doc))
        result = invoke(
            "diag", "validate", "--family", fam_path, "--result", str(res_path), "--json"
        )
        assert result.exit_code == 0
        assert json.loads(result.output)["ok"] is True

    def test_diag_tampered_result_exits_one(self, tmp_path):
        fam_path = write_json(
            tmp_path,
            "bases.json",
            {"bases": {str(m): list(range(0, m // 2 + 1)) for m in (4, 8, 16, 32)}},
        )
        result = invoke("diag", "build", "--family", fam_path, "--horizon", "8", "--json")
        doc = json.loads(result.output)
        doc["d"] = doc["d"] + [7]
        res_path = tmp_path / "res.json"
        res_path.write_text(json.dumps(doc))
        result = invoke(
            "diag", "validate", "--family", fam_path, "--result", str(res_path)
        )
        assert result.exit_code == 1

    def test_topo(self, tmp_path):
        result = invoke("topo", "count", "--k", "3", "--json")
        doc = json.loads(result.output)
        assert doc["topologies"] == 29 and doc["equal"] is True
        sierp = write_json(tmp_path, "sierp.json", {"points": 2, "opens": [[], [0], [0, 1]]})
        result = invoke("topo", "normal", "--file", sierp, "--json")
        assert json.loads(result.output)["agree"] is True
        result = invoke("topo", "roundtrip", "--k", "2", "--json")
        assert json.loads(result.output)["topology_roundtrips"] is True

    def test_banach(self, tmp_path):
        alt = write_json(
            tmp_path, "alt.json",
            {"window": [0, 1, 0, 1], "tail": {"kind": "periodic", "pattern": [0, 1]}},
        )
        result = invoke("banach", "check", "--seq", alt, "--json")
        doc = json.loads(result.output)
        assert doc["sequences"][0]["value"] == "1/2"
        assert doc["axioms"]["shift_invariance"] is True


class TestExitCodes:
    def test_missing_file_is_usage_error(self):
        result = invoke("vote", "check", "--system", "/nonexistent.json")
        assert result.exit_code == 2
        assert "file not found" in result.output

    def test_malformed_json_is_usage_error(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("not json")
        result = invoke("vote", "check", "--system", str(path))
        assert result.exit_code == 2
        assert "malformed JSON" in result.output

    def test_resource_guard_is_usage_error(self):
        result = invoke("elect", "prob", "--voters", "9")
        assert result.exit_code == 2
        assert "resource guard" in result.output

    def test_parse_error_is_usage_error(self):
        result = invoke("los", "parse", "--formula", "(p or")
        assert result.exit_code == 2
        assert "syntax error" in result.output

    def test_unknown_flag_is_usage_error(self):
        result = invoke("vote", "check", "--frobnicate")
        assert result.exit_code == 2

    def test_verify_all_json_passes(self):
        result = invoke("verify", "all", "--json")
        assert result.exit_code == 0, result.output
        docs = json.loads(result.output)
        assert len(docs) == 12
        assert all(d["passed"] for d in docs)
