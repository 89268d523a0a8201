"""
Tests for the command-line surface, file formats and certificate round trips
"""

import copy
import io
import json
import sys
from fractions import Fraction

import pytest
import structlog

from src.bounds.certificates import types_certificate
from src.bounds.formulas import bound_grid
from src.cli.commands.bounds import parse_range
from src.cli.commands.common import parse_params
from src.cli.io import (
    format_list_text,
    parse_certificate,
    parse_list_text,
    parse_pattern,
    random_list_assignment,
    to_json_value,
)
from src.cli.schemas import Certificate, HypergraphRecord, ListAssignmentRecord
from src.cli.verifier import (
    bound_table_certificate,
    lower_witness_certificate,
    union_bound_certificate,
    verify_certificate,
)
from src.core.exceptions import BudgetExhaustedError, InternalDefectError, InvalidInputError, MalformedInputError
from src.core.hypergraph import clique, complete_hypergraph
from src.core.logging import configure_logging
from src.main import run
from src.witness.pipelines import star_lower_witness


def _write_lists(path, n: int, k: int, seed: int, universe: int):
    lists = random_list_assignment(complete_hypergraph(n, 2), k, universe, seed)
    path.write_text(format_list_text(lists), encoding="utf-8")
    return lists


def _tamper(path, edit):
    data = json.loads(path.read_text(encoding="utf-8"))
    edit(data["payload"])
    path.write_text(json.dumps(data), encoding="utf-8")


class TestParsing:
    """Test suite for pattern names, list files and parameters"""

    def test_pattern_names(self):
        """Test the four family spellings"""
        assert parse_pattern("K3").edge_count == 3
        assert parse_pattern("K4^3").uniformity == 3
        assert parse_pattern("K4^{3}").edge_count == 4
        assert parse_pattern("S3").max_degree == 3
        assert parse_pattern("M2").vertex_count == 4

    def test_unknown_pattern(self):
        """Test a name that is neither a family nor a file raises"""
        with pytest.raises(InvalidInputError):
            parse_pattern("Q7")

    def test_pattern_file(self, tmp_path):
        """Test an edge-list file"""
        path = tmp_path / "path.txt"
        path.write_text("0 1\n1 2  # middle\n\n2 3\n", encoding="utf-8")
        pattern = parse_pattern(str(path))
        assert pattern.edge_count == 3
        assert pattern.vertex_count == 4

    def test_list_text(self):
        """Test edges and lists come back in canonical order"""
        lists = parse_list_text("1 0 : 2,1\n# comment\n0 2 : 0 3\n1 2 : 5,6\n")
        assert lists.k == 2
        assert lists.list_for((0, 1)) == (1, 2)
        assert lists.host.is_complete()

    @pytest.mark.parametrize(
        "text,line",
        [
            ("0 1 : 1,2\n0 2 1,2\n", 2),
            ("0 1 : 1,2\n0 x : 1,2\n", 2),
            ("0 1 : 1,2\n0 2 : 1,2,3\n", 2),
            ("0 1 : 1,1\n", 1),
            ("0 1 : 1,2\n1 0 : 3,4\n", 2),
        ],
    )
    def test_malformed_list_text(self, text, line):
        """Test errors carry the offending line"""
        with pytest.raises(MalformedInputError) as excinfo:
            parse_list_text(text, "lists.txt")
        assert excinfo.value.location == f"lists.txt:{line}"

    def test_format_round_trip(self, k5, make_lists):
        """Test a formatted list file parses back to the same lists"""
        lists = make_lists(k5, 3, seed=2)
        assert parse_list_text(format_list_text(lists)) == lists

    def test_params_and_ranges(self):
        """Test key=value conversion and range syntax"""
        params = parse_params(["n=5", "pi=1/2", "c=2.5", "name=K3"])
        assert params == {"n": 5, "pi": Fraction(1, 2), "c": Fraction(5, 2), "name": "K3"}
        assert parse_range("2..5") == [2, 3, 4, 5]
        assert parse_range("3-4") == [3, 4]
        assert parse_range("2,7") == [2, 7]
        with pytest.raises(InvalidInputError):
            parse_params(["novalue"])

    def test_json_values(self):
        """Test big integers, fractions and infinities serialize losslessly"""
        assert to_json_value(2**70) == str(2**70)
        assert to_json_value(12) == 12
        assert to_json_value(float("-inf")) == "-inf"
        assert to_json_value(2.0**1020) == {"log2": pytest.approx(1020.0)}

    def test_certificate_schema_errors(self):
        """Test invalid JSON and unknown kinds are malformed input"""
        with pytest.raises(MalformedInputError):
            parse_certificate("{not json")
        with pytest.raises(MalformedInputError):
            parse_certificate(json.dumps({"version": "1.0", "kind": "other", "payload": {}}))

    def test_record_field_names(self):
        """Test hosts serialize as uniformity, n and edges"""
        host = clique(3)
        assert set(HypergraphRecord.from_hypergraph(host).model_dump()) == {"uniformity", "n", "edges"}
        lists = random_list_assignment(host, 2, 3, seed=0)
        assert set(ListAssignmentRecord.from_lists(lists).model_dump()) == {"host", "k", "lists"}
        record = HypergraphRecord.model_validate({"uniformity": 2, "n": 4, "edges": [[0, 1]]})
        assert record.to_hypergraph().vertex_count == 4

    def test_non_utf8_list_file(self, tmp_path):
        """Test an undecodable list file exits with 64"""
        path = tmp_path / "bad.lists"
        path.write_bytes(b"0 1 : 1,2\n0 2 : \xff,3\n")
        assert run(["color", str(path)]) == 64

    def test_non_utf8_pattern_file(self, tmp_path):
        """Test an undecodable edge list reports the byte offset"""
        path = tmp_path / "bad.edges"
        path.write_bytes(b"0 1\n\xff 2\n")
        with pytest.raises(MalformedInputError) as excinfo:
            parse_pattern(str(path))
        assert excinfo.value.location == f"{path}:byte 4"
        assert run(["exact", "--pattern", str(path), "--colors", "2"]) == 64

    def test_non_utf8_certificate(self, tmp_path):
        """Test verify rejects an undecodable certificate with 64"""
        path = tmp_path / "bad.json"
        path.write_bytes(b'{"version": "\xff"}')
        assert run(["verify", str(path)]) == 64


class TestExactCommands:
    """Test suite for exact and list-exact"""

    def test_exact_triangle(self, capsys):
        """Test R(K_3, 2) is printed"""
        assert run(["exact", "--pattern", "K3", "--colors", "2"]) == 0
        assert capsys.readouterr().out.strip() == "6"

    def test_list_exact_star(self, capsys, tmp_path):
        """Test R_l(K_{1,2}, 2) = 3 with both certificates verified"""
        out, proof = tmp_path / "ub.json", tmp_path / "lb.json"
        code = run(
            ["list-exact", "--pattern", "S2", "--k", "2", "--n-max", "4", "--out", str(out), "--proof-out", str(proof)]
        )
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert report["value"] == 3
        assert run(["verify", str(out)]) == 0
        assert run(["verify", str(proof)]) == 0

    def test_budget_exhaustion_exit_code(self, mocker):
        """Test a budget error maps to exit code 2"""
        mocker.patch("src.cli.commands.exact.ramsey_exact", side_effect=BudgetExhaustedError("nodes"))
        assert run(["exact", "--pattern", "K4", "--colors", "3"]) == 2

    def test_internal_defect_exit_code(self, mocker):
        """Test a defect maps to exit code 70"""
        mocker.patch("src.cli.commands.exact.ramsey_exact", side_effect=InternalDefectError("boom"))
        assert run(["exact", "--pattern", "K3", "--colors", "2"]) == 70


class TestWitnessCommand:
    """Test suite for witness certificates"""

    def test_star_compose_round_trip(self, tmp_path, capsys):
        """Test a K_6 star witness verifies and a tampered color fails"""
        lists_path, cert_path = tmp_path / "lists.txt", tmp_path / "witness.json"
        _write_lists(lists_path, 6, 2, seed=11, universe=3)
        code = run(
            ["witness", "--strategy", "star-compose", "--r", "4", "--k", "2", "--lists", str(lists_path), "--out", str(cert_path)]
        )
        assert code == 0
        assert run(["verify", str(cert_path)]) == 0

        _tamper(cert_path, lambda payload: payload["coloring"]["colors"].__setitem__(0, 99))
        capsys.readouterr()
        assert run(["verify", str(cert_path)]) == 1
        report = json.loads(capsys.readouterr().out)
        failed = {check["name"] for check in report["checks"] if not check["passed"]}
        assert "list_compliant" in failed

    def test_random_lists_star5(self, tmp_path):
        """Test seeded random lists for the K_5 construction"""
        cert_path = tmp_path / "star5.json"
        code = run(["witness", "--strategy", "star5", "--r", "3", "--k", "2", "--seed", "4", "--out", str(cert_path)])
        assert code == 0
        assert run(["verify", str(cert_path)]) == 0

    def test_malformed_list_file(self, tmp_path):
        """Test a broken list file exits with 64"""
        lists_path = tmp_path / "bad.txt"
        lists_path.write_text("0 1 : 1,2\n0 2 : 1\n", encoding="utf-8")
        code = run(["witness", "--strategy", "star-compose", "--r", "4", "--k", "2", "--lists", str(lists_path)])
        assert code == 64

    def test_wrong_list_size(self, tmp_path):
        """Test lists of the wrong size exit with 64"""
        lists_path = tmp_path / "lists.txt"
        _write_lists(lists_path, 6, 3, seed=1, universe=5)
        code = run(["witness", "--strategy", "star-compose", "--r", "4", "--k", "2", "--lists", str(lists_path)])
        assert code == 64


class TestOtherCommands:
    """Test suite for decompose, color, bounds and usage handling"""

    def test_usage_errors(self):
        """Test missing subcommands and options exit with 64"""
        assert run([]) == 64
        assert run(["exact"]) == 64
        assert run(["probe", "--pattern", "M2", "--k", "2", "--n", "5"]) == 64

    def test_decompose(self, capsys):
        """Test a Walecki decomposition is emitted with its report"""
        assert run(["decompose", "--kind", "walecki", "--n", "6"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["report"]["pieces"] == 3
        assert data["report"]["covers"]

    def test_color(self, tmp_path, capsys):
        """Test a K_4 list file is colored from its lists"""
        lists_path = tmp_path / "k4.txt"
        lists = _write_lists(lists_path, 4, 4, seed=3, universe=6)
        assert run(["color", str(lists_path)]) == 0
        colors = json.loads(capsys.readouterr().out)["colors"]
        assert all(c in pal for c, pal in zip(colors, lists.lists))

    def test_bound_table_certificate(self, tmp_path, capsys):
        """Test a small grid prints a table and its certificate verifies"""
        cert_path = tmp_path / "table.json"
        assert run(["bounds", "--r", "2..4", "--k", "2..3", "--out", str(cert_path)]) == 0
        assert capsys.readouterr().out.startswith("family\tparams")
        assert run(["verify", str(cert_path)]) == 0

    def test_bound_eval(self, capsys):
        """Test evaluating one family"""
        assert run(["bounds", "--eval", "star2", "--param", "r=4"]) == 0
        assert json.loads(capsys.readouterr().out)["lower"] == 7

    def test_union_bound_certificate(self, tmp_path, capsys):
        """Test a passing certificate verifies and a tampered value fails"""
        cert_path = tmp_path / "types.json"
        args = ["certificate", "--kind", "types", "--param", "n=5", "--param", "l=2", "--param", "m=2", "--param", "k=10"]
        assert run(args + ["--out", str(cert_path)]) == 0
        assert run(["verify", str(cert_path)]) == 0
        _tamper(cert_path, lambda payload: payload.__setitem__("log_value", -1.0))
        assert run(["verify", str(cert_path)]) == 1

    def test_failing_union_bound(self, capsys):
        """Test a condition that does not hold exits with 1"""
        args = ["certificate", "--kind", "types", "--param", "n=5", "--param", "l=2", "--param", "m=2", "--param", "k=2"]
        assert run(args) == 1
        assert json.loads(capsys.readouterr().out)["passed"] is False

    def test_probe(self, capsys):
        """Test the probe reports its seed and rate"""
        assert run(["probe", "--pattern", "M2", "--k", "1", "--n", "5", "--samples", "3", "--seed", "9"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["failure_rate"] == 1.0
        assert data["seed"] == 9


class TestLogging:
    """Test suite for log routing"""

    def test_logs_follow_the_current_stderr(self, monkeypatch):
        """Test a closed stderr from an earlier run does not break later log calls"""
        first = io.StringIO()
        monkeypatch.setattr(sys, "stderr", first)
        configure_logging("INFO")
        structlog.get_logger().info("first run")
        assert "first run" in first.getvalue()
        first.close()

        second = io.StringIO()
        monkeypatch.setattr(sys, "stderr", second)
        structlog.get_logger().info("second run")
        assert "second run" in second.getvalue()

    def test_library_calls_after_cli_run(self, monkeypatch):
        """Test certificates still build after run() logged to a stream that is now closed"""
        stream = io.StringIO()
        monkeypatch.setattr(sys, "stderr", stream)
        assert run(["--log-level", "DEBUG", "decompose", "--kind", "walecki", "--n", "6"]) == 0
        stream.close()
        monkeypatch.setattr(sys, "stderr", io.StringIO())
        assert union_bound_certificate(types_certificate(5, 2, 2, 10)).passed


def _flips(cert: Certificate, edit) -> bool:
    payload = copy.deepcopy(cert.payload)
    edit(payload)
    tampered = Certificate(version=cert.version, kind=cert.kind, payload=payload)
    return not all(check.passed for check in verify_certificate(tampered))


def _star_witness_certificate() -> Certificate:
    lists = random_list_assignment(complete_hypergraph(6, 2), 2, 3, seed=11)
    return lower_witness_certificate(star_lower_witness(4, 2, lists))


def _lower_witness_edits(payload):
    lists = payload["lists"]["lists"]
    outside = max(c for pal in lists for c in pal) + 1
    edits = {}
    for i in range(len(lists)):
        edits[f"color_{i}"] = lambda p, i=i: p["coloring"]["colors"].__setitem__(i, outside)
        edits[f"list_{i}"] = lambda p, i=i: p["lists"]["lists"].__setitem__(i, [outside, outside + 1])
    edits["single_edge_pattern"] = lambda p: p.__setitem__("pattern", {"uniformity": 2, "n": 2, "edges": [[0, 1]]})
    edits["pattern_uniformity"] = lambda p: p["pattern"].__setitem__("uniformity", 3)
    edits["list_size"] = lambda p: p["lists"].__setitem__("k", 3)
    edits["host_grows"] = lambda p: (p["lists"]["host"].__setitem__("n", 7), p["coloring"]["host"].__setitem__("n", 7))
    edits["coloring_host_shrinks"] = lambda p: (p["coloring"]["host"]["edges"].pop(), p["coloring"]["colors"].pop())
    if payload.get("decomposition") is not None:
        edits["decomposition_piece"] = lambda p: p["decomposition"]["pieces"][0].pop()
    return edits


class TestTampering:
    """Test suite for payload edits that verify must catch"""

    def test_every_lower_witness_edit_fails(self):
        """Test each color, list, pattern and host edit of a witness fails verification"""
        cert = _star_witness_certificate()
        assert all(check.passed for check in verify_certificate(cert))
        survivors = [name for name, edit in _lower_witness_edits(cert.payload).items() if not _flips(cert, edit)]
        assert survivors == []

    @pytest.mark.parametrize(
        "name,edit",
        [
            ("n", lambda p: p["params"].__setitem__("n", 7)),
            ("l", lambda p: p["params"].__setitem__("l", 1)),
            ("m", lambda p: p["params"].__setitem__("m", 3)),
            ("k", lambda p: p["params"].__setitem__("k", 11)),
            ("log_value", lambda p: p.__setitem__("log_value", p["log_value"] * (1 + 1e-6))),
            ("passed", lambda p: p.__setitem__("passed", False)),
            ("exact_value", lambda p: p.__setitem__("exact_value", "11/1024")),
            ("kind", lambda p: p.__setitem__("kind", "supersat_delta")),
        ],
    )
    def test_union_bound_edit_fails(self, name, edit):
        """Test each union-bound field edit fails verification"""
        cert = union_bound_certificate(types_certificate(5, 2, 2, 10))
        assert _flips(cert, edit), name

    def test_every_bound_row_edit_fails(self):
        """Test changing any stored row or the grid fails verification"""
        cert = bound_table_certificate(bound_grid([2, 3], [2, 3]), [2, 3], [2, 3])
        edits = {
            f"lower_{i}": (lambda p, i=i: p["rows"][i].__setitem__("lower", 10**6))
            for i in range(len(cert.payload["rows"]))
        }
        edits["r_values"] = lambda p: p.__setitem__("r_values", [2, 4])
        survivors = [name for name, edit in edits.items() if not _flips(cert, edit)]
        assert survivors == []
