import json
import subprocess
import sys

import pytest

from stablespan import formats
from stablespan.cli import Report, run
from stablespan.corpus import FIXTURES
from stablespan.recognition import replay_trace


@pytest.fixture(scope="module")
def fixture_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("fixtures")
    for name, g in FIXTURES.items():
        (out / f"{name}.graph").write_text(formats.format_graph_text(g))
    return out


def capture(capsys, argv):
    code = run(argv)
    return code, capsys.readouterr().out


class TestExitCodes:
    def test_recognize_accept(self, fixture_dir, capsys):
        code, out = capture(capsys, ["recognize", str(fixture_dir / "k4_one_heavy.graph")])
        assert code == 0
        assert "accepted" in out

    def test_recognize_reject_names_house(self, fixture_dir, capsys):
        code, out = capture(capsys, ["recognize", str(fixture_dir / "house.graph")])
        assert code == 1
        assert "house" in out

    def test_missing_file_is_input_error(self, capsys):
        assert run(["recognize", "/nonexistent/g.graph"]) == 2

    def test_usage_error_exit_two(self):
        proc = subprocess.run(
            [sys.executable, "-m", "stablespan.cli", "nonsense"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 2

    def test_falsify_forbidden_is_one(self, fixture_dir, capsys):
        code, out = capture(capsys, ["falsify", str(fixture_dir / "c5.graph"), "--trials", "2000"])
        assert code == 1
        assert "falsified" in out

    def test_falsify_stable_is_zero(self, fixture_dir, capsys):
        code, _ = capture(capsys, ["falsify", str(fixture_dir / "c4_unit.graph"), "--trials", "100"])
        assert code == 0

    def test_oracle(self, fixture_dir, capsys):
        assert capture(capsys, ["oracle", str(fixture_dir / "domino.graph")])[0] == 1
        assert capture(capsys, ["oracle", str(fixture_dir / "star_k13.graph")])[0] == 0


class TestReports:
    def test_json_deterministic_and_round_trips(self, fixture_dir, capsys):
        argv = ["recognize", str(fixture_dir / "c4_reject.graph"), "--json"]
        code1, out1 = capture(capsys, argv)
        code2, out2 = capture(capsys, argv)
        assert code1 == code2 == 1
        assert out1 == out2
        report = Report.from_json(out1)
        assert report.verdict == "rejected"
        assert report.obstruction["kind"] == "stuck_core"

    def test_falsify_json_deterministic(self, fixture_dir, capsys):
        argv = ["falsify", str(fixture_dir / "house.graph"), "--trials", "5000", "--seed", "0", "--json"]
        _, out1 = capture(capsys, argv)
        _, out2 = capture(capsys, argv)
        assert out1 == out2
        report = Report.from_json(out1)
        assert report.certificate["kind"] == "zero_certificate"

    def test_trace_out_replays(self, fixture_dir, tmp_path, capsys):
        trace_file = tmp_path / "trace.json"
        code, _ = capture(
            capsys,
            ["recognize", str(fixture_dir / "c4_accept.graph"), "--trace-out", str(trace_file)],
        )
        assert code == 0
        trace = formats.trace_from_dict(json.loads(trace_file.read_text()))
        assert replay_trace(trace) == FIXTURES["c4_accept"]

    def test_poly_check(self, fixture_dir, capsys):
        code, out = capture(capsys, ["poly", str(fixture_dir / "c4_unit.graph"), "--check", "--json"])
        assert code == 0
        report = Report.from_json(out)
        assert report.polynomial == "x1*x2 + x1*x4 + x2*x3 + x3*x4"
        assert report.checks == [{"name": "matrix_tree", "passed": True}]

    def test_poly_edge_variant(self, fixture_dir, capsys):
        code, out = capture(capsys, ["poly", str(fixture_dir / "path3.graph"), "--edge", "--json"])
        assert code == 0
        assert Report.from_json(out).polynomial == "x1*x2"

    def test_factor_verify(self, fixture_dir, capsys):
        code, out = capture(capsys, ["factor", str(fixture_dir / "c4_unit.graph"), "--verify", "--json"])
        assert code == 0
        report = Report.from_json(out)
        assert report.factorization["constant"] == "1"
        assert sorted(report.factorization["factors"]) == ["x1 + x3", "x2 + x4"]

    def test_rankdec_with_oracle(self, fixture_dir, capsys):
        code, out = capture(capsys, ["rankdec", str(fixture_dir / "c4_unit.graph"), "--oracle", "--json"])
        assert code == 0
        report = Report.from_json(out)
        assert report.decomposition["width"] == 1
        assert report.oracle == {"min_rankwidth": 1}

    def test_rankdec_rejected(self, fixture_dir, capsys):
        code, out = capture(capsys, ["rankdec", str(fixture_dir / "house.graph"), "--oracle", "--json"])
        assert code == 1
        report = Report.from_json(out)
        assert report.oracle == {"min_rankwidth": 2}

    def test_falsify_poly_expression(self, capsys):
        code, out = capture(capsys, ["falsify", "--poly", "x1^2 + 1", "--json"])
        assert code == 1
        report = Report.from_json(out)
        assert report.certificate["hpoint"]["x1"] == {"re": "0", "im": "1"}

    def test_drop_zero_edges_flag(self, tmp_path, capsys):
        path = tmp_path / "z.graph"
        path.write_text("n 2\na b 1\nb a 0\n")
        assert run(["recognize", str(path)]) == 2  # duplicate edge after keeping zero
        path.write_text("n 2\na b 0\nb a 1\n")
        assert run(["recognize", str(path)]) == 2  # zero weight rejected
        capsys.readouterr()
        code, _ = capture(capsys, ["recognize", str(path), "--drop-zero-edges"])
        assert code == 0


class TestCorpus:
    def test_list(self, capsys):
        code, out = capture(capsys, ["corpus"])
        assert code == 0
        assert "house" in out and "k4_one_heavy" in out

    def test_emit(self, tmp_path, capsys):
        code, _ = capture(capsys, ["corpus", "--emit", str(tmp_path / "fx")])
        assert code == 0
        emitted = list((tmp_path / "fx").glob("*.graph"))
        assert len(emitted) == len(FIXTURES)

    def test_self_check_small(self, capsys):
        code, out = capture(capsys, ["corpus", "--self-check", "--max-n", "4"])
        assert code == 0
        assert "[PASS] unweighted_agreement" in out
        assert "[FAIL]" not in out
