import csv
import io
import json

import pytest

from tspwiener.checks import TheoremVerdict
from tspwiener.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def strip_timing(text):
    doc = json.loads(text)
    doc.pop("timing_ms")
    return doc


def payload(text):
    """The result-bearing slice: what must not vary across thread counts."""
    doc = json.loads(text)
    return (doc["instance"], doc["results"], doc["verdicts"],
            doc["findings"], doc["seed"])


class TestCompute:
    def test_clique_tour_index(self, capsys):
        doc = run_json(capsys, "compute", "--family", "clique:8", "--k", "4",
                       "--wtspk")
        assert doc["results"]["wtspk"]["exact"] == "280"
        assert doc["instance"]["graph6"] == "G~~~~{"

    def test_path_mean_is_rational(self, capsys):
        doc = run_json(capsys, "compute", "--family", "path:4", "--k", "2",
                       "--mutspk")
        assert doc["results"]["mutspk"]["exact"] == "10/3"

    def test_digraph_pair_aggregates(self, capsys):
        doc = run_json(capsys, "compute", "--family", "dp:20,6", "--k", "2",
                       "--wtspk", "--wk", "--digraph")
        assert doc["results"]["wtspk"]["exact"] == "1770"
        assert doc["results"]["wk"]["exact"] == "1350"

    def test_wiener_needs_no_k(self, capsys):
        doc = run_json(capsys, "compute", "--family", "cycle:6", "--wiener")
        assert doc["results"]["wiener"]["exact"] == "27"

    def test_eccentricity_block(self, capsys):
        doc = run_json(capsys, "compute", "--family", "path:7", "--k", "3",
                       "--ecc")
        ecc = doc["results"]["ecc"]
        assert ecc["values"][0]["exact"] == "12"
        assert ecc["diameter"]["exact"] == "12"

    def test_edges_file(self, capsys, tmp_path):
        f = tmp_path / "g.txt"
        f.write_text("0 1 2\n1 2 1\n0 2 7/2\n")
        doc = run_json(capsys, "compute", "--edges", str(f), "--k", "3",
                       "--wtspk")
        assert doc["results"]["wtspk"]["exact"] == "6"
        assert doc["instance"]["weighted"] is True

    def test_graph6_literal(self, capsys):
        doc = run_json(capsys, "compute", "--graph6", "C~", "--k", "2",
                       "--wtspk")
        assert doc["results"]["wtspk"]["exact"] == "12"

    def test_csv_output_matches_json(self, capsys):
        code, out, _ = run(capsys, "compute", "--family", "path:4", "--k", "2",
                           "--mutspk", "--csv")
        assert code == 0
        rows = {r[0]: r[1] for r in csv.reader(io.StringIO(out))}
        assert rows["results.mutspk"] == "10/3"


class TestVerify:
    def test_triple_on_cycle(self, capsys):
        code, out, _ = run(capsys, "verify", "--family", "cycle:6",
                           "--theorem", "triple")
        assert code == 0
        doc = json.loads(out)
        v = doc["verdicts"][0]
        assert v["theorem"] == "steiner-three-vs-wiener"
        assert v["holds"] is True and v["equality"] is False
        assert v["characterization_agrees"] is True

    def test_scan_order_five(self, capsys):
        code, out, _ = run(capsys, "verify", "--scan", "5", "--k", "3",
                           "--theorem", "all")
        assert code == 0
        doc = json.loads(out)
        assert doc["results"]["ok"] is True
        assert doc["results"]["scan"]["graphs"]["exact"] == "728"

    def test_broom_experiment(self, capsys):
        code, out, _ = run(capsys, "verify", "--family", "broom:12", "--k", "4",
                           "--theorem", "dlw", "--against", "cycle:25")
        assert code == 0
        doc = json.loads(out)
        assert doc["results"]["experiment"]["tree_exceeds_cycle"] is True

    def test_broom_experiment_rejects_wrong_cycle(self, capsys):
        code, _, err = run(capsys, "verify", "--family", "broom:12", "--k", "4",
                           "--theorem", "dlw", "--against", "cycle:24")
        assert code == 2
        assert "cycle:25" in err

    def test_battery_single_instance(self, capsys):
        code, out, _ = run(capsys, "verify", "--family", "kab:2,3", "--k", "3",
                           "--theorem", "all")
        assert code == 0
        names = [v["theorem"] for v in json.loads(out)["verdicts"]]
        assert "tour-le-double-steiner" in names
        assert "mean-within-bounds" in names
        assert "steiner-three-vs-wiener" in names
        assert "mean-subadditivity" in names

    def test_graph6_file_catalogue(self, capsys, tmp_path):
        f = tmp_path / "graphs.g6"
        f.write_text("DQo\nD~{\nDbk\n")
        code, out, _ = run(capsys, "verify", "--graph6", str(f), "--k", "3",
                           "--theorem", "all")
        assert code == 0
        assert json.loads(out)["results"]["scan"]["graphs"]["exact"] == "3"

    def test_failed_verdict_exits_four(self, capsys, monkeypatch):
        import tspwiener.cli as cli
        broken = TheoremVerdict(theorem="tour-le-double-steiner",
                                instance="n=5, m=5", holds=False,
                                equality=False, values=(31, 30))
        monkeypatch.setattr(cli, "check_tsp_le_2steiner",
                            lambda g, k: broken)
        code, out, err = run(capsys, "verify", "--family", "cycle:5",
                             "--k", "3", "--theorem", "2steiner")
        assert code == 4
        assert "verdict failed" in err
        assert json.loads(out)["verdicts"][0]["holds"] is False


class TestEstimate:
    def test_clique_exact(self, capsys):
        doc = run_json(capsys, "estimate", "--family", "clique:1000",
                       "--k", "5", "--samples", "1000", "--seed", "7")
        assert doc["results"]["mean"]["exact"] == "5"
        assert doc["results"]["stderr"]["exact"] == "0"
        assert doc["seed"] == 7

    def test_seed_determinism_bytewise(self, capsys):
        args = ("estimate", "--family", "cycle:301", "--k", "4",
                "--samples", "3000", "--seed", "11")
        _, out1, _ = run(capsys, *args)
        _, out2, _ = run(capsys, *args)
        assert strip_timing(out1) == strip_timing(out2)


class TestExitCodes:
    def test_parse_errors(self, capsys):
        assert run(capsys, "compute", "--family", "cycle:abc", "--k", "2",
                   "--wtspk")[0] == 1
        assert run(capsys, "compute", "--family", "nosuch:5", "--k", "2",
                   "--wtspk")[0] == 1
        assert run(capsys, "compute", "--family", "path:5", "--k", "2")[0] == 1
        assert run(capsys, "compute", "--family", "path:5", "--wtspk")[0] == 1
        assert run(capsys, "verify", "--theorem", "triple")[0] == 1
        assert run(capsys, "nonsense")[0] == 1

    def test_precondition_errors(self, capsys, tmp_path):
        f = tmp_path / "disc.txt"
        f.write_text("0 1\n2 3\n")
        assert run(capsys, "compute", "--edges", str(f), "--k", "2",
                   "--wtspk")[0] == 2
        assert run(capsys, "compute", "--family", "cycle:5", "--k", "9",
                   "--wtspk")[0] == 2
        assert run(capsys, "verify", "--family", "cycle:5", "--k", "2",
                   "--theorem", "digraph")[0] == 2

    def test_budget_error(self, capsys):
        assert run(capsys, "compute", "--family", "clique:50", "--k", "12",
                   "--wtspk")[0] == 3

    def test_diagnostics_never_pollute_stdout(self, capsys):
        code, out, err = run(capsys, "compute", "--family", "nosuch:5",
                             "--k", "2", "--wtspk")
        assert out == "" and err != ""


class TestDeterminism:
    def test_threads_do_not_change_the_report(self, capsys):
        outs = []
        for t in ("1", "4", "8"):
            _, out, _ = run(capsys, "compute", "--family", "clique:9",
                            "--k", "4", "--wtspk", "--threads", t)
            outs.append(payload(out))
        assert outs[0] == outs[1] == outs[2]

    def test_scan_threads_stable(self, capsys):
        a = run(capsys, "verify", "--scan", "4", "--theorem", "all",
                "--threads", "1")[1]
        b = run(capsys, "verify", "--scan", "4", "--theorem", "all",
                "--threads", "8")[1]
        assert payload(a) == payload(b)
