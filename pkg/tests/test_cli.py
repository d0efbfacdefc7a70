# -*- coding: utf-8 -*-

import json

import pytest
from typer.testing import CliRunner

from cohesion_clustering.cli import app, main

from .conftest import EXAMPLE_NOT_COHESION

runner = CliRunner()


def invoke(*args):
    return runner.invoke(app, [str(a) for a in args])


@pytest.fixture
def line_init(tmp_path):
    path = tmp_path / "init.txt"
    path.write_text("0\n1\n0\n1\n")
    return path


def test_verify_duality(L4_file):
    result = invoke("verify", "duality", "--input", L4_file)
    assert result.exit_code == 0
    payload = json.loads(result.stdout)
    assert payload['passed']
    assert max(payload['distance_error'], payload['cohesion_error']) < 1e-9


def test_verify_metric_and_theorem1(L4_file):
    assert invoke("verify", "metric", "--input", L4_file).exit_code == 0
    result = invoke("verify", "theorem1", "--input", L4_file, "--set", "0,1")
    assert result.exit_code == 0
    assert json.loads(result.stdout)['is_cluster']


def test_verify_failure_exit_code(tmp_path):
    path = tmp_path / "m.csv"
    path.write_text("".join(",".join(str(v) for v in row) + "\n" for row in EXAMPLE_NOT_COHESION))
    result = invoke("verify", "cohesion", "--input", path)
    assert result.exit_code == 3
    assert json.loads(result.stdout)['violations'][0]['axiom'] == 'C3'


def test_ksets_golden_with_report(L4_file, line_init, tmp_path):
    report = tmp_path / "report.json"
    result = invoke("cluster", "ksets", "--input", L4_file, "--k", 2, "--init", line_init, "--report", report)
    assert result.exit_code == 0
    assert result.stdout == "0\n0\n0\n1\n"
    payload = json.loads(report.read_text())
    assert payload['moves'] == 1
    assert payload['passes'] == 2
    assert payload['R'] == pytest.approx(3.8333333333, abs=1e-9)
    assert payload['config']['k'] == 2
    assert 'seconds' in payload['timing']


def test_dual_ksets_from_distance_matches(L4_file, line_init):
    primal = invoke("cluster", "ksets", "--input", L4_file, "--k", 2, "--init", line_init)
    dual = invoke("cluster", "dual-ksets", "--from-distance", "--input", L4_file, "--k", 2, "--init", line_init)
    assert dual.exit_code == 0
    assert dual.stdout == primal.stdout


def test_reports_are_reproducible(L4_file, tmp_path):
    outputs = []
    for name in ("a.json", "b.json"):
        report = tmp_path / name
        assert invoke("cluster", "ksets", "--input", L4_file, "--k", 2, "--seed", 3, "--report", report).exit_code == 0
        payload = json.loads(report.read_text())
        payload.pop('timing')
        outputs.append(payload)
    assert outputs[0] == outputs[1]


def test_config_file(L4_file, line_init, tmp_path):
    config = tmp_path / "run.json"
    config.write_text(json.dumps({"input": str(L4_file), "k": 2, "init": str(line_init)}))
    result = invoke("cluster", "ksets", "--config", config)
    assert result.exit_code == 0
    assert result.stdout == "0\n0\n0\n1\n"

    config.write_text(json.dumps({"k": 2, "colour": "red"}))
    assert main(["cluster", "ksets", "--config", str(config)]) == 1


def test_yaml_config_file(L4_file, line_init, tmp_path):
    config = tmp_path / "run.yaml"
    config.write_text(f"input: {L4_file}\nk: 2\ninit: {line_init}\n")
    result = invoke("cluster", "ksets", "--config", config, "--k", 2)
    assert result.exit_code == 0
    assert result.stdout == "0\n0\n0\n1\n"


def test_usage_errors(L4_file):
    assert main(["cluster", "ksets", "--input", str(L4_file), "--k", "5"]) == 1
    assert main(["cluster", "ksets", "--no-such-flag"]) == 1
    assert main(["verify", "duality", "--input", str(L4_file)]) == 0


def test_bad_parameter_values_are_usage_errors(L4_file, capsys):
    assert main(["verify", "theorem1", "--input", str(L4_file), "--set", "a,b"]) == 1
    assert "comma-separated point indices" in capsys.readouterr().err
    assert main(["cluster", "hier", "--input", str(L4_file), "--policy", "fastest"]) == 1
    assert main(["cluster", "no-such-command"]) == 1


def test_malformed_input_is_a_data_error(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("0,1\n1,x\n")
    result = invoke("cluster", "hier", "--input", path)
    assert result.exit_code == 2
    assert main(["cluster", "hier", "--input", str(path)]) == 2


def test_hier_on_karate(karate_edges, tmp_path):
    dist = tmp_path / "karate.csv"
    assert invoke("dist", "geodesic", "--input", karate_edges, "--out", dist).exit_code == 0
    dendrogram = tmp_path / "tree.txt"
    result = invoke("cluster", "hier", "--input", dist, "--dendrogram", dendrogram)
    assert result.exit_code == 0
    finals = [line for line in dendrogram.read_text().splitlines() if line.startswith("final")]
    assert len(finals) == 3
    assert sum(line.endswith(": 8") for line in finals) == 1


def test_disconnected_edge_list_is_a_data_error(tmp_path):
    edges = tmp_path / "g.txt"
    edges.write_text("0 1\n2 3\n")
    result = invoke("dist", "resistance", "--input", edges)
    assert result.exit_code == 2
    assert invoke("dist", "resistance", "--input", edges, "--disconnected", "cap").exit_code == 0


def test_scores(L4_file, tmp_path):
    labels = tmp_path / "labels.txt"
    labels.write_text("0\n0\n1\n2\n")
    result = invoke("score", "modularity", "--input", L4_file, "--labels", labels)
    assert float(result.stdout) == pytest.approx(7.25)
    result = invoke("score", "modularity", "--input", L4_file, "--labels", labels, "--normalized")
    assert float(result.stdout) == pytest.approx(5.5)
    truth = tmp_path / "truth.txt"
    truth.write_text("1\n1\n0\n2\n")
    assert float(invoke("score", "nmi", "--labels", labels, "--truth", truth).stdout) == pytest.approx(1.0)


def test_cohesion_conversion(L4_file, tmp_path):
    out = tmp_path / "g.csv"
    assert invoke("dist", "cohesion", "--input", L4_file, "--out", out).exit_code == 0
    first = [float(v) for v in out.read_text().splitlines()[0].split(",")]
    assert first == pytest.approx([1.875, 0.375, -0.625, -1.625])
    assert invoke("verify", "cohesion", "--input", out).exit_code == 0


def test_sbm_generation_and_graph_cohesion(tmp_path):
    edges, labels = tmp_path / "sbm.txt", tmp_path / "sbm_labels.txt"
    result = invoke("gen", "sbm", "--n", 60, "--seed", 2, "--out", edges, "--labels-out", labels)
    assert result.exit_code == 0
    assert edges.read_text().startswith("# nodes:")
    result = invoke("cluster", "dual-ksets", "--from-graph", "--input", edges, "--k", 2, "--truth", labels)
    assert result.exit_code == 0
    assert len(result.stdout.splitlines()) == len(labels.read_text().splitlines())


def test_sweep_csv(tmp_path):
    out = tmp_path / "sweep.csv"
    result = invoke("sweep", "sbm", "--n", 80, "--graphs", 2, "--start", 5.0, "--stop", 5.0, "--out", out)
    assert result.exit_code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "delta,seed,nodes,nmi"
    assert [line.split(",")[:2] for line in lines[1:]] == [["5.0", "42"], ["5.0", "43"]]


@pytest.mark.slow
def test_rings_pipeline(tmp_path):
    points, dist, truth, report = (tmp_path / name for name in ("p.csv", "d.csv", "t.txt", "r.json"))
    assert invoke("gen", "rings", "--seed", 42, "--out", points).exit_code == 0
    assert invoke("dist", "geodesic", "--eps", 5, "--input", points, "--labels-out", truth,
                  "--out", dist).exit_code == 0
    result = invoke("cluster", "ksets", "--input", dist, "--k", 2, "--truth", truth, "--report", report)
    assert result.exit_code == 0
    assert json.loads(report.read_text())['NMI'] == pytest.approx(1.0)
