import json
import subprocess
import sys

import numpy as np
import pytest

from gqht.cli import main, parse_vector
from gqht.classifiers import CentroidModel, decide_centroid, predict, score
from gqht.errors import ParseError
from gqht.experiment import load_model, read_grid_csv
from gqht.hadamard import EXACT


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_inner_worked_example(capsys):
    code, out, _ = run(capsys, "inner", "--p", "0.1,0.25,-1,0.9", "--q", "-1,0.75,0.65,0.89", "--exact")
    assert code == 0
    res = json.loads(out)
    assert abs(res["raw_expectation"] - 0.059625) < 1e-9
    assert {"value", "raw_expectation", "scale", "stderr"} <= set(res)


def test_inner_unit(capsys):
    code, out, _ = run(capsys, "inner", "--p", "1,0", "--q", "1,0")
    assert code == 0 and abs(json.loads(out)["value"] - 1) < 1e-12


@pytest.mark.parametrize(
    "argv",
    [
        ["inner", "--p", "2,0", "--q", "1,0"],
        ["inner", "--p", "a,b", "--q", "1,0"],
        ["inner", "--p", "0.1"],
        ["inner", "--p", "0.1", "--q", "0.2", "--shots", "0"],
        ["batch-inner", "--train", "0.1,0.2", "--train", "0.1,0.2", "--train", "0.3,0.1", "--test", "0.1,0.1"],
        ["frobnicate"],
    ],
)
def test_usage_and_domain_errors_exit_1(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 1 and out == "" and err.startswith("error:")


def test_inner_shots(capsys):
    argv = ["inner", "--p", "0.5,0.5", "--q", "0.5,-0.25", "--shots", "1000", "--seed", "4"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b
    res = json.loads(a)
    assert res["shots"] == 1000 and res["stderr"] > 0


def test_batch_inner(capsys):
    code, out, _ = run(
        capsys, "batch-inner",
        "--train", "1.0,0.25,-0.36,-0.98", "--train", "-0.1,0.37,0.65,0.45",
        "--test", "0.75,0.1,0.25,0.25",
    )
    res = json.loads(out)
    assert code == 0 and abs(res["raw_expectation"] - 0.084625) < 1e-9 and abs(res["value"] - 0.677) < 1e-9


def test_repro(capsys):
    code, out, _ = run(capsys, "repro")
    report = json.loads(out)
    assert code == 0 and report["all_pass"]
    pair, batch = report["cases"]
    assert abs(pair["computed"] - 0.059625) < 1e-9 and pair["status"] == "PASS"
    assert abs(batch["computed"] - 0.084625) < 1e-9 and batch["published"] == 0.069
    assert batch["published_matches_oracle"] is False and "0.069" in batch["note"]


def test_parse_vector():
    assert parse_vector("1, -0.5,0").tolist() == [1, -0.5, 0]
    with pytest.raises(ParseError):
        parse_vector(",")


def test_train_evaluate_blobs(tmp_path, capsys):
    model, metrics = tmp_path / "m.json", tmp_path / "metrics.json"
    code, out, _ = run(capsys, "train", "--dataset", "blobs", "--model", str(model), "--metrics", str(metrics))
    assert code == 0
    doc = json.loads(metrics.read_text())
    assert doc["test_accuracy"] >= 0.95
    assert {"train_accuracy", "test_accuracy", "loss_curve", "seed", "estimator"} <= set(doc)
    assert len(doc["loss_curve"]) == 100
    assert json.loads(out) == doc
    m = json.loads(model.read_text())
    assert m["kind"] == "logistic" and len(m["weights"]) == 2
    eval_metrics = tmp_path / "eval.json"
    code, _, _ = run(capsys, "evaluate", "--model", str(model), "--metrics", str(eval_metrics))
    assert code == 0
    assert json.loads(eval_metrics.read_text())["test_accuracy"] == doc["test_accuracy"]


def test_train_iris_centroid(tmp_path, capsys, iris_path):
    model, metrics = tmp_path / "m.json", tmp_path / "metrics.json"
    code, _, err = run(
        capsys, "train", "--dataset", "csv", "--data-path", str(iris_path), "--label-column", "4",
        "--class-pair", "Iris-setosa,Iris-versicolor", "--classifier", "centroid",
        "--model", str(model), "--metrics", str(metrics),
    )
    assert code == 0, err
    doc = json.loads(metrics.read_text())
    assert doc["n_train"] + doc["n_test"] == 100 and doc["test_accuracy"] > 0.9


def test_missing_data_path_names_field(tmp_path, capsys):
    code, _, err = run(
        capsys, "train", "--dataset", "csv", "--model", str(tmp_path / "m"), "--metrics", str(tmp_path / "x")
    )
    assert code == 1 and "dataset.path" in err


def test_missing_outputs_and_bad_config(tmp_path, capsys):
    code, _, err = run(capsys, "train")
    assert code == 1 and "outputs.model" in err and "outputs.metrics" in err
    cfg = tmp_path / "c.json"
    cfg.write_text("{not json")
    code, _, err = run(capsys, "gen-data", "--config", str(cfg), "--out", str(tmp_path / "d.csv"))
    assert code == 1 and "invalid JSON" in err
    code, _, err = run(capsys, "gen-data", "--sigma", "-1", "--out", str(tmp_path / "d.csv"))
    assert code == 1 and "dataset.sigma" in err


def test_config_file_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"dataset": {"source": "moons", "n_per_class": 5, "noise": 0.0}}))
    out = tmp_path / "d.csv"
    code, _, _ = run(capsys, "gen-data", "--config", str(cfg), "--n-per-class", "10", "--out", str(out))
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "f0,f1,label" and len(lines) == 21


def test_gen_data_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run(capsys, "gen-data", "--dataset", "moons", "--data-seed", "3", "--out", str(a))
    run(capsys, "gen-data", "--dataset", "moons", "--data-seed", "3", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def _train(capsys, tmp_path, *extra):
    model, metrics = tmp_path / "m.json", tmp_path / "metrics.json"
    code, _, err = run(capsys, "train", "--model", str(model), "--metrics", str(metrics), *extra)
    assert code == 0, err
    return model


def test_boundary_small_grid(tmp_path, capsys):
    model = _train(capsys, tmp_path, "--epochs", "5")
    grid, svg = tmp_path / "g.csv", tmp_path / "b.svg"
    code, _, err = run(
        capsys, "boundary", "--model", str(model), "--grid", str(grid), "--svg", str(svg), "--grid-resolution", "2"
    )
    assert code == 0, err
    lines = grid.read_text().splitlines()
    assert lines[0] == "x,y,label,score" and len(lines) == 5
    assert lines[1].startswith("-1.000000,-1.000000,")
    assert svg.read_text().startswith("<svg") and svg.read_text().count("<rect") == 4


def test_boundary_labels_equal_pointwise(tmp_path, capsys):
    model = _train(capsys, tmp_path, "--dataset", "moons", "--classifier", "centroid")
    grid, svg = tmp_path / "g.csv", tmp_path / "b.svg"
    code, _, _ = run(
        capsys, "boundary", "--dataset", "moons", "--classifier", "centroid", "--model", str(model),
        "--grid", str(grid), "--svg", str(svg), "--grid-resolution", "9", "--workers", "4",
    )
    assert code == 0
    m = load_model(model)
    assert isinstance(m, CentroidModel)
    rows = read_grid_csv(grid)
    assert len(rows) == 81
    for x, y, label, s in rows:
        pt = np.array([x, y])
        assert label == predict(m, pt, EXACT) == decide_centroid(score(m, pt))
        assert abs(s - score(m, pt)) < 5e-7


def test_boundary_symmetric_toy_bisector(tmp_path, capsys):
    data = tmp_path / "toy.csv"
    data.write_text("f0,f1,label\n-0.6,-0.6,0\n-0.4,-0.4,0\n0.6,0.6,1\n0.4,0.4,1\n-0.5,-0.5,0\n0.5,0.5,1\n-0.55,-0.45,0\n0.45,0.55,1\n")
    model = _train(capsys, tmp_path, "--dataset", "csv", "--data-path", str(data), "--classifier", "centroid",
                   "--train-fraction", "0.5")
    m = load_model(model)
    grid, svg = tmp_path / "g.csv", tmp_path / "b.svg"
    run(capsys, "boundary", "--dataset", "csv", "--data-path", str(data), "--classifier", "centroid",
        "--model", str(model), "--grid", str(grid), "--svg", str(svg), "--grid-resolution", "11")
    for x, y, label, _ in read_grid_csv(grid):
        side = (np.array([x, y]) - m.c_mid) @ m.w_diff
        if abs(side) > 1e-6:
            assert label == (0 if side > 0 else 1)


def test_boundary_rejects_non_2d(tmp_path, capsys, iris_path):
    model = _train(capsys, tmp_path, "--dataset", "csv", "--data-path", str(iris_path), "--label-column", "4",
                   "--class-pair", "Iris-setosa,Iris-versicolor", "--feature-columns", "0,1,2", "--epochs", "2")
    code, _, err = run(capsys, "boundary", "--dataset", "csv", "--data-path", str(iris_path), "--label-column", "4",
                       "--class-pair", "Iris-setosa,Iris-versicolor", "--feature-columns", "0,1,2",
                       "--model", str(model), "--grid", str(tmp_path / "g"), "--svg", str(tmp_path / "s"))
    assert code == 1 and "2-feature" in err


def test_export_qasm(tmp_path, capsys):
    code, out, _ = run(capsys, "export-qasm", "--p", "0.1,0.25,-1,0.9", "--q", "-1,0.75,0.65,0.89")
    assert code == 0
    lines = out.splitlines()
    assert lines[:3] == ["OPENQASM 2.0;", 'include "qelib1.inc";', "qreg q[5];"]
    assert lines[-2:] == ["cswap q[0],q[3],q[4];", "h q[0];"]
    path = tmp_path / "b.qasm"
    code, _, _ = run(capsys, "export-qasm", "--train", "1,0", "--train", "0,1", "--test", "0.5,0.5",
                     "--output", str(path))
    assert code == 0 and "qreg q[5];" in path.read_text()
    code, _, err = run(capsys, "export-qasm", "--p", "0.1")
    assert code == 1


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "gqht", "inner", "--p", "1,0", "--q", "0,1"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and abs(json.loads(proc.stdout)["value"]) < 1e-12
