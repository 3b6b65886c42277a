"""Data preparation and train/evaluate/boundary steps driven by a config dict."""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import datasets as D
from .classifiers import (
    LogisticHyperparams,
    LogisticModel,
    decide_centroid,
    decide_logistic,
    accuracy,
    fit_centroid,
    model_from_dict,
    predict_many,
    score,
    train_logistic,
)
from .errors import SizeError
from .hadamard import EstimatorConfig, evaluate_many


@dataclass
class PreparedData:
    train: D.Dataset
    test: D.Dataset
    minmax: D.MinMaxParams
    clamp_count: int


def load_dataset(ds_cfg: dict) -> D.Dataset:
    src = ds_cfg["source"]
    if src == "blobs":
        return D.make_blobs(ds_cfg["n_per_class"], ds_cfg["centers"], ds_cfg["sigma"], ds_cfg["seed"])
    if src == "moons":
        return D.make_moons(ds_cfg["n_per_class"], ds_cfg["noise"], ds_cfg["seed"])
    pair = ds_cfg["class_pair"]
    return D.load_csv(
        ds_cfg["path"],
        feature_columns=ds_cfg["feature_columns"],
        label_column=ds_cfg["label_column"],
        class_pair=tuple(pair) if pair is not None else None,
        header=ds_cfg["header"],
        delimiter=ds_cfg["delimiter"],
    )


def prepare(cfg: dict) -> PreparedData:
    """Load, split 70/30 (by default), balance for the centroid model, then min-max scale."""
    ds = load_dataset(cfg["dataset"])
    sp = cfg["split"]
    train, test = D.train_test_split(ds, D.SplitSpec(sp["train_fraction"], sp["seed"], sp["stratified"]))
    if cfg["classifier"] == "centroid":
        train = D.balance_classes(train, seed=sp["seed"])
    train, test, params, clamped = D.minmax_fit_transform(train, test)
    return PreparedData(train, test, params, clamped)


def estimator_from(cfg: dict) -> EstimatorConfig:
    est = cfg["estimator"]
    return EstimatorConfig(est["mode"], est["shots"] if est["mode"] == "shots" else None, est["seed"])


def fit(cfg: dict, data: PreparedData):
    est = estimator_from(cfg)
    workers = cfg["workers"]
    if cfg["classifier"] == "logistic":
        model, report = train_logistic(
            data.train, LogisticHyperparams(**cfg["hyperparams"]), est, test=data.test, workers=workers
        )
        return model, report.loss_curve, report.final_accuracy_train, report.final_accuracy_test
    model = fit_centroid(data.train, est, workers=workers)
    return (
        model,
        [],
        accuracy(model, data.train, est, workers),
        accuracy(model, data.test, est, workers),
    )


def dump_json(obj, path) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def run_train(cfg: dict) -> dict:
    data = prepare(cfg)
    model, curve, acc_train, acc_test = fit(cfg, data)
    model_doc = model.to_dict()
    model_doc["preprocessing"] = {"minmax": data.minmax.to_dict()}
    metrics = {
        "classifier": cfg["classifier"],
        "train_accuracy": acc_train,
        "test_accuracy": acc_test,
        "loss_curve": curve,
        "seed": {"split": cfg["split"]["seed"], "dataset": cfg["dataset"]["seed"],
                 "hyperparams": cfg["hyperparams"]["seed"], "estimator": cfg["estimator"]["seed"]},
        "estimator": cfg["estimator"],
        "n_train": len(data.train),
        "n_test": len(data.test),
        "test_clamp_count": data.clamp_count,
    }
    dump_json(model_doc, cfg["outputs"]["model"])
    dump_json(metrics, cfg["outputs"]["metrics"])
    return metrics


def load_model(path):
    return model_from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def run_evaluate(cfg: dict) -> dict:
    model = load_model(cfg["outputs"]["model"])
    data = prepare(cfg)
    est = estimator_from(cfg)
    pred = predict_many(model, data.test.X, est, cfg["workers"])
    metrics = {
        "test_accuracy": float(np.mean(pred == data.test.y)),
        "n_test": len(data.test),
        "predictions": pred.tolist(),
        "estimator": cfg["estimator"],
    }
    dump_json(metrics, cfg["outputs"]["metrics"])
    return metrics


def model_dim(model) -> int:
    return int(model.weights.shape[0]) if isinstance(model, LogisticModel) else int(model.c0.shape[0])


def boundary_grid(model, resolution: int, est: EstimatorConfig, workers=1) -> list:
    """``(x, y, label, score)`` per cell over [-1, 1]^2, rows by y then x."""
    if model_dim(model) != 2:
        raise SizeError(f"decision boundaries need a 2-feature model, got {model_dim(model)}")
    axis = np.linspace(-1.0, 1.0, resolution)
    cells = [(float(x), float(y)) for y in axis for x in axis]

    def one(k):
        x, y = cells[k]
        s = score(model, np.array([x, y]), est.derive(k))
        label = decide_logistic(s) if isinstance(model, LogisticModel) else decide_centroid(s)
        return x, y, label, s

    return evaluate_many(one, range(len(cells)), workers)


def write_grid_csv(rows, path) -> None:
    lines = ["x,y,label,score"]
    lines += [f"{x:.6f},{y:.6f},{label},{s:.6f}" for x, y, label, s in rows]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_grid_csv(path) -> list:
    rows = []
    for line in Path(path).read_text(encoding="utf-8").splitlines()[1:]:
        x, y, label, s = line.split(",")
        rows.append((float(x), float(y), int(label), float(s)))
    return rows


_FILL = ("#cfe2f3", "#f9d5c5")
_DOT = ("#1f5fa8", "#c0392b")


def boundary_svg(rows, resolution: int, points=None, size: int = 400) -> str:
    """Two-colour cell map over [-1, 1]^2 with optional ``(x, y, label)`` points on top."""
    cell = size / resolution

    def px(v):
        return (v + 1) / 2 * (size - cell) + cell / 2

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">'
    ]
    for x, y, label, _ in rows:
        out.append(
            f'<rect x="{px(x) - cell / 2:.3f}" y="{size - px(y) - cell / 2:.3f}" '
            f'width="{cell:.3f}" height="{cell:.3f}" fill="{_FILL[label]}"/>'
        )
    for x, y, label in points or ():
        out.append(
            f'<circle cx="{px(x):.3f}" cy="{size - px(y):.3f}" r="4" fill="{_DOT[int(label)]}" '
            'stroke="black" stroke-width="0.5"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def run_boundary(cfg: dict) -> dict:
    model = load_model(cfg["outputs"]["model"])
    est = estimator_from(cfg)
    res = cfg["grid_resolution"]
    rows = boundary_grid(model, res, est, cfg["workers"])
    data = prepare(cfg)
    pts = [(float(x[0]), float(x[1]), int(y)) for x, y in zip(data.test.X, data.test.y)]
    write_grid_csv(rows, cfg["outputs"]["grid"])
    Path(cfg["outputs"]["svg"]).write_text(boundary_svg(rows, res, pts), encoding="utf-8")
    return {"cells": len(rows), "grid": cfg["outputs"]["grid"], "svg": cfg["outputs"]["svg"]}


def run_gen_data(cfg: dict) -> dict:
    ds = load_dataset(cfg["dataset"])
    D.save_csv(ds, cfg["outputs"]["data"])
    return {"rows": len(ds), "path": cfg["outputs"]["data"]}
