"""Experiment configuration: JSON file merged with command-line overrides.

Schema (every key optional; defaults below)::

    {
      "dataset": {"source": "blobs" | "moons" | "csv",
                  "path": str, "feature_columns": [int], "label_column": int,
                  "class_pair": [raw0, raw1] | null, "header": bool | null,
                  "delimiter": "," | "whitespace",
                  "n_per_class": int, "centers": [[x, y], [x, y]],
                  "sigma": float, "noise": float, "seed": int},
      "split": {"train_fraction": float, "seed": int, "stratified": bool},
      "classifier": "logistic" | "centroid",
      "estimator": {"mode": "exact" | "shots", "shots": int, "seed": int},
      "hyperparams": {"learning_rate": float, "batch_size": int, "epochs": int, "seed": int},
      "grid_resolution": int,
      "workers": int,
      "outputs": {"model": path, "metrics": path, "grid": path, "svg": path, "data": path}
    }
"""
from __future__ import annotations

import copy
import json
from pathlib import Path

from .errors import ConfigError

DEFAULTS = {
    "dataset": {
        "source": "blobs",
        "path": None,
        "feature_columns": [0, 1],
        "label_column": -1,
        "class_pair": None,
        "header": None,
        "delimiter": ",",
        "n_per_class": 40,
        "centers": [[-0.5, -0.5], [0.5, 0.5]],
        "sigma": 0.25,
        "noise": 0.1,
        "seed": 0,
    },
    "split": {"train_fraction": 0.7, "seed": 0, "stratified": True},
    "classifier": "logistic",
    "estimator": {"mode": "exact", "shots": None, "seed": 0},
    "hyperparams": {"learning_rate": 0.5, "batch_size": 16, "epochs": 100, "seed": 0},
    "grid_resolution": 40,
    "workers": 1,
    "outputs": {"model": None, "metrics": None, "grid": None, "svg": None, "data": None},
}

# Files the task must write.
REQUIRED_OUTPUTS = {
    "train": ("model", "metrics"),
    "evaluate": ("model", "metrics"),
    "boundary": ("model", "grid", "svg"),
    "gen-data": ("data",),
}


def deep_merge(base: dict, over: dict) -> dict:
    out = copy.deepcopy(base)
    for k, v in over.items():
        if isinstance(v, dict) and isinstance(out.get(k), dict):
            out[k] = deep_merge(out[k], v)
        else:
            out[k] = copy.deepcopy(v)
    return out


def set_path(cfg: dict, dotted: str, value) -> None:
    node = cfg
    *parents, leaf = dotted.split(".")
    for p in parents:
        node = node.setdefault(p, {})
    node[leaf] = value


def load_config(path=None, overrides: dict | None = None) -> dict:
    """Defaults, then the JSON file, then ``{dotted.path: value}`` overrides."""
    cfg = copy.deepcopy(DEFAULTS)
    if path is not None:
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except FileNotFoundError:
            raise ConfigError([("config", f"file not found: {path}")]) from None
        except json.JSONDecodeError as exc:
            raise ConfigError([("config", f"invalid JSON: {exc}")]) from None
        if not isinstance(data, dict):
            raise ConfigError([("config", "top level must be an object")])
        cfg = deep_merge(cfg, data)
    for dotted, value in (overrides or {}).items():
        if value is not None:
            set_path(cfg, dotted, value)
    return cfg


def _is_int(v):
    return isinstance(v, int) and not isinstance(v, bool)


def _is_num(v):
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def validate(cfg: dict, task: str) -> dict:
    """Raise :class:`ConfigError` listing every problem by field path."""
    bad = []
    ds = cfg["dataset"]
    if ds["source"] not in ("blobs", "moons", "csv"):
        bad.append(("dataset.source", f"must be blobs, moons or csv, got {ds['source']!r}"))
    if ds["source"] == "csv" and not ds.get("path"):
        bad.append(("dataset.path", "required when dataset.source is csv"))
    if ds["source"] in ("blobs", "moons") and not (_is_int(ds["n_per_class"]) and ds["n_per_class"] >= 1):
        bad.append(("dataset.n_per_class", "must be an integer >= 1"))
    if ds["source"] == "blobs" and not (_is_num(ds["sigma"]) and ds["sigma"] > 0):
        bad.append(("dataset.sigma", "must be > 0"))
    if ds["source"] == "moons" and not (_is_num(ds["noise"]) and ds["noise"] >= 0):
        bad.append(("dataset.noise", "must be >= 0"))
    if not _is_int(ds["seed"]):
        bad.append(("dataset.seed", "must be an integer"))
    sp = cfg["split"]
    if not (_is_num(sp["train_fraction"]) and 0 < sp["train_fraction"] < 1):
        bad.append(("split.train_fraction", "must be in (0, 1)"))
    if cfg["classifier"] not in ("logistic", "centroid"):
        bad.append(("classifier", f"must be logistic or centroid, got {cfg['classifier']!r}"))
    est = cfg["estimator"]
    if est["mode"] not in ("exact", "shots"):
        bad.append(("estimator.mode", "must be exact or shots"))
    if est["mode"] == "shots" and not (_is_int(est["shots"]) and est["shots"] >= 1):
        bad.append(("estimator.shots", "must be an integer >= 1 in shots mode"))
    if not (_is_int(est["seed"]) and est["seed"] >= 0):
        bad.append(("estimator.seed", "must be a non-negative integer"))
    hp = cfg["hyperparams"]
    if not (_is_num(hp["learning_rate"]) and hp["learning_rate"] > 0):
        bad.append(("hyperparams.learning_rate", "must be > 0"))
    for key in ("batch_size", "epochs"):
        if not (_is_int(hp[key]) and hp[key] >= 1):
            bad.append((f"hyperparams.{key}", "must be an integer >= 1"))
    if not (_is_int(cfg["grid_resolution"]) and cfg["grid_resolution"] >= 2):
        bad.append(("grid_resolution", "must be an integer >= 2"))
    if not (_is_int(cfg["workers"]) and cfg["workers"] >= 1):
        bad.append(("workers", "must be an integer >= 1"))
    for key in REQUIRED_OUTPUTS.get(task, ()):
        if not cfg["outputs"].get(key):
            bad.append((f"outputs.{key}", f"required for {task}"))
    if task == "gen-data" and ds["source"] == "csv":
        bad.append(("dataset.source", "gen-data needs a generator (blobs or moons)"))
    if bad:
        raise ConfigError(bad)
    return cfg
