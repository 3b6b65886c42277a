"""Dataset loading, synthesis and preprocessing for binary classification."""
from __future__ import annotations

import csv
import io
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple

import numpy as np

from .errors import DataError, ParseError

log = logging.getLogger(__name__)


class LabeledPoint(NamedTuple):
    features: np.ndarray
    label: int


@dataclass
class Dataset:
    X: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        self.X = np.asarray(self.X, dtype=float)
        self.y = np.asarray(self.y, dtype=int)
        if self.X.ndim != 2 or self.X.shape[0] != self.y.shape[0]:
            raise DataError(f"shape mismatch: X {self.X.shape}, y {self.y.shape}")
        if not np.all(np.isfinite(self.X)):
            raise DataError("features must be finite")
        if not np.isin(self.y, (0, 1)).all():
            raise DataError(f"labels must be 0 or 1, got {sorted(set(self.y.tolist()))}")

    def __len__(self):
        return self.X.shape[0]

    def __iter__(self):
        for x, label in zip(self.X, self.y):
            yield LabeledPoint(x, int(label))

    @property
    def num_features(self) -> int:
        return self.X.shape[1]

    def class_counts(self) -> tuple:
        return int(np.sum(self.y == 0)), int(np.sum(self.y == 1))

    def subset(self, idx) -> "Dataset":
        return Dataset(self.X[idx], self.y[idx])


@dataclass
class SplitSpec:
    train_fraction: float = 0.7
    seed: int = 0
    stratified: bool = True

    def __post_init__(self):
        if not 0 < self.train_fraction < 1:
            raise DataError(f"train_fraction must be in (0, 1), got {self.train_fraction}")


@dataclass
class MinMaxParams:
    mins: np.ndarray
    maxs: np.ndarray
    low: float = -1.0
    high: float = 1.0

    @classmethod
    def fit(cls, X, low=-1.0, high=1.0) -> "MinMaxParams":
        X = np.asarray(X, dtype=float)
        if X.shape[0] < 2:
            raise DataError("min-max scaling needs at least two points")
        mins, maxs = X.min(axis=0), X.max(axis=0)
        const = np.flatnonzero(maxs <= mins)
        if const.size:
            raise DataError(f"feature {int(const[0])} is constant; drop it before scaling")
        return cls(mins, maxs, low, high)

    def transform(self, X, clamp=True):
        """Scaled copy of ``X`` and the number of entries clamped into range."""
        X = np.asarray(X, dtype=float)
        out = (self.high - self.low) * (X - self.mins) / (self.maxs - self.mins) + self.low
        clamped = 0
        if clamp:
            outside = (out < self.low) | (out > self.high)
            clamped = int(outside.sum())
            out = np.clip(out, self.low, self.high)
        return out, clamped

    def to_dict(self) -> dict:
        return {"mins": self.mins.tolist(), "maxs": self.maxs.tolist(), "low": self.low, "high": self.high}


def minmax_fit_transform(train: Dataset, test: Dataset | None = None):
    """Fit min-max to [-1, 1] on ``train`` and apply it to both splits.

    Returns ``(train, test, params, clamp_count)``; ``clamp_count`` counts test
    entries pushed back into range.
    """
    params = MinMaxParams.fit(train.X)
    Xtr, _ = params.transform(train.X)
    out_test, clamped = None, 0
    if test is not None:
        Xte, clamped = params.transform(test.X)
        out_test = Dataset(Xte, test.y)
        if clamped:
            log.info("clamped %d test entries into [-1, 1]", clamped)
    return Dataset(Xtr, train.y), out_test, params, clamped


def _label_matches(token: str, cls) -> bool:
    if token == str(cls).strip():
        return True
    try:
        return float(token) == float(cls)
    except (TypeError, ValueError):
        return False


def load_csv(
    path,
    feature_columns=(0, 1),
    label_column=-1,
    class_pair=None,
    header=None,
    delimiter=",",
) -> Dataset:
    """Read a labelled table and keep two classes.

    ``class_pair = (raw0, raw1)`` maps those raw labels (text or numbers) to 0
    and 1 and drops every other row; with ``None`` the labels must already be
    0/1.  ``header=None`` skips the first row when its features are not
    numeric.  ``delimiter="whitespace"`` splits on runs of blanks.
    """
    text = Path(path).read_text(encoding="utf-8")
    if delimiter == "whitespace":
        rows = [(i, line.split()) for i, line in enumerate(text.splitlines(), 1)]
    else:
        reader = csv.reader(io.StringIO(text), delimiter=delimiter)
        rows = [(reader.line_num, [c.strip() for c in row]) for row in reader]
    rows = [(i, r) for i, r in rows if r and any(r)]
    if not rows:
        raise ParseError(f"{path} contains no data rows")

    width = len(rows[0][1])
    cols = list(feature_columns) + [label_column]
    for c in cols:
        if not -width <= c < width:
            raise DataError(f"column {c} out of range for {width}-column file")
    if header is None:
        try:
            [float(rows[0][1][c]) for c in feature_columns]
            header = False
        except ValueError:
            header = True
    if header:
        rows = rows[1:]
    if not rows:
        raise ParseError(f"{path} contains a header but no data rows")

    X, y = [], []
    seen = [False, False]
    for line, row in rows:
        if len(row) != width:
            raise ParseError(f"expected {width} fields, got {len(row)}", line)
        token = row[label_column]
        if class_pair is None:
            try:
                label = int(float(token))
            except ValueError:
                raise ParseError(f"non-numeric label {token!r}", line) from None
            if label not in (0, 1):
                raise DataError(f"line {line}: label {token!r} is not 0/1; pass class_pair")
        elif _label_matches(token, class_pair[0]):
            label = 0
        elif _label_matches(token, class_pair[1]):
            label = 1
        else:
            continue
        try:
            X.append([float(row[c]) for c in feature_columns])
        except ValueError as exc:
            raise ParseError(str(exc), line) from None
        y.append(label)
        seen[label] = True

    if class_pair is not None:
        for label, raw in enumerate(class_pair):
            if not seen[label]:
                raise DataError(f"class {raw!r} does not occur in {path}")
    if not X:
        raise DataError(f"no rows left in {path}")
    return Dataset(np.array(X), np.array(y))


def save_csv(ds: Dataset, path) -> None:
    """Write ``f0,...,f{N-1},label`` with a header row."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([f"f{i}" for i in range(ds.num_features)] + ["label"])
        for x, label in zip(ds.X, ds.y):
            w.writerow([repr(float(v)) for v in x] + [int(label)])


def make_blobs(n_per_class: int, centers=((-0.5, -0.5), (0.5, 0.5)), sigma=0.2, seed=0) -> Dataset:
    """Isotropic Gaussian clusters, class ``k`` around ``centers[k]``."""
    if sigma <= 0:
        raise DataError(f"sigma must be > 0, got {sigma}")
    if n_per_class < 1:
        raise DataError(f"n_per_class must be >= 1, got {n_per_class}")
    centers = np.asarray(centers, dtype=float)
    if centers.shape != (2, 2):
        raise DataError(f"need two 2D centers, got shape {centers.shape}")
    rng = np.random.default_rng(seed)
    X = np.concatenate([c + sigma * rng.standard_normal((n_per_class, 2)) for c in centers])
    y = np.repeat([0, 1], n_per_class)
    return Dataset(X, y)


def make_moons(n_per_class: int, noise_sigma=0.1, seed=0) -> Dataset:
    """Two interleaved half circles with optional Gaussian noise."""
    if noise_sigma < 0:
        raise DataError(f"noise_sigma must be >= 0, got {noise_sigma}")
    if n_per_class < 1:
        raise DataError(f"n_per_class must be >= 1, got {n_per_class}")
    rng = np.random.default_rng(seed)
    t0 = rng.uniform(0, np.pi, n_per_class)
    t1 = rng.uniform(0, np.pi, n_per_class)
    upper = np.column_stack([np.cos(t0), np.sin(t0)])
    lower = np.column_stack([1 - np.cos(t1), 0.5 - np.sin(t1)])
    X = np.concatenate([upper, lower])
    if noise_sigma > 0:
        X = X + noise_sigma * rng.standard_normal(X.shape)
    return Dataset(X, np.repeat([0, 1], n_per_class))


def train_test_split(ds: Dataset, spec: SplitSpec | None = None):
    spec = spec or SplitSpec()
    rng = np.random.default_rng(spec.seed)
    if spec.stratified:
        picked = []
        for label in (0, 1):
            idx = np.flatnonzero(ds.y == label)
            if idx.size < 2:
                raise DataError(f"class {label} has {idx.size} point(s); stratified split needs 2")
            idx = rng.permutation(idx)
            picked.append(idx[: int(round(spec.train_fraction * idx.size))])
        train_idx = np.sort(np.concatenate(picked))
    else:
        perm = rng.permutation(len(ds))
        train_idx = np.sort(perm[: int(round(spec.train_fraction * len(ds)))])
    mask = np.zeros(len(ds), dtype=bool)
    mask[train_idx] = True
    return ds.subset(mask), ds.subset(~mask)


def balance_classes(ds: Dataset, seed=0) -> Dataset:
    """Subsample the majority class down to the minority count; order is kept."""
    n0, n1 = ds.class_counts()
    if n0 == 0 or n1 == 0:
        raise DataError(f"both classes must be present, counts are {n0} and {n1}")
    if n0 == n1:
        return ds.subset(np.arange(len(ds)))
    major = 0 if n0 > n1 else 1
    idx = np.flatnonzero(ds.y == major)
    rng = np.random.default_rng(seed)
    drop = rng.choice(idx, size=idx.size - min(n0, n1), replace=False)
    keep = np.ones(len(ds), dtype=bool)
    keep[drop] = False
    return ds.subset(keep)


def pad_to_pow2(X) -> np.ndarray:
    X = np.atleast_2d(np.asarray(X, dtype=float))
    n = X.shape[1]
    width = 1 << (n - 1).bit_length() if n > 0 else 1
    out = np.zeros((X.shape[0], width))
    out[:, :n] = X
    return out
