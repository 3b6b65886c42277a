"""Binary classifiers whose inner products come from the bounded Hadamard test.

Both models have a pure-numpy twin (``classical_*``) used as a reference.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from functools import cached_property

import numpy as np

from .datasets import Dataset
from .errors import ArgumentError, BalanceError, DataError
from .hadamard import EXACT, BatchedGQHT, EstimatorConfig, evaluate_many, gqht


def sigmoid(z):
    """Logistic function, stable for large ``|z|``; works on scalars and arrays."""
    if np.ndim(z) == 0:
        z = float(z)
        if z >= 0:
            return 1.0 / (1.0 + math.exp(-z))
        e = math.exp(z)
        return e / (1.0 + e)
    z = np.asarray(z, dtype=float)
    e = np.exp(-np.abs(z))
    return np.where(z >= 0, 1.0 / (1.0 + e), e / (1.0 + e))


def bce_from_logit(z, y):
    """Binary cross-entropy of ``sigmoid(z)`` against ``y``, computed without ``log(0)``."""
    return np.logaddexp(0.0, z) - y * z


# Logistic regression


@dataclass
class LogisticHyperparams:
    learning_rate: float = 0.5
    batch_size: int = 16
    epochs: int = 100
    seed: int = 0

    def __post_init__(self):
        if self.learning_rate <= 0:
            raise ArgumentError(f"learning_rate must be > 0, got {self.learning_rate}")
        if self.batch_size < 1 or self.epochs < 1:
            raise ArgumentError("batch_size and epochs must be >= 1")


@dataclass
class LogisticModel:
    weights: np.ndarray
    bias: float = 0.0
    hyperparams: LogisticHyperparams = field(default_factory=LogisticHyperparams)

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=float)

    def to_dict(self) -> dict:
        hp = asdict(self.hyperparams)
        return {
            "kind": "logistic",
            "weights": self.weights.tolist(),
            "bias": float(self.bias),
            "hyperparams": hp,
            "seed": hp["seed"],
        }

    @classmethod
    def from_dict(cls, d) -> "LogisticModel":
        return cls(np.array(d["weights"], dtype=float), float(d["bias"]), LogisticHyperparams(**d["hyperparams"]))


@dataclass
class TrainReport:
    loss_curve: list
    final_accuracy_train: float
    final_accuracy_test: float | None
    inner_product_calls: int

    def to_dict(self) -> dict:
        return asdict(self)


def _augment(x):
    return np.append(np.asarray(x, dtype=float), 1.0)


def logit(x, model: LogisticModel, cfg: EstimatorConfig = EXACT, scale: float | None = None) -> float:
    """``<w, x> + w0`` through the Hadamard test on ``(w, w0)/s`` and ``(x, 1)``.

    ``s = max(1, max|w_i|, |w0|)`` keeps the weight vector inside [-1, 1];
    multiplying the result by ``s`` undoes it exactly.  Any larger ``scale``
    gives the same value.
    """
    x = np.asarray(x, dtype=float)
    if x.shape[0] != model.weights.shape[0]:
        raise ArgumentError(f"x has {x.shape[0]} features, model expects {model.weights.shape[0]}")
    w = np.append(model.weights, model.bias)
    s = max(1.0, float(np.max(np.abs(w))))
    if scale is not None:
        if scale < s:
            raise ArgumentError(f"scale {scale} is below the max-abs weight bound {s}")
        s = float(scale)
    return gqht(w / s, _augment(x), cfg).value * s


def hypothesis(x, model: LogisticModel, cfg: EstimatorConfig = EXACT, scale: float | None = None) -> float:
    return sigmoid(logit(x, model, cfg, scale))


def decide_logistic(h: float) -> int:
    return 1 if h > 0.5 else 0


def predict_logistic(model: LogisticModel, x, cfg: EstimatorConfig = EXACT) -> int:
    return decide_logistic(hypothesis(x, model, cfg))


def _check_training(ds: Dataset):
    if len(ds) == 0:
        raise ArgumentError("training set is empty")


def batch_loss(params, Xb, yb, cfg: EstimatorConfig = EXACT) -> float:
    """Mean BCE over a batch; ``params = (w_1..w_N, w0)``."""
    model = LogisticModel(params[:-1], params[-1])
    z = np.array([logit(x, model, cfg.derive(i)) for i, x in enumerate(Xb)])
    return float(np.mean(bce_from_logit(z, yb)))


def batch_gradient(params, Xb, yb, cfg: EstimatorConfig = EXACT) -> np.ndarray:
    """Gradient of :func:`batch_loss`: ``mean((h - y) * (x, 1))``."""
    model = LogisticModel(params[:-1], params[-1])
    h = np.array([hypothesis(x, model, cfg.derive(i)) for i, x in enumerate(Xb)])
    Xa = np.column_stack([Xb, np.ones(len(Xb))])
    return (h - yb) @ Xa / len(Xb)


def _batches(rng, m, size):
    perm = rng.permutation(m)
    return [perm[i : i + size] for i in range(0, m, size)]


def train_logistic(
    train: Dataset,
    hyperparams: LogisticHyperparams | None = None,
    cfg: EstimatorConfig = EXACT,
    test: Dataset | None = None,
    workers: int | None = None,
):
    """Mini-batch gradient descent on the BCE objective, starting from zero weights.

    Each epoch shuffles the training set with the seeded generator and walks it
    in batches of ``batch_size``.  Forward logits come from the Hadamard test;
    the gradient arithmetic is classical.  ``loss_curve[e]`` is the mean batch
    objective seen during epoch ``e``.
    """
    _check_training(train)
    hp = hyperparams or LogisticHyperparams()
    rng = np.random.default_rng(hp.seed)
    model = LogisticModel(np.zeros(train.num_features), 0.0, hp)
    Xa = np.column_stack([train.X, np.ones(len(train))])
    curve, calls = [], 0
    for epoch in range(hp.epochs):
        losses = []
        for b, idx in enumerate(_batches(rng, len(train), hp.batch_size)):
            snapshot = LogisticModel(model.weights.copy(), model.bias, hp)
            z = np.array(
                evaluate_many(
                    lambda k: logit(train.X[k], snapshot, cfg.derive(epoch, b, k)), idx.tolist(), workers
                )
            )
            calls += len(idx)
            yb = train.y[idx]
            losses.append(float(np.mean(bce_from_logit(z, yb))))
            grad = (sigmoid(z) - yb) @ Xa[idx] / len(idx)
            model.weights = model.weights - hp.learning_rate * grad[:-1]
            model.bias = float(model.bias - hp.learning_rate * grad[-1])
        curve.append(float(np.mean(losses)))
    report = TrainReport(
        curve,
        accuracy(model, train, cfg, workers=workers),
        accuracy(model, test, cfg, workers=workers) if test is not None and len(test) else None,
        calls,
    )
    return model, report


def classical_train_logistic(train: Dataset, hyperparams: LogisticHyperparams | None = None) -> LogisticModel:
    """Same optimizer and batch order as :func:`train_logistic` with ``X @ w + w0`` logits."""
    _check_training(train)
    hp = hyperparams or LogisticHyperparams()
    rng = np.random.default_rng(hp.seed)
    w, w0 = np.zeros(train.num_features), 0.0
    for _ in range(hp.epochs):
        for idx in _batches(rng, len(train), hp.batch_size):
            Xb, yb = train.X[idx], train.y[idx]
            r = sigmoid(Xb @ w + w0) - yb
            w = w - hp.learning_rate * (r @ Xb) / len(idx)
            w0 = float(w0 - hp.learning_rate * r.mean())
    return LogisticModel(w, w0, hp)


def classical_predict_logistic(model: LogisticModel, X) -> np.ndarray:
    return (sigmoid(np.asarray(X) @ model.weights + model.bias) > 0.5).astype(int)


# Centroid classifier


def _pad_to_pow2_rows(X):
    m = X.shape[0]
    size = 1 << (m - 1).bit_length()
    out = np.zeros((size, X.shape[1]))
    out[:m] = X
    return out


@dataclass
class CentroidModel:
    """Per-class means and the offset that makes the kernel form match ``sgn<x - c_mid, w_diff>``.

    ``class0``/``class1`` keep the training points so scores can be expanded
    into inner products with them.
    """

    c0: np.ndarray
    c1: np.ndarray
    offset_b: float
    class0: np.ndarray
    class1: np.ndarray

    def __post_init__(self):
        for name in ("c0", "c1", "class0", "class1"):
            setattr(self, name, np.asarray(getattr(self, name), dtype=float))

    @property
    def w_diff(self) -> np.ndarray:
        return self.c0 - self.c1

    @property
    def c_mid(self) -> np.ndarray:
        return (self.c0 + self.c1) / 2

    @property
    def per_class(self) -> int:
        return self.class0.shape[0]

    @cached_property
    def engines(self):
        """Batched inner-product engines over each class, zero-padded to ``2^p`` rows."""
        return BatchedGQHT(_pad_to_pow2_rows(self.class0)), BatchedGQHT(_pad_to_pow2_rows(self.class1))

    def to_dict(self) -> dict:
        return {
            "kind": "centroid",
            "c0": self.c0.tolist(),
            "c1": self.c1.tolist(),
            "b": float(self.offset_b),
            "class0": self.class0.tolist(),
            "class1": self.class1.tolist(),
        }

    @classmethod
    def from_dict(cls, d) -> "CentroidModel":
        return cls(d["c0"], d["c1"], float(d["b"]), d["class0"], d["class1"])


def _split_classes(train: Dataset):
    _check_training(train)
    n0, n1 = train.class_counts()
    if n0 == 0 or n1 == 0:
        raise DataError(f"both classes must be present, counts are {n0} and {n1}")
    if n0 != n1:
        raise BalanceError(f"classes are unbalanced ({n0} vs {n1}); use datasets.balance_classes first")
    return train.X[train.y == 0], train.X[train.y == 1]


def fit_centroid(train: Dataset, cfg: EstimatorConfig = EXACT, workers: int | None = None) -> CentroidModel:
    """Centroids plus ``b = (S1 - S0) / (2 M^2)``, ``S_k`` the within-class inner-product sum.

    Each ``S_k`` is gathered with one batched test per training point of the
    class.
    """
    A, B = _split_classes(train)
    m = A.shape[0]
    model = CentroidModel(A.mean(axis=0), B.mean(axis=0), 0.0, A, B)
    e0, e1 = model.engines
    s0 = sum(evaluate_many(lambda k: e0(A[k], cfg.derive(0, k)).value, range(m), workers))
    s1 = sum(evaluate_many(lambda k: e1(B[k], cfg.derive(1, k)).value, range(m), workers))
    model.offset_b = (s1 - s0) / (2 * m * m)
    return model


def centroid_score(model: CentroidModel, x, cfg: EstimatorConfig = EXACT) -> float:
    """``mean_0 <x_m, x> - mean_1 <x_m, x> + b``; positive means class 0."""
    e0, e1 = model.engines
    m = model.per_class
    return (e0(x, cfg.derive(0)).value - e1(x, cfg.derive(1)).value) / m + model.offset_b


def decide_centroid(score: float) -> int:
    return 0 if score > 0 else 1


def predict_centroid(model: CentroidModel, x, cfg: EstimatorConfig = EXACT) -> int:
    return decide_centroid(centroid_score(model, x, cfg))


def classical_fit_centroid(train: Dataset) -> CentroidModel:
    A, B = _split_classes(train)
    c0, c1 = A.mean(axis=0), B.mean(axis=0)
    return CentroidModel(c0, c1, 0.5 * (c1 @ c1 - c0 @ c0), A, B)


def classical_centroid_score(model: CentroidModel, X) -> np.ndarray:
    """``<x - c_mid, w_diff>``, the geometric form of the decision."""
    return (np.atleast_2d(X) - model.c_mid) @ model.w_diff


def classical_kernel_score(model: CentroidModel, X) -> np.ndarray:
    """Kernel-expanded score with classical inner products."""
    X = np.atleast_2d(X)
    m = model.per_class
    g0 = (X @ model.class0.T).sum(axis=1) / m
    g1 = (X @ model.class1.T).sum(axis=1) / m
    s0 = (model.class0 @ model.class0.T).sum() / m**2
    s1 = (model.class1 @ model.class1.T).sum() / m**2
    return g0 - g1 + 0.5 * (s1 - s0)


# Shared


def predict(model, x, cfg: EstimatorConfig = EXACT) -> int:
    if isinstance(model, LogisticModel):
        return predict_logistic(model, x, cfg)
    if isinstance(model, CentroidModel):
        return decide_centroid(centroid_score(model, x, cfg))
    raise ArgumentError(f"unknown model type {type(model).__name__}")


def score(model, x, cfg: EstimatorConfig = EXACT) -> float:
    """Logistic: the hypothesis value.  Centroid: the signed score."""
    if isinstance(model, LogisticModel):
        return hypothesis(x, model, cfg)
    return centroid_score(model, x, cfg)


def predict_many(model, X, cfg: EstimatorConfig = EXACT, workers: int | None = None) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    labels = evaluate_many(lambda k: predict(model, X[k], cfg.derive(k)), range(X.shape[0]), workers)
    return np.array(labels, dtype=int)


def accuracy(model, test: Dataset, cfg: EstimatorConfig = EXACT, workers: int | None = None) -> float:
    if test is None or len(test) == 0:
        raise ArgumentError("accuracy needs a non-empty test set")
    return float(np.mean(predict_many(model, test.X, cfg, workers) == test.y))


def model_from_dict(d):
    kind = d.get("kind")
    if kind == "logistic":
        return LogisticModel.from_dict(d)
    if kind == "centroid":
        return CentroidModel.from_dict(d)
    raise ArgumentError(f"unknown model kind {kind!r}")
