"""Hadamard-test inner products.

``gqht`` estimates ``<x_p, x_q>`` for bounded real vectors: encode the pair,
C-swap the component qubit with a fresh utility qubit in the ancilla-1 branch,
apply H to the ancilla and read its ``<Z>``, which equals ``<x_p, x_q> / 2^n``.
``qht`` is the amplitude-encoded baseline whose ``<Z>`` is the cosine
similarity of the two inputs.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, replace

import numpy as np

from .circuit import Circuit
from .encoding import (
    _check_batch,
    _check_normalized,
    amplitude_gates,
    as_bounded,
    encode_batch,
    encode_pair,
    encode_test,
    encode_training,
    num_index_qubits,
)
from .errors import ArgumentError
from .statevector import CSWAP, H, expectation_z, sample_z

MODES = ("exact", "shots")


@dataclass(frozen=True)
class EstimatorConfig:
    mode: str = "exact"
    shots: int | None = None
    seed: int = 0

    def __post_init__(self):
        if self.mode not in MODES:
            raise ArgumentError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.mode == "shots" and (self.shots is None or int(self.shots) < 1):
            raise ArgumentError(f"shots mode needs shots >= 1, got {self.shots}")
        if not 0 <= int(self.seed) < 1 << 64:
            raise ArgumentError(f"seed must fit in 64 unsigned bits, got {self.seed}")

    @classmethod
    def exact(cls):
        return cls("exact")

    @classmethod
    def sampled(cls, shots: int, seed: int = 0):
        return cls("shots", int(shots), int(seed))

    def derive(self, *keys) -> "EstimatorConfig":
        """Config with an independent seed for call ``keys``; exact mode is returned as is."""
        if self.mode == "exact":
            return self
        ss = np.random.SeedSequence([int(self.seed), *map(int, keys)])
        return replace(self, seed=int(ss.generate_state(1, np.uint64)[0]))


EXACT = EstimatorConfig()


@dataclass(frozen=True)
class InnerProductResult:
    value: float
    raw_expectation: float
    scale: float
    stderr: float
    shots: int | None = None
    seed: int | None = None

    def to_dict(self) -> dict:
        return asdict(self)


def _readout(state, qubit: int, scale: float, cfg: EstimatorConfig) -> InnerProductResult:
    if cfg.mode == "exact":
        z = expectation_z(state, qubit)
        return InnerProductResult(scale * z, z, scale, 0.0)
    rec = sample_z(state, qubit, cfg.shots, cfg.seed)
    z = rec.estimate
    stderr = scale * math.sqrt(max(0.0, 1 - z * z) / cfg.shots)
    return InnerProductResult(scale * z, z, scale, stderr, cfg.shots, cfg.seed)


def interference_tail(layout) -> list:
    return [CSWAP(layout.ancilla, layout.component, layout.utility), H(layout.ancilla)]


def gqht_circuit(x_p, x_q) -> Circuit:
    circ = encode_pair(x_p, x_q)
    return circ.extend(interference_tail(circ.layout))


def gqht(x_p, x_q, cfg: EstimatorConfig = EXACT) -> InnerProductResult:
    """Inner product of two bounded vectors; ``value = 2^n <Z>``."""
    circ = gqht_circuit(x_p, x_q)
    n = len(circ.layout.component_index)
    return _readout(circ.run(), circ.layout.ancilla, float(1 << n), cfg)


class BatchedGQHT:
    """Sum of inner products between a fixed training set and test points.

    The training half of the circuit is simulated once; each test point only
    adds its own controlled encoding and the interference tail.
    """

    def __init__(self, training):
        self.training = [as_bounded(v) for v in training]
        prefix = encode_training(self.training)
        self.layout = prefix.layout
        self.num_qubits = prefix.num_qubits
        self._prefix_state = prefix.run()
        self.scale = float(1 << (len(self.layout.sample_index) + len(self.layout.component_index)))

    def circuit(self, test) -> Circuit:
        _check_batch(self.training, test)
        circ = Circuit(self.num_qubits, layout=self.layout)
        circ.extend(encode_test(as_bounded(test), self.layout))
        return circ.extend(interference_tail(self.layout))

    def __call__(self, test, cfg: EstimatorConfig = EXACT) -> InnerProductResult:
        state = self.circuit(test).run(self._prefix_state)
        return _readout(state, self.layout.ancilla, self.scale, cfg)


def gqht_batched_circuit(training, test) -> Circuit:
    circ = encode_batch(training, test)
    return circ.extend(interference_tail(circ.layout))


def gqht_batched(training, test, cfg: EstimatorConfig = EXACT) -> InnerProductResult:
    """``sum_m <x_m, test>`` over ``2^p`` training vectors; ``value = 2^(p+n) <Z>``."""
    circ = gqht_batched_circuit(training, test)
    lay = circ.layout
    scale = float(1 << (len(lay.sample_index) + len(lay.component_index)))
    return _readout(circ.run(), lay.ancilla, scale, cfg)


def qht_circuit(x_p, x_q) -> Circuit:
    """Amplitude-encoded Hadamard test on ``n + 1`` qubits (no utility qubit, no C-swap).

    Inputs are zero-padded to a power-of-two length, which keeps them unit norm.

    ``(|0>|x_p> + |1>|x_q>)/sqrt(2)`` is the amplitude encoding of the stacked
    vector ``(x_p, x_q)/sqrt(2)``; its first tree level is an even split of the
    ancilla.
    """
    x_p, x_q = np.asarray(x_p, dtype=float).reshape(-1), np.asarray(x_q, dtype=float).reshape(-1)
    if x_p.size != x_q.size:
        raise ArgumentError(f"dimensions differ: {x_p.size} vs {x_q.size}")
    n = num_index_qubits(x_p.size)
    width = 1 << n
    x_p = _check_normalized(np.pad(x_p, (0, width - x_p.size)))
    x_q = _check_normalized(np.pad(x_q, (0, width - x_q.size)))
    joint = np.concatenate([x_p, x_q]) / math.sqrt(2)
    circ = Circuit(n + 1)
    circ.extend(amplitude_gates(joint, list(range(n + 1))))
    circ.append(H(0))
    return circ


def qht(x_p, x_q, cfg: EstimatorConfig = EXACT) -> InnerProductResult:
    """Cosine similarity of two unit vectors; ``value = <Z>``."""
    circ = qht_circuit(x_p, x_q)
    return _readout(circ.run(), 0, 1.0, cfg)


def compare_qubit_budget(dim: int) -> dict:
    n = num_index_qubits(dim)
    return {"gqht_qubits": n + 3, "qht_qubits": n + 1}


def evaluate_many(fn, items, workers: int | None = None) -> list:
    """``[fn(item) for item in items]``, optionally on a thread pool; order is kept."""
    items = list(items)
    if not workers or workers <= 1 or len(items) < 2:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
