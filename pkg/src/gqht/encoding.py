"""Feature maps: the bounded-vector encoding and plain amplitude encoding.

Bounded encoding of ``x`` (components in [-1, 1], zero-padded to ``2^n``)::

    |x> = 2^{-n/2} sum_j |j> (x_j |0> + sqrt(1 - x_j^2) |1>)

The index register ``|j>`` comes from a Hadamard layer and the component
qubit from a uniformly-controlled ``RY(2 arccos x_j)``.  The ``|1>`` branch
carries a plus sign; it never overlaps between the two inputs of the test
(the C-swap moves one of them onto the utility qubit), so the measured
expectation is the same as with the minus-sign convention.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import Circuit
from .errors import ArgumentError, DomainError, SizeError
from .statevector import CNOT, RY, H, X
from .ucr import ucry

NORM_TOL = 1e-12


def num_index_qubits(dim: int) -> int:
    """``ceil(log2 dim)``; 0 for ``dim == 1``."""
    if dim < 1:
        raise SizeError(f"dimension must be >= 1, got {dim}")
    return (dim - 1).bit_length()


class BoundedVector:
    """Real vector with every component in [-1, 1], zero-padded to a power of two."""

    __slots__ = ("raw_dim", "components")

    def __init__(self, values):
        values = np.asarray(values, dtype=float).reshape(-1)
        if values.size == 0:
            raise SizeError("vector must have at least one component")
        if not np.all(np.isfinite(values)):
            raise DomainError("vector components must be finite")
        bad = np.flatnonzero(np.abs(values) > 1)
        if bad.size:
            i = int(bad[0])
            raise DomainError(f"component {i} = {float(values[i])!r} lies outside [-1, 1]")
        self.raw_dim = values.size
        padded = np.zeros(1 << num_index_qubits(values.size))
        padded[: values.size] = values
        self.components = padded

    @property
    def n(self) -> int:
        return num_index_qubits(self.components.size)

    def __len__(self):
        return self.components.size

    def __repr__(self):
        return f"BoundedVector({self.components[: self.raw_dim].tolist()})"


def as_bounded(x) -> BoundedVector:
    return x if isinstance(x, BoundedVector) else BoundedVector(x)


@dataclass(frozen=True)
class QubitLayout:
    ancilla: int
    sample_index: tuple
    component_index: tuple
    component: int
    utility: int

    @classmethod
    def build(cls, n: int, p: int = 0) -> "QubitLayout":
        return cls(0, tuple(range(1, 1 + p)), tuple(range(1 + p, 1 + p + n)), 1 + p + n, 2 + p + n)

    @property
    def num_qubits(self) -> int:
        return len(self.sample_index) + len(self.component_index) + 3


def to_angles(x) -> np.ndarray:
    """``2 arccos(x_j)`` so that ``RY(angle)|0>`` has ``<0|`` amplitude ``x_j``."""
    x = as_bounded(x)
    return 2 * np.arccos(x.components)


def encode_pair(x_p, x_q) -> Circuit:
    """Circuit preparing ``(|0>|x_p> + |1>|x_q>)/sqrt(2)``, utility qubit left in ``|0>``."""
    x_p, x_q = as_bounded(x_p), as_bounded(x_q)
    if len(x_p) != len(x_q):
        raise ArgumentError(f"padded dimensions differ: {len(x_p)} vs {len(x_q)}")
    layout = QubitLayout.build(x_p.n)
    circ = Circuit(layout.num_qubits, layout=layout)
    circ.append(H(layout.ancilla))
    circ.extend(H(q) for q in layout.component_index)
    theta = np.concatenate([to_angles(x_p), to_angles(x_q)])
    circ.extend(ucry((layout.ancilla,) + layout.component_index, layout.component, theta))
    return circ


def controlled_on(gates, control: int, bit: int) -> list:
    """Condition a RY/CNOT gate list on ``control == bit``.

    Each ``RY(a)`` becomes ``RY(a/2) CNOT RY(-a/2) CNOT`` with ``control``
    driving the CNOTs; a 0-basis control is realised by X-conjugation.  The
    CNOTs inside a Gray-code ladder need no control: with every rotation
    disabled they multiply to the identity.
    """
    body = []
    for g in gates:
        if g.kind == "RY":
            a = g.angle / 2
            body += [RY(g.target, a), CNOT(control, g.target), RY(g.target, -a), CNOT(control, g.target)]
        elif g.kind == "CNOT":
            body.append(g)
        else:
            raise ArgumentError(f"cannot condition gate kind {g.kind}")
    if bit == 0:
        # X on the control commutes with every gate here except the CNOTs it drives
        body = [X(control)] + body + [X(control)]
    return body


def _check_sample_count(m):
    if m == 0 or m & (m - 1):
        raise SizeError(
            f"training set size must be a power of two, got {m}; "
            "subsample it or pad it explicitly (all-zero vectors add nothing to the sum)"
        )


def _check_batch(training, test):
    training = [as_bounded(v) for v in training]
    test = as_bounded(test)
    m = len(training)
    _check_sample_count(m)
    dims = {len(v) for v in training} | {len(test)}
    if len(dims) != 1:
        raise ArgumentError(f"padded dimensions differ: {sorted(dims)}")
    return training, test


def encode_training(training) -> Circuit:
    """Hadamard layers plus the ancilla-0 controlled training-set encoding.

    This prefix depends only on the training set, so it can be simulated once
    and reused for many test points.
    """
    training = [as_bounded(v) for v in training]
    m = len(training)
    _check_sample_count(m)
    n = training[0].n
    if any(v.n != n for v in training):
        raise ArgumentError("training vectors have different padded dimensions")
    p = m.bit_length() - 1
    layout = QubitLayout.build(n, p)
    circ = Circuit(layout.num_qubits, layout=layout)
    circ.append(H(layout.ancilla))
    circ.extend(H(q) for q in layout.sample_index + layout.component_index)
    theta = np.concatenate([to_angles(v) for v in training])
    ladder = ucry(layout.sample_index + layout.component_index, layout.component, theta)
    circ.extend(controlled_on(ladder, layout.ancilla, 0))
    return circ


def encode_test(test, layout: QubitLayout) -> list:
    """Ancilla-1 controlled encoding of the test point on the index register."""
    ladder = ucry(layout.component_index, layout.component, to_angles(test))
    return controlled_on(ladder, layout.ancilla, 1)


def encode_batch(training, test) -> Circuit:
    """Circuit preparing ``(|0>|D> + |1>|test>)/sqrt(2)`` on ``p + n + 3`` qubits.

    ``|D>`` holds every training vector on its sample index; in the test branch
    the sample-index register stays in uniform superposition.
    """
    training, test = _check_batch(training, test)
    circ = encode_training(training)
    circ.extend(encode_test(test, circ.layout))
    return circ


def normalize(x) -> np.ndarray:
    """L2-normalize and zero-pad to a power of two."""
    x = np.asarray(x, dtype=float).reshape(-1)
    norm = np.linalg.norm(x)
    if norm == 0:
        raise DomainError("cannot normalize the zero vector")
    out = np.zeros(1 << num_index_qubits(x.size))
    out[: x.size] = x / norm
    return out


def _check_normalized(x) -> np.ndarray:
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.size == 0 or x.size & (x.size - 1):
        raise SizeError(f"length must be a power of two, got {x.size}")
    if abs(np.dot(x, x) - 1) > NORM_TOL:
        raise DomainError(f"vector is not unit norm (|x|^2 = {np.dot(x, x)!r})")
    return x


def amplitude_tree_angles(x) -> list:
    """Per-level RY angles of the binary-tree state preparation.

    Level ``k`` rotates qubit ``k`` conditioned on qubits ``0..k-1``.  Inner
    levels split subtree norms; the last level uses the signed pair, so a
    negative amplitude shows up as a rotation angle outside ``[0, pi]``.
    """
    x = np.asarray(x, dtype=float)
    n = num_index_qubits(x.size)
    levels = []
    for k in range(n):
        blocks = x.reshape(1 << k, 2, -1)
        if k == n - 1:
            left, right = blocks[:, 0, 0], blocks[:, 1, 0]
        else:
            left = np.linalg.norm(blocks[:, 0], axis=1)
            right = np.linalg.norm(blocks[:, 1], axis=1)
        levels.append(2 * np.arctan2(right, left))
    return levels


def amplitude_gates(x, qubits) -> list:
    gates = []
    for k, theta in enumerate(amplitude_tree_angles(x)):
        gates.extend(ucry(tuple(qubits[:k]), qubits[k], theta))
    return gates


def amplitude_encode(x) -> Circuit:
    """Circuit preparing ``sum_j x_j |j>`` from ``|0...0>`` for a unit real vector."""
    x = _check_normalized(x)
    n = num_index_qubits(x.size)
    if n == 0:
        raise SizeError("amplitude encoding needs at least two components")
    circ = Circuit(n)
    circ.extend(amplitude_gates(x, list(range(n))))
    return circ
