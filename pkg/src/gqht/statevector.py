"""Exact complex statevector simulator.

Qubit 0 is the most significant bit of the basis-state index, so the
amplitude of ``|q0 q1 ... q_{m-1}>`` sits at ``int("q0q1...", 2)``.

Gates are applied by fixing the control and target axes of the
``(2,) * m`` tensor view of the amplitudes and updating the selected
amplitude pairs in place.  No dense matrices are built on this path;
:func:`gate_matrix` and :func:`dense_unitary` exist as an independent
reference for tests.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from math import cos, sin, sqrt

import numpy as np

from .errors import ArgumentError, SizeError

MAX_QUBITS = 24

GATE_KINDS = ("H", "RY", "X", "CNOT", "CSWAP", "CRY")

_SQRT1_2 = 1 / sqrt(2)
_H = np.array([[_SQRT1_2, _SQRT1_2], [_SQRT1_2, -_SQRT1_2]], dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)


def ry_matrix(theta: float) -> np.ndarray:
    """``RY(theta) = [[cos t/2, -sin t/2], [sin t/2, cos t/2]]``."""
    c, s = cos(theta / 2), sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


@dataclass(frozen=True)
class Gate:
    """One gate.

    ``targets`` holds one qubit, or two for CSWAP.  ``controls`` is a tuple of
    ``(qubit, bit)`` pairs; the gate acts only on basis states where every
    control qubit equals its bit.
    """

    kind: str
    targets: tuple
    controls: tuple = ()
    angle: float | None = None

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ArgumentError(f"unknown gate kind {self.kind!r}")
        want = 2 if self.kind == "CSWAP" else 1
        if len(self.targets) != want:
            raise ArgumentError(f"{self.kind} takes {want} target(s), got {self.targets}")
        if self.kind in ("CNOT", "CSWAP", "CRY") and not self.controls:
            raise ArgumentError(f"{self.kind} needs at least one control")
        if self.kind in ("H", "X", "RY") and self.controls:
            raise ArgumentError(f"{self.kind} is uncontrolled; use CNOT or CRY")
        if self.kind in ("RY", "CRY") and self.angle is None:
            raise ArgumentError(f"{self.kind} needs an angle")
        qubits = [q for q, _ in self.controls] + list(self.targets)
        if len(set(qubits)) != len(qubits):
            raise ArgumentError(f"gate qubits must be distinct: {self}")
        for _, bit in self.controls:
            if bit not in (0, 1):
                raise ArgumentError(f"control bit must be 0 or 1, got {bit}")

    @property
    def target(self) -> int:
        return self.targets[0]

    @property
    def qubits(self) -> tuple:
        return tuple(q for q, _ in self.controls) + tuple(self.targets)

    def base_matrix(self) -> np.ndarray:
        """The 2x2 matrix applied to the target (not defined for CSWAP)."""
        if self.kind == "H":
            return _H
        if self.kind in ("X", "CNOT"):
            return _X
        if self.kind in ("RY", "CRY"):
            return ry_matrix(self.angle)
        raise ArgumentError("CSWAP has no single-qubit base matrix")


def H(q):
    return Gate("H", (q,))


def X(q):
    return Gate("X", (q,))


def RY(q, theta):
    return Gate("RY", (q,), angle=float(theta))


def CNOT(control, target, bit=1):
    return Gate("CNOT", (target,), ((control, bit),))


def CSWAP(control, a, b):
    return Gate("CSWAP", (a, b), ((control, 1),))


def CRY(controls, target, theta):
    """Controlled RY; ``controls`` is a sequence of ``(qubit, bit)`` pairs."""
    return Gate("CRY", (target,), tuple((int(q), int(b)) for q, b in controls), float(theta))


@dataclass(frozen=True)
class MeasurementRecord:
    qubit: int
    shots: int
    count_zero: int
    count_one: int
    seed: int

    @property
    def estimate(self) -> float:
        """Shot estimate of ``<Z>``."""
        return (self.count_zero - self.count_one) / self.shots


class StateVector:
    """Normalized amplitudes over ``2**num_qubits`` basis states."""

    def __init__(self, num_qubits: int, amplitudes=None):
        if not isinstance(num_qubits, (int, np.integer)) or not 1 <= num_qubits <= MAX_QUBITS:
            raise SizeError(f"num_qubits must be in [1, {MAX_QUBITS}], got {num_qubits}")
        self.num_qubits = int(num_qubits)
        dim = 1 << self.num_qubits
        if amplitudes is None:
            amplitudes = np.zeros(dim, dtype=complex)
            amplitudes[0] = 1.0
        else:
            amplitudes = np.array(amplitudes, dtype=complex).reshape(-1)
            if amplitudes.shape[0] != dim:
                raise SizeError(f"expected {dim} amplitudes, got {amplitudes.shape[0]}")
        self.amplitudes = amplitudes

    def __repr__(self):
        return f"StateVector(num_qubits={self.num_qubits})"

    def copy(self) -> "StateVector":
        return StateVector(self.num_qubits, self.amplitudes.copy())

    def norm(self) -> float:
        return float(np.sqrt(np.vdot(self.amplitudes, self.amplitudes).real))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def _check_qubit(self, q):
        if not 0 <= q < self.num_qubits:
            raise IndexError(f"qubit {q} out of range for {self.num_qubits}-qubit state")

    def apply(self, gate: Gate) -> "StateVector":
        """Apply ``gate`` in place and return ``self``."""
        for q in gate.qubits:
            self._check_qubit(q)
        psi = self.amplitudes.reshape((2,) * self.num_qubits)
        sel = [slice(None)] * self.num_qubits
        for q, bit in gate.controls:
            sel[q] = bit

        if gate.kind == "CSWAP":
            a, b = gate.targets
            sel[a], sel[b] = 0, 1
            i01 = tuple(sel)
            sel[a], sel[b] = 1, 0
            i10 = tuple(sel)
            tmp = psi[i01].copy()
            psi[i01] = psi[i10]
            psi[i10] = tmp
            return self

        t = gate.target
        sel[t] = 0
        i0 = tuple(sel)
        sel[t] = 1
        i1 = tuple(sel)
        if gate.kind in ("X", "CNOT"):
            tmp = psi[i0].copy()
            psi[i0] = psi[i1]
            psi[i1] = tmp
            return self
        m = gate.base_matrix()
        v0 = psi[i0].copy()
        v1 = psi[i1]
        psi[i0] = m[0, 0] * v0 + m[0, 1] * v1
        psi[i1] = m[1, 0] * v0 + m[1, 1] * v1
        return self

    def marginal(self, qubit: int) -> tuple:
        """``(P(0), P(1))`` for one qubit."""
        self._check_qubit(qubit)
        probs = self.probabilities().reshape((2,) * self.num_qubits)
        axes = tuple(i for i in range(self.num_qubits) if i != qubit)
        p = probs.sum(axis=axes)
        return float(p[0]), float(p[1])

    def to_csv(self) -> str:
        """Debug dump, one ``basis_index,re,im`` row per amplitude."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["basis_index", "re", "im"])
        for k, a in enumerate(self.amplitudes):
            w.writerow([k, repr(float(a.real)), repr(float(a.imag))])
        return buf.getvalue()


def init_zero(num_qubits: int) -> StateVector:
    return StateVector(num_qubits)


def apply_gate(state: StateVector, gate: Gate) -> StateVector:
    """Return a new state with ``gate`` applied; ``state`` is left untouched."""
    return state.copy().apply(gate)


def expectation_z(state: StateVector, qubit: int) -> float:
    p0, p1 = state.marginal(qubit)
    return p0 - p1


def _generator(seed: int) -> np.random.Generator:
    # Philox is counter-based, so streams are reproducible on any worker.
    return np.random.Generator(np.random.Philox(int(seed) % (1 << 64)))


def sample_z(state: StateVector, qubit: int, shots: int, seed: int) -> MeasurementRecord:
    """Draw ``shots`` Z-basis outcomes for one qubit from a seeded generator."""
    if int(shots) < 1:
        raise ArgumentError(f"shots must be >= 1, got {shots}")
    p0, _ = state.marginal(qubit)
    p0 = min(max(p0, 0.0), 1.0)
    zeros = int(_generator(seed).binomial(int(shots), p0))
    return MeasurementRecord(qubit, int(shots), zeros, int(shots) - zeros, int(seed))


# Dense reference path.  Built from Kronecker products of single-qubit
# projectors, independent of the in-place update above.

_P = (np.array([[1, 0], [0, 0]], dtype=complex), np.array([[0, 0], [0, 1]], dtype=complex))
_I2 = np.eye(2, dtype=complex)


def _kron_all(factors):
    out = np.ones((1, 1), dtype=complex)
    for f in factors:
        out = np.kron(out, f)
    return out


def gate_matrix(gate: Gate, num_qubits: int) -> np.ndarray:
    """Dense ``2**m x 2**m`` unitary of ``gate``."""
    for q in gate.qubits:
        if not 0 <= q < num_qubits:
            raise IndexError(f"qubit {q} out of range for {num_qubits} qubits")
    ctrl = [_I2] * num_qubits
    for q, bit in gate.controls:
        ctrl[q] = _P[bit]
    proj = _kron_all(ctrl)
    dim = 1 << num_qubits
    if gate.kind == "CSWAP":
        a, b = gate.targets
        paulis = (_I2, _X, np.array([[0, -1j], [1j, 0]]), np.diag([1, -1]).astype(complex))
        op = np.zeros((dim, dim), dtype=complex)
        for p in paulis:
            fs = list(ctrl)
            fs[a] = fs[a] @ p
            fs[b] = fs[b] @ p
            op += _kron_all(fs) / 2
    else:
        fs = list(ctrl)
        fs[gate.target] = gate.base_matrix()
        op = _kron_all(fs)
    return np.eye(dim, dtype=complex) - proj + op


def dense_unitary(gates, num_qubits: int) -> np.ndarray:
    """Product of the dense matrices of ``gates`` in application order."""
    u = np.eye(1 << num_qubits, dtype=complex)
    for g in gates:
        u = gate_matrix(g, num_qubits) @ u
    return u
