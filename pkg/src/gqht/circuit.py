"""Gate lists over a fixed qubit count, simulation and QASM text export."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .errors import ArgumentError
from .statevector import Gate, StateVector, dense_unitary, init_zero


@dataclass
class Circuit:
    num_qubits: int
    gates: list = field(default_factory=list)
    layout: object = None

    def append(self, gate: Gate) -> "Circuit":
        for q in gate.qubits:
            if not 0 <= q < self.num_qubits:
                raise IndexError(f"qubit {q} out of range for {self.num_qubits}-qubit circuit")
        self.gates.append(gate)
        return self

    def extend(self, gates) -> "Circuit":
        for g in gates:
            self.append(g)
        return self

    def __len__(self):
        return len(self.gates)

    def counts(self) -> Counter:
        return Counter(g.kind for g in self.gates)

    def run(self, state: StateVector | None = None) -> StateVector:
        """Simulate from ``|0...0>`` (or a copy of ``state``)."""
        psi = init_zero(self.num_qubits) if state is None else state.copy()
        for g in self.gates:
            psi.apply(g)
        return psi

    def unitary(self):
        return dense_unitary(self.gates, self.num_qubits)

    def to_qasm(self) -> str:
        return to_qasm(self)


def _fmt(angle: float) -> str:
    return format(float(angle), ".17g")


def _qasm_lines(g: Gate):
    flips = [q for q, bit in g.controls if bit == 0]
    pre = [f"x q[{q}];" for q in flips]
    ctrl = [q for q, _ in g.controls]
    if g.kind == "H":
        body = [f"h q[{g.target}];"]
    elif g.kind == "X":
        body = [f"x q[{g.target}];"]
    elif g.kind == "RY":
        body = [f"ry({_fmt(g.angle)}) q[{g.target}];"]
    elif len(ctrl) != 1:
        raise ArgumentError(f"{g.kind} with {len(ctrl)} controls has no OpenQASM 2.0 form")
    elif g.kind == "CNOT":
        body = [f"cx q[{ctrl[0]}],q[{g.target}];"]
    elif g.kind == "CRY":
        body = [f"cry({_fmt(g.angle)}) q[{ctrl[0]}],q[{g.target}];"]
    else:
        a, b = g.targets
        body = [f"cswap q[{ctrl[0]}],q[{a}],q[{b}];"]
    return pre + body + pre


def to_qasm(circuit: Circuit) -> str:
    """OpenQASM 2.0 text; angles carry 17 significant digits."""
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg q[{circuit.num_qubits}];"]
    for g in circuit.gates:
        lines.extend(_qasm_lines(g))
    return "\n".join(lines) + "\n"
