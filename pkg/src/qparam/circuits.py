"""Circuit IR, statevector simulation, weft metrics, and witness gadgets.

Wire convention: wires are numbered 0..(witness_qubits + ancilla_qubits - 1),
witness wires first; qubit 0 is the most significant bit of a basis index.
For multi-wire gates the first wire in (controls + targets) order supplies
the most significant bit of the gate's local matrix index.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import ceil, comb, log2

import numpy as np

from .errors import InvalidInputError
from .linalg import matrix_from_json, matrix_to_json
from .states import StateVector
from .weightenum import WeightEnumeration

UNITARY_TOL = 1e-10
SUPPORT_TOL = 1e-12

_SQ = 1 / np.sqrt(2)
NAMED_1Q = {
    "H": np.array([[_SQ, _SQ], [_SQ, -_SQ]], dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.diag([1, -1]).astype(complex),
    "S": np.diag([1, 1j]).astype(complex),
    "SDG": np.diag([1, -1j]).astype(complex),
    "T": np.diag([1, np.exp(1j * np.pi / 4)]).astype(complex),
}
NAMED_2Q = {
    "CX": np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    ),
    "CZ": np.diag([1, 1, 1, -1]).astype(complex),
    "SWAP": np.array(
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
    ),
}


@dataclass(frozen=True)
class Gate:
    """One gate: a named gate, a generalized Toffoli, or a unitary block."""

    name: str
    controls: tuple[int, ...] = ()
    targets: tuple[int, ...] = ()
    matrix: np.ndarray | None = None

    def __post_init__(self):
        object.__setattr__(self, "controls", tuple(self.controls))
        object.__setattr__(self, "targets", tuple(self.targets))
        wires = self.wires
        if len(set(wires)) != len(wires) or any(w < 0 for w in wires):
            raise InvalidInputError(f"gate {self.name}: invalid wires {wires}")
        if self.name in NAMED_1Q:
            if self.controls or len(self.targets) != 1:
                raise InvalidInputError(f"{self.name} takes exactly one target")
        elif self.name in NAMED_2Q:
            ctl = 1 if self.name in ("CX", "CZ") else 0
            if len(self.controls) != ctl or len(self.targets) != 2 - ctl:
                raise InvalidInputError(f"{self.name}: bad wire counts")
        elif self.name == "TOFFOLI":
            if len(self.controls) < 2 or len(self.targets) != 1:
                raise InvalidInputError(
                    "TOFFOLI needs at least two controls and one target"
                )
        elif self.name == "UNITARY":
            if self.controls or not self.targets or self.matrix is None:
                raise InvalidInputError("UNITARY needs targets and a matrix")
            m = np.asarray(self.matrix, dtype=complex)
            object.__setattr__(self, "matrix", m)
            dim = 2 ** len(self.targets)
            if m.shape != (dim, dim):
                raise InvalidInputError(
                    f"UNITARY matrix shape {m.shape} does not fit "
                    f"{len(self.targets)} targets"
                )
            if np.max(np.abs(m.conj().T @ m - np.eye(dim))) > UNITARY_TOL:
                raise InvalidInputError("UNITARY matrix is not unitary within 1e-10")
        else:
            raise InvalidInputError(f"unknown gate name {self.name!r}")

    @property
    def wires(self) -> tuple[int, ...]:
        return self.controls + self.targets

    def local_matrix(self) -> np.ndarray:
        if self.name in NAMED_1Q:
            return NAMED_1Q[self.name]
        if self.name in NAMED_2Q:
            return NAMED_2Q[self.name]
        if self.name == "TOFFOLI":
            dim = 2 ** len(self.wires)
            m = np.eye(dim, dtype=complex)
            # flip the target (last wire) when every control bit is 1
            m[[dim - 2, dim - 1]] = m[[dim - 1, dim - 2]]
            return m
        return self.matrix

    def is_weft_gate(self) -> bool:
        """Generalized Toffolis and unitary blocks on three or more wires."""
        return self.name == "TOFFOLI" or (
            self.name == "UNITARY" and len(self.targets) >= 3
        )

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "controls": list(self.controls),
            "targets": list(self.targets),
        }
        if self.matrix is not None:
            out["matrix"] = matrix_to_json(self.matrix)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Gate":
        try:
            matrix = data.get("matrix")
            return cls(
                str(data["name"]),
                tuple(data.get("controls", ())),
                tuple(data.get("targets", ())),
                matrix_from_json(matrix) if matrix is not None else None,
            )
        except (KeyError, TypeError) as exc:
            raise InvalidInputError(f"malformed gate JSON: {exc}") from exc


@dataclass(frozen=True)
class QuantumCircuit:
    witness_qubits: int
    ancilla_qubits: int
    gates: tuple[Gate, ...]
    accept_qubit: int

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        total = self.total_qubits
        if self.witness_qubits < 0 or self.ancilla_qubits < 0 or total == 0:
            raise InvalidInputError("circuit needs at least one qubit")
        if not 0 <= self.accept_qubit < total:
            raise InvalidInputError(f"accept qubit {self.accept_qubit} out of range")
        for gate in self.gates:
            if any(w >= total for w in gate.wires):
                raise InvalidInputError(
                    f"gate {gate.name} wires {gate.wires} out of range for "
                    f"{total} qubits"
                )

    @property
    def total_qubits(self) -> int:
        return self.witness_qubits + self.ancilla_qubits

    def to_json(self) -> dict:
        return {
            "witness_qubits": self.witness_qubits,
            "ancilla_qubits": self.ancilla_qubits,
            "accept_qubit": self.accept_qubit,
            "gates": [g.to_json() for g in self.gates],
        }

    @classmethod
    def from_json(cls, data: dict) -> "QuantumCircuit":
        try:
            return cls(
                int(data["witness_qubits"]),
                int(data["ancilla_qubits"]),
                tuple(Gate.from_json(g) for g in data["gates"]),
                int(data["accept_qubit"]),
            )
        except (KeyError, TypeError) as exc:
            raise InvalidInputError(f"malformed circuit JSON: {exc}") from exc


def apply_gate_matrix(
    amplitudes: np.ndarray, num_qubits: int, wires: tuple[int, ...], matrix: np.ndarray
) -> np.ndarray:
    """Apply a 2^|wires| matrix on the given wires (first wire = local MSB)."""
    s = len(wires)
    tensor = amplitudes.reshape([2] * num_qubits)
    order = list(wires) + [q for q in range(num_qubits) if q not in wires]
    moved = np.transpose(tensor, order).reshape(2**s, -1)
    moved = matrix @ moved
    moved = moved.reshape([2] * num_qubits)
    return np.transpose(moved, np.argsort(order)).reshape(-1)


def simulate(circuit: QuantumCircuit, input_state: StateVector) -> StateVector:
    """Run the circuit on input ⊗ |0...0⟩ over the ancilla wires."""
    if input_state.num_qubits != circuit.witness_qubits:
        raise InvalidInputError(
            f"input has {input_state.num_qubits} qubits, circuit expects "
            f"{circuit.witness_qubits} witness qubits"
        )
    n = circuit.total_qubits
    amps = np.zeros(2**n, dtype=complex)
    # witness wires are the most significant bits, ancillas trail as |0>
    step = 2**circuit.ancilla_qubits
    amps[np.arange(2**circuit.witness_qubits) * step] = input_state.amplitudes
    for gate in circuit.gates:
        amps = apply_gate_matrix(amps, n, gate.wires, gate.local_matrix())
    return StateVector(n, amps)


def acceptance_probability(circuit: QuantumCircuit, input_state: StateVector) -> float:
    """Probability of measuring the accept qubit as 1 on the output state."""
    out = simulate(circuit, input_state)
    n = circuit.total_qubits
    tensor = out.amplitudes.reshape([2] * n)
    slice_one = np.take(tensor, 1, axis=circuit.accept_qubit)
    return float(np.sum(np.abs(slice_one) ** 2))


@dataclass(frozen=True)
class CircuitMetrics:
    weft: int
    depth: int
    size: int

    def to_json(self) -> dict:
        return {"weft": self.weft, "depth": self.depth, "size": self.size}


def circuit_metrics(circuit: QuantumCircuit) -> CircuitMetrics:
    """Weft and depth by a longest-path sweep over the wire-ordered gate DAG."""
    weft_level = [0] * circuit.total_qubits
    depth_level = [0] * circuit.total_qubits
    for gate in circuit.gates:
        wires = gate.wires
        w = max(weft_level[q] for q in wires) + (1 if gate.is_weft_gate() else 0)
        d = max(depth_level[q] for q in wires) + 1
        for q in wires:
            weft_level[q] = w
            depth_level[q] = d
    return CircuitMetrics(
        weft=max(weft_level, default=0),
        depth=max(depth_level, default=0),
        size=len(circuit.gates),
    )


def project_weight_k(state: StateVector, k: int) -> tuple[StateVector, float]:
    """Normalized projection onto the weight-k sector and its probability.

    Probability 0 yields the (unnormalizable) zero vector as the flag state.
    """
    n = state.num_qubits
    weights = np.array(
        [bin(x).count("1") for x in range(2**n)], dtype=np.int64
    )
    mask = weights == k
    projected = np.where(mask, state.amplitudes, 0)
    prob = float(np.sum(np.abs(projected) ** 2))
    if prob == 0.0:
        return StateVector(n, np.zeros(2**n, dtype=complex)), 0.0
    return StateVector(n, projected / np.sqrt(prob)), prob


def compressed_qubits(n: int, k: int) -> int:
    """ceil(log2 C(n,k)) qubits for the rank register."""
    dim = comb(n, k)
    return max(0, ceil(log2(dim))) if dim > 1 else 0


def encode_weight_witness(n: int, k: int, state: StateVector) -> StateVector:
    """Transport amplitudes from weight-k strings to their ranks."""
    if state.num_qubits != n:
        raise InvalidInputError(f"state has {state.num_qubits} qubits, expected {n}")
    enum = WeightEnumeration(n, k)
    indices = np.fromiter(enum.indices(), dtype=np.int64, count=enum.dim)
    off_support = np.abs(state.amplitudes).copy()
    off_support[indices] = 0.0
    if np.max(off_support, initial=0.0) > SUPPORT_TOL:
        raise InvalidInputError(
            f"state has amplitude outside the weight-{k} sector"
        )
    m = compressed_qubits(n, k)
    out = np.zeros(2**m, dtype=complex)
    out[: enum.dim] = state.amplitudes[indices]
    return StateVector(m, out)


def decode_weight_witness(n: int, k: int, compressed: StateVector) -> StateVector:
    """Inverse of :func:`encode_weight_witness`."""
    enum = WeightEnumeration(n, k)
    m = compressed_qubits(n, k)
    if compressed.num_qubits != m:
        raise InvalidInputError(
            f"compressed state has {compressed.num_qubits} qubits, expected {m}"
        )
    if np.max(np.abs(compressed.amplitudes[enum.dim:]), initial=0.0) > SUPPORT_TOL:
        raise InvalidInputError("padded-index amplitude above tolerance")
    indices = np.fromiter(enum.indices(), dtype=np.int64, count=enum.dim)
    out = np.zeros(2**n, dtype=complex)
    out[indices] = compressed.amplitudes[: enum.dim]
    return StateVector(n, out)


def prepare_classical_weight_state(
    n: int, k: int, generator: QuantumCircuit, permutation
) -> StateVector:
    """S_n(D_k|0^k⟩ ⊗ |0^{n-k}⟩) with S_n permuting tensor factors.

    ``permutation[i]`` is the wire the i-th tensor factor is routed to.
    """
    perm = list(permutation)
    if sorted(perm) != list(range(n)):
        raise InvalidInputError(f"not a permutation of 0..{n - 1}: {perm}")
    if generator.total_qubits != k:
        raise InvalidInputError(
            f"generator acts on {generator.total_qubits} qubits, expected {k}"
        )
    core = simulate(generator, StateVector.zero(generator.witness_qubits))
    full = np.zeros(2**n, dtype=complex)
    full[np.arange(2**k) * 2 ** (n - k)] = core.amplitudes
    tensor = full.reshape([2] * n)
    # output axis perm[i] receives input axis i
    inverse = np.argsort(perm)
    return StateVector(n, np.transpose(tensor, inverse).reshape(-1))


REJECT = "REJECT"


def one_hot_block_decode(num_blocks: int, block_size: int, bits: str):
    """Per-block one-hot positions as bit indices, or REJECT."""
    if len(bits) != num_blocks * block_size:
        raise InvalidInputError(
            f"expected {num_blocks * block_size} bits, got {len(bits)}"
        )
    if any(c not in "01" for c in bits):
        raise InvalidInputError(f"not a bitstring: {bits!r}")
    width = max(1, ceil(log2(block_size))) if block_size > 1 else 1
    out = []
    for b in range(num_blocks):
        block = bits[b * block_size: (b + 1) * block_size]
        if block.count("1") != 1:
            return REJECT
        out.append(format(block.index("1"), f"0{width}b"))
    return "".join(out)


def hadamard_test_circuit(
    unitary: np.ndarray, part: str = "real", prep: QuantumCircuit | None = None
) -> QuantumCircuit:
    """Hadamard-test circuit; the single ancilla is wire 0 and the accept qubit.

    With |ψ⟩ the prep circuit's output, Pr[wire 0 measures 0] is
    (1 + Re⟨ψ|U|ψ⟩)/2 for part="real" and (1 + Im⟨ψ|U|ψ⟩)/2 for part="imag";
    the accept qubit measures 1, so the probability of accepting is the
    complement.
    """
    u = np.asarray(unitary, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise InvalidInputError(f"expected a square unitary, got shape {u.shape}")
    dim = u.shape[0]
    num_sys = int(round(log2(dim)))
    if 2**num_sys != dim:
        raise InvalidInputError(f"unitary dimension {dim} is not a power of two")
    if np.max(np.abs(u.conj().T @ u - np.eye(dim))) > UNITARY_TOL:
        raise InvalidInputError("matrix is not unitary within 1e-10")
    if part not in ("real", "imag"):
        raise InvalidInputError(f"part must be 'real' or 'imag', got {part!r}")
    gates = [Gate("H", targets=(0,))]
    if prep is not None:
        if prep.total_qubits != num_sys:
            raise InvalidInputError(
                f"prep circuit acts on {prep.total_qubits} qubits, "
                f"unitary needs {num_sys}"
            )
        for g in prep.gates:
            gates.append(
                Gate(
                    g.name,
                    tuple(w + 1 for w in g.controls),
                    tuple(w + 1 for w in g.targets),
                    g.matrix,
                )
            )
    # controlled-U with the ancilla as the local MSB: block-diag(I, U)
    controlled = np.zeros((2 * dim, 2 * dim), dtype=complex)
    controlled[:dim, :dim] = np.eye(dim)
    controlled[dim:, dim:] = u
    gates.append(Gate("UNITARY", targets=tuple(range(num_sys + 1)), matrix=controlled))
    if part == "imag":
        gates.append(Gate("SDG", targets=(0,)))
    gates.append(Gate("H", targets=(0,)))
    return QuantumCircuit(
        witness_qubits=num_sys + 1, ancilla_qubits=0,
        gates=tuple(gates), accept_qubit=0,
    )
