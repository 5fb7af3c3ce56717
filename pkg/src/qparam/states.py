"""Statevector container.

Convention used everywhere in this package: qubit 0 is the most significant
bit of a basis-state index, so |q0 q1 ... q_{n-1}> has index
sum(q_i << (n-1-i)).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError

NORM_TOL = 1e-10


@dataclass
class StateVector:
    num_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if self.amplitudes.shape != (2**self.num_qubits,):
            raise InvalidInputError(
                f"expected {2**self.num_qubits} amplitudes, "
                f"got {self.amplitudes.shape}"
            )

    @classmethod
    def zero(cls, num_qubits: int) -> "StateVector":
        amps = np.zeros(2**num_qubits, dtype=complex)
        amps[0] = 1.0
        return cls(num_qubits, amps)

    @classmethod
    def basis(cls, num_qubits: int, index: int) -> "StateVector":
        if not 0 <= index < 2**num_qubits:
            raise InvalidInputError(f"basis index {index} out of range")
        amps = np.zeros(2**num_qubits, dtype=complex)
        amps[index] = 1.0
        return cls(num_qubits, amps)

    @classmethod
    def from_bits(cls, bitstring: str) -> "StateVector":
        if any(c not in "01" for c in bitstring):
            raise InvalidInputError(f"not a bitstring: {bitstring!r}")
        return cls.basis(len(bitstring), int(bitstring, 2) if bitstring else 0)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def inner(self, other: "StateVector") -> complex:
        if other.num_qubits != self.num_qubits:
            raise InvalidInputError("qubit-count mismatch in inner product")
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def normalized(self) -> "StateVector":
        n = self.norm()
        if n == 0.0:
            raise InvalidInputError("cannot normalize the zero vector")
        return StateVector(self.num_qubits, self.amplitudes / n)

    def to_json(self) -> dict:
        return {
            "num_qubits": self.num_qubits,
            "amplitudes": [[float(a.real), float(a.imag)] for a in self.amplitudes],
        }

    @classmethod
    def from_json(cls, data: dict) -> "StateVector":
        try:
            amps = np.array([complex(re, im) for re, im in data["amplitudes"]])
            return cls(int(data["num_qubits"]), amps)
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInputError(f"malformed state JSON: {exc}") from exc
