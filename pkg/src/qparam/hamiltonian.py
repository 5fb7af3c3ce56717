"""Local Hamiltonians, their weight-k restriction, and the slice decider.

A Hamiltonian is a sum of Hermitian blocks, each supported on a few qubits.
The weight-k restriction is assembled term by term over the C(n, k)
fixed-weight basis without ever forming the full 2^n matrix.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np
import scipy.sparse as sp

from .decision import Verdict
from .errors import InvalidInputError, ResourceError
from .linalg import DENSE_THRESHOLD, matrix_from_json, matrix_to_json, min_eigenvalue
from .states import StateVector
from .weightenum import WeightEnumeration

ASSEMBLE_LIMIT = 12


@dataclass(frozen=True)
class LocalTerm:
    """One Hermitian block acting on a sorted tuple of qubits."""

    qubits: tuple[int, ...]
    block: np.ndarray
    norm_bound: float | None = None

    def __post_init__(self):
        qs = tuple(self.qubits)
        object.__setattr__(self, "qubits", qs)
        if len(set(qs)) != len(qs) or any(q < 0 for q in qs):
            raise InvalidInputError(f"invalid support {qs}")
        if qs != tuple(sorted(qs)):
            raise InvalidInputError(f"support must be sorted, got {qs}")
        block = np.asarray(self.block, dtype=complex)
        object.__setattr__(self, "block", block)
        dim = 2 ** len(qs)
        if block.shape != (dim, dim):
            raise InvalidInputError(
                f"block shape {block.shape} does not match support size {len(qs)}"
            )
        if np.max(np.abs(block - block.conj().T)) > 1e-12:
            raise InvalidInputError("term block is not Hermitian within 1e-12")
        if self.norm_bound is not None:
            spec = float(np.linalg.norm(block, 2))
            if spec > self.norm_bound + 1e-9:
                raise InvalidInputError(
                    f"spectral norm {spec:.6g} exceeds declared bound {self.norm_bound}"
                )


@dataclass(frozen=True)
class LocalHamiltonian:
    n: int
    locality: int
    a: float
    b: float
    terms: tuple[LocalTerm, ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        if self.n <= 0:
            raise InvalidInputError("need at least one qubit")
        if self.b <= self.a:
            raise InvalidInputError(f"need b > a, got a={self.a}, b={self.b}")
        for term in self.terms:
            if len(term.qubits) > self.locality:
                raise InvalidInputError(
                    f"term on {term.qubits} exceeds locality {self.locality}"
                )
            if any(q >= self.n for q in term.qubits):
                raise InvalidInputError(f"term support {term.qubits} out of range")

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "locality": self.locality,
            "a": self.a,
            "b": self.b,
            "terms": [
                {"qubits": list(t.qubits), "matrix": matrix_to_json(t.block)}
                for t in self.terms
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "LocalHamiltonian":
        try:
            terms = tuple(
                LocalTerm(tuple(t["qubits"]), matrix_from_json(t["matrix"]))
                for t in data["terms"]
            )
            return cls(
                int(data["n"]), int(data["locality"]),
                float(data["a"]), float(data["b"]), terms,
            )
        except (KeyError, TypeError) as exc:
            raise InvalidInputError(f"malformed Hamiltonian JSON: {exc}") from exc


def _local_index(basis_index: int, n: int, qubits: tuple[int, ...]) -> int:
    """Bits of a global basis index on the given qubits, first qubit = MSB."""
    out = 0
    for q in qubits:
        out = (out << 1) | ((basis_index >> (n - 1 - q)) & 1)
    return out


def _replace_bits(basis_index: int, n: int, qubits: tuple[int, ...], local: int) -> int:
    out = basis_index
    for pos, q in enumerate(qubits):
        bit = (local >> (len(qubits) - 1 - pos)) & 1
        shift = n - 1 - q
        out = (out & ~(1 << shift)) | (bit << shift)
    return out


def assemble_full(h: LocalHamiltonian) -> np.ndarray:
    """Full 2^n matrix; brute-force oracle for small n."""
    if h.n > ASSEMBLE_LIMIT:
        raise ResourceError(f"n={h.n} exceeds assemble limit {ASSEMBLE_LIMIT}")
    dim = 2**h.n
    full = np.zeros((dim, dim), dtype=complex)
    for term in h.terms:
        s = len(term.qubits)
        rest = [q for q in range(h.n) if q not in term.qubits]
        rest_indices = np.zeros(2 ** len(rest), dtype=np.int64)
        for j, q in enumerate(rest):
            shift = h.n - 1 - q
            half = np.arange(2 ** len(rest)) >> (len(rest) - 1 - j) & 1
            rest_indices |= half.astype(np.int64) << shift
        for ix in range(2**s):
            rows = rest_indices + _replace_bits(0, h.n, term.qubits, ix)
            for iy in range(2**s):
                v = term.block[ix, iy]
                if v == 0:
                    continue
                cols = rest_indices + _replace_bits(0, h.n, term.qubits, iy)
                full[rows, cols] += v
    return full


def restrict_to_weight(h: LocalHamiltonian, k: int):
    """The Hamiltonian compressed to the weight-k sector, indexed by rank.

    Returns a dense array when C(n, k) is small, a CSR matrix otherwise.
    """
    enum = WeightEnumeration(h.n, k)
    dim = enum.dim
    entries: dict[tuple[int, int], complex] = {}
    indices = list(enum.indices())
    rank_of = {x: r for r, x in enumerate(indices)}
    for term in h.terms:
        s = len(term.qubits)
        for r, x in enumerate(indices):
            ix = _local_index(x, h.n, term.qubits)
            for iy in range(2**s):
                v = term.block[ix, iy]
                if v == 0:
                    continue
                y = _replace_bits(x, h.n, term.qubits, iy)
                ry = rank_of.get(y)
                if ry is None:  # weight changed, outside the sector
                    continue
                key = (r, ry)
                entries[key] = entries.get(key, 0.0) + v
    if dim <= DENSE_THRESHOLD:
        out = np.zeros((dim, dim), dtype=complex)
        for (i, j), v in entries.items():
            out[i, j] = v
        return out
    keys = sorted(entries)
    rows = [i for i, _ in keys]
    cols = [j for _, j in keys]
    vals = [entries[key] for key in keys]
    return sp.csr_matrix((vals, (rows, cols)), shape=(dim, dim), dtype=complex)


def expectation_value(h: LocalHamiltonian, state: StateVector) -> float:
    if state.num_qubits != h.n:
        raise InvalidInputError(
            f"state has {state.num_qubits} qubits, Hamiltonian has {h.n}"
        )
    total = 0.0
    psi = state.amplitudes
    for term in h.terms:
        applied = _apply_term(term, psi, h.n)
        total += np.vdot(psi, applied).real
    return float(total)


def _apply_term(term: LocalTerm, psi: np.ndarray, n: int) -> np.ndarray:
    s = len(term.qubits)
    tensor = psi.reshape([2] * n)
    order = list(term.qubits) + [q for q in range(n) if q not in term.qubits]
    moved = np.transpose(tensor, order).reshape(2**s, -1)
    moved = term.block @ moved
    moved = moved.reshape([2] * n)
    inverse = np.argsort(order)
    return np.transpose(moved, inverse).reshape(-1)


@dataclass(frozen=True)
class HamiltonianDecision:
    verdict: Verdict
    lambda_min: float
    dim: int
    solver_mode: str
    a: float
    b: float
    k: int

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "lambda_min": self.lambda_min,
            "dim": self.dim,
            "solver_mode": self.solver_mode,
            "a": self.a,
            "b": self.b,
            "k": self.k,
        }


def decide_weight_k_local_hamiltonian(
    h: LocalHamiltonian, k: int, mode: str = "auto"
) -> HamiltonianDecision:
    """Exact decision for the weight-k slice via the restricted matrix."""
    restricted = restrict_to_weight(h, k)
    dim = comb(h.n, k)
    if mode == "auto":
        mode = "dense" if dim <= DENSE_THRESHOLD else "iterative"
    lam = min_eigenvalue(restricted, mode=mode)
    if lam <= h.a:
        verdict = Verdict.YES
    elif lam >= h.b:
        verdict = Verdict.NO
    else:
        verdict = Verdict.PROMISE_VIOLATED
    return HamiltonianDecision(verdict, lam, dim, mode, h.a, h.b, k)
