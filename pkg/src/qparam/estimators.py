"""Monte-Carlo estimators, exact slice deciders, and the maximally-mixed-
witness decision procedure.

Sampling is emulated: each Hadamard-test outcome is a Bernoulli draw from the
exactly computed outcome probability. Randomness comes from a counter-based
Philox generator keyed by (seed, stream), so results are reproducible under
any execution order.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil, comb, log

import numpy as np

from .circuits import (
    QuantumCircuit,
    StateVector,
    acceptance_probability,
    hadamard_test_circuit,
    simulate,
)
from .decision import Verdict
from .errors import InvalidInputError, ResourceError
from .linalg import full_spectrum
from .weightenum import WeightEnumeration

EXACT_GAP_LIMIT = 20
QMAK_QUBIT_LIMIT = 12
WQCS_DIM_LIMIT = 2048
HWQCS_DIM_LIMIT = 4096
CLASSICAL_GATES = ("X", "CX", "TOFFOLI")


def rng_stream(seed: int, stream: int) -> np.random.Generator:
    """Counter-based generator for one named stream of a seeded run."""
    return np.random.Generator(np.random.Philox(key=[seed % 2**64, stream]))


def sample_count(tau: float, delta: float) -> int:
    """Hoeffding sample count for a mean of ±1 variables: additive error tau
    with failure probability delta."""
    if tau <= 0:
        raise InvalidInputError(f"tau must be positive, got {tau}")
    if not 0 < delta < 1:
        raise InvalidInputError(f"delta must lie in (0,1), got {delta}")
    return ceil(2 * log(2 / delta) / tau**2)


@dataclass(frozen=True)
class SampleSchedule:
    tau: float
    delta: float
    seed: int
    samples: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "samples", sample_count(self.tau, self.delta))


@dataclass(frozen=True)
class EstimateReport:
    value: complex | float
    tau: float
    delta: float
    samples: int
    seed: int
    mode: str
    bound: float | None = None
    warning: bool = False

    def to_json(self) -> dict:
        if isinstance(self.value, complex):
            value = [float(self.value.real), float(self.value.imag)]
        else:
            value = float(self.value)
        out = {
            "value": value,
            "tau": self.tau,
            "delta": self.delta,
            "samples": self.samples,
            "seed": self.seed,
            "mode": self.mode,
        }
        if self.bound is not None:
            out["bound"] = self.bound
        if self.warning:
            out["warning"] = True
        return out


def _hadamard_part(
    unitary: np.ndarray, prep: QuantumCircuit | None, part: str,
    m: int, rng: np.random.Generator,
) -> float:
    """Sampled estimate of Re or Im ⟨ψ|U|ψ⟩ from m Hadamard-test shots."""
    circuit = hadamard_test_circuit(unitary, part=part, prep=prep)
    p_zero = 1.0 - acceptance_probability(
        circuit, StateVector.zero(circuit.witness_qubits)
    )
    p_zero = min(1.0, max(0.0, p_zero))
    zeros = rng.random(m) < p_zero
    x = np.where(zeros, 1.0, -1.0)  # E[X] = 2*Pr[0] - 1 = the estimated part
    return float(np.mean(x))


def estimate_amplitude(
    unitary: np.ndarray,
    prep: QuantumCircuit | None,
    tau: float,
    delta: float,
    seed: int,
) -> EstimateReport:
    """Estimate q = ⟨ψ|U|ψ⟩; |q̃ − q| ≤ τ·√2 except with probability 2δ.

    Real and imaginary parts are estimated independently with m(τ, δ)
    Hadamard-test samples each, on streams 0 and 1 of the seed.
    """
    m = sample_count(tau, delta)
    re = _hadamard_part(unitary, prep, "real", m, rng_stream(seed, 0))
    im = _hadamard_part(unitary, prep, "imag", m, rng_stream(seed, 1))
    return EstimateReport(
        value=complex(re, im), tau=tau, delta=delta, samples=m,
        seed=seed, mode="additive", bound=tau * np.sqrt(2.0),
    )


def estimate_amplitude_multiplicative(
    unitary: np.ndarray,
    prep: QuantumCircuit | None,
    epsilon: float,
    delta: float,
    lower_bound: float,
    seed: int,
) -> EstimateReport:
    """Relative-error variant: |q̃ − q| ≤ ε·|q| whenever |q| ≥ lower_bound."""
    if lower_bound <= 0:
        raise InvalidInputError(f"lower bound must be positive, got {lower_bound}")
    if epsilon <= 0:
        raise InvalidInputError(f"epsilon must be positive, got {epsilon}")
    tau = epsilon * lower_bound / np.sqrt(2.0)
    base = estimate_amplitude(unitary, prep, tau, delta, seed)
    warning = abs(base.value) < lower_bound * (1.0 - epsilon)
    return EstimateReport(
        value=base.value, tau=tau, delta=delta, samples=base.samples,
        seed=seed, mode="multiplicative", bound=epsilon * lower_bound,
        warning=bool(warning),
    )


@dataclass(frozen=True)
class GapInstance:
    """Deterministic path predicate: a circuit of classical reversible gates
    evaluated on basis states of the path register."""

    path_bits: int
    predicate: QuantumCircuit

    def __post_init__(self):
        if self.path_bits <= 0:
            raise InvalidInputError("need at least one path bit")
        if self.predicate.witness_qubits != self.path_bits:
            raise InvalidInputError(
                f"predicate expects {self.predicate.witness_qubits} witness "
                f"qubits, instance has {self.path_bits} path bits"
            )
        for gate in self.predicate.gates:
            if gate.name not in CLASSICAL_GATES:
                raise InvalidInputError(
                    f"gate {gate.name} is not classical; allowed: "
                    f"{CLASSICAL_GATES}"
                )

    def to_json(self) -> dict:
        out = self.predicate.to_json()
        out["classical_only"] = True
        return out

    @classmethod
    def from_json(cls, data: dict) -> "GapInstance":
        if not data.get("classical_only"):
            raise InvalidInputError("gap instance JSON must set classical_only")
        circuit = QuantumCircuit.from_json(data)
        return cls(circuit.witness_qubits, circuit)

    def evaluate(self, paths: np.ndarray) -> np.ndarray:
        """Accept bit (0/1) for each row of path bits (shape (m, path_bits))."""
        m = paths.shape[0]
        total = self.predicate.total_qubits
        wires = np.zeros((m, total), dtype=np.uint8)
        wires[:, : self.path_bits] = paths
        for gate in self.predicate.gates:
            t = gate.targets[0]
            if gate.name == "X":
                wires[:, t] ^= 1
            elif gate.name == "CX":
                wires[:, t] ^= wires[:, gate.controls[0]]
            else:  # TOFFOLI
                conj = np.ones(m, dtype=np.uint8)
                for c in gate.controls:
                    conj &= wires[:, c]
                wires[:, t] ^= conj
        return wires[:, self.predicate.accept_qubit]


def _paths_from_indices(indices: np.ndarray, p: int) -> np.ndarray:
    """Bit matrix of path indices, wire 0 = most significant bit."""
    shifts = np.arange(p - 1, -1, -1)
    return ((indices[:, None] >> shifts) & 1).astype(np.uint8)


def exact_gap(instance: GapInstance) -> int:
    """(#accepting − #rejecting) over all 2^p paths, by full enumeration."""
    p = instance.path_bits
    if p > EXACT_GAP_LIMIT:
        raise ResourceError(f"path_bits={p} exceeds limit {EXACT_GAP_LIMIT}")
    indices = np.arange(2**p, dtype=np.int64)
    accept = instance.evaluate(_paths_from_indices(indices, p))
    accepted = int(np.sum(accept))
    return 2 * accepted - 2**p


def estimate_gap(
    instance: GapInstance, tau_rel: float, delta: float, seed: int
) -> EstimateReport:
    """Unbiased g̃ = (2^p/m)·ΣX_i from uniformly sampled paths;
    |g̃ − g| ≤ τ_rel·2^p except with probability δ."""
    p = instance.path_bits
    m = sample_count(tau_rel, delta)
    rng = rng_stream(seed, 0)
    indices = rng.integers(0, 2**p, size=m)
    accept = instance.evaluate(_paths_from_indices(indices, p))
    x = 2.0 * accept - 1.0
    value = float(2**p / m * np.sum(x))
    return EstimateReport(
        value=value, tau=tau_rel, delta=delta, samples=m, seed=seed,
        mode="additive", bound=tau_rel * 2**p,
    )


def _accept_projected_columns(
    circuit: QuantumCircuit, witness_states: list[StateVector]
) -> np.ndarray:
    """Matrix whose columns are Π₁ · (circuit unitary) |w, 0...0⟩."""
    total = circuit.total_qubits
    cols = np.zeros((2**total, len(witness_states)), dtype=complex)
    tensor_shape = [2] * total
    for j, w in enumerate(witness_states):
        out = simulate(circuit, w).amplitudes.reshape(tensor_shape)
        projected = np.zeros(tensor_shape, dtype=complex)
        idx = [slice(None)] * total
        idx[circuit.accept_qubit] = 1
        projected[tuple(idx)] = out[tuple(idx)]
        cols[:, j] = projected.reshape(-1)
    return cols


def qmak_operator(verifier: QuantumCircuit, k: int) -> tuple[np.ndarray, float]:
    """The positive-semidefinite operator Q on the k-qubit witness register
    whose diagonal sums to 2^k times the maximally-mixed acceptance."""
    if verifier.witness_qubits != k:
        raise InvalidInputError(
            f"verifier has {verifier.witness_qubits} witness qubits, expected {k}"
        )
    if verifier.total_qubits > QMAK_QUBIT_LIMIT:
        raise ResourceError(
            f"verifier has {verifier.total_qubits} qubits, "
            f"limit {QMAK_QUBIT_LIMIT}"
        )
    witnesses = [StateVector.basis(k, w) for w in range(2**k)]
    phi = _accept_projected_columns(verifier, witnesses)
    q = phi.conj().T @ phi
    return q, float(np.trace(q).real)


@dataclass(frozen=True)
class QmakDecision:
    verdict: Verdict
    accept_probability: float
    trace: float
    k: int

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "accept_probability": self.accept_probability,
            "trace": self.trace,
            "k": self.k,
        }


def qmak_decide(
    verifier: QuantumCircuit, k: int,
    a_trace: float = 2 / 3, b_trace: float = 1 / 3,
) -> QmakDecision:
    """Decide by running the verifier on the maximally mixed witness:
    Pr[accept] = 2^{-k}·Tr(Q), compared against the rescaled thresholds."""
    _, trace = qmak_operator(verifier, k)
    prob = trace / 2**k
    if trace >= a_trace:
        verdict = Verdict.YES
    elif trace <= b_trace:
        verdict = Verdict.NO
    else:
        verdict = Verdict.PROMISE_VIOLATED
    return QmakDecision(verdict, prob, trace, k)


def amplify_gap(p_single: float, repetitions: int) -> float:
    """Majority vote over independent repetitions: the binomial upper tail."""
    if repetitions % 2 != 1 or repetitions < 1:
        raise InvalidInputError(f"repetitions must be odd, got {repetitions}")
    if not 0 <= p_single <= 1:
        raise InvalidInputError(f"probability out of range: {p_single}")
    r = repetitions
    return float(
        sum(
            comb(r, j) * p_single**j * (1 - p_single) ** (r - j)
            for j in range(r // 2 + 1, r + 1)
        )
    )


@dataclass(frozen=True)
class SliceDecision:
    verdict: Verdict
    max_acceptance: float
    a: float
    b: float
    k: int
    table: dict | None = None

    def to_json(self) -> dict:
        out = {
            "verdict": self.verdict.value,
            "max_acceptance": self.max_acceptance,
            "a": self.a,
            "b": self.b,
            "k": self.k,
        }
        if self.table is not None:
            out["table"] = self.table
        return out


def _slice_verdict(max_acceptance: float, a: float, b: float) -> Verdict:
    if max_acceptance >= b:
        return Verdict.YES
    if max_acceptance <= a:
        return Verdict.NO
    return Verdict.PROMISE_VIOLATED


def decide_weight_qcs_exact(
    circuit: QuantumCircuit, k: int, a: float, b: float
) -> SliceDecision:
    """Maximum acceptance over all weight-k witness states, exactly.

    The Gram matrix of accept-projected outputs over the weight-k basis has
    the maximum acceptance as its largest eigenvalue.
    """
    if b <= a:
        raise InvalidInputError(f"need b > a, got a={a}, b={b}")
    n = circuit.witness_qubits
    enum = WeightEnumeration(n, k)
    if enum.dim > WQCS_DIM_LIMIT:
        raise ResourceError(f"C({n},{k})={enum.dim} exceeds limit {WQCS_DIM_LIMIT}")
    if circuit.total_qubits > QMAK_QUBIT_LIMIT:
        raise ResourceError(
            f"circuit has {circuit.total_qubits} qubits, limit {QMAK_QUBIT_LIMIT}"
        )
    witnesses = [StateVector.basis(n, x) for x in enum.indices()]
    phi = _accept_projected_columns(circuit, witnesses)
    gram = phi.conj().T @ phi
    lam_max = float(full_spectrum(gram)[-1])
    return SliceDecision(_slice_verdict(lam_max, a, b), lam_max, a, b, k)


def decide_hamming_weight_qcs_exact(
    circuit: QuantumCircuit, k: int, a: float, b: float
) -> SliceDecision:
    """Maximum acceptance over weight-k basis-string witnesses, exactly."""
    if b <= a:
        raise InvalidInputError(f"need b > a, got a={a}, b={b}")
    n = circuit.witness_qubits
    enum = WeightEnumeration(n, k)
    if enum.dim > HWQCS_DIM_LIMIT:
        raise ResourceError(f"C({n},{k})={enum.dim} exceeds limit {HWQCS_DIM_LIMIT}")
    table = {}
    for bits in enum.strings():
        table[bits] = acceptance_probability(circuit, StateVector.from_bits(bits))
    best = max(table.values())
    return SliceDecision(_slice_verdict(best, a, b), float(best), a, b, k, table)
