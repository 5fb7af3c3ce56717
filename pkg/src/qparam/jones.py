"""Braid words, plat closures, the path-model braid representation at
t = e^{2πi/k}, and an exact Kauffman-bracket oracle.

Conventions (fixed project-wide and validated end-to-end):
  * A = e^{-iπ/(2k)}, the principal branch of t^{-1/4}.
  * Positive letter ⇒ positive crossing; writhe = sum of letter signs.
  * Bracket smoothing: a positive crossing resolves to the vertical
    (identity) smoothing with weight A and the cup-cap smoothing with
    weight A^{-1}; negative crossings swap the weights.
  * Generator image U_i = i·e^{3iπ/k}·(a·I − a^{-1}·E_i) with a = A and
    E_i the Temperley-Lieb path-model generator; the phase makes the
    plat amplitude match the bracket normalization exactly.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil, cos, log2, pi, sin, sqrt

import numpy as np

from .circuits import Gate, QuantumCircuit
from .errors import InvalidInputError, ResourceError
from .estimators import EstimateReport, estimate_amplitude

BRACKET_CROSSING_LIMIT = 16
PATH_MODEL_DIM_LIMIT = 4096


def _check_level(k: int):
    if not (k == 5 or k >= 7):
        raise InvalidInputError(f"k must be 5 or at least 7, got {k}")


@dataclass(frozen=True)
class BraidWord:
    """Signed generator word; letter g crosses strands |g|-1 and |g| with
    sign(g) giving the crossing direction."""

    strands: int
    word: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(self.word))
        if self.strands <= 0 or self.strands % 2 != 0:
            raise InvalidInputError(
                f"strand count must be even and positive, got {self.strands}"
            )
        for g in self.word:
            if g == 0 or abs(g) >= self.strands:
                raise InvalidInputError(
                    f"letter {g} out of range for {self.strands} strands"
                )

    def to_json(self) -> dict:
        return {"strands": self.strands, "word": list(self.word)}

    @classmethod
    def from_json(cls, data: dict) -> "BraidWord":
        try:
            return cls(int(data["strands"]), tuple(data["word"]))
        except (KeyError, TypeError) as exc:
            raise InvalidInputError(f"malformed braid JSON: {exc}") from exc


def writhe(braid: BraidWord) -> int:
    """Signed crossing count; plat caps add no crossings."""
    return sum(1 if g > 0 else -1 for g in braid.word)


class _UnionFind:
    def __init__(self):
        self.parent: dict[int, int] = {}

    def make(self, x: int):
        self.parent[x] = x

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int):
        self.parent[self.find(a)] = self.find(b)

    def classes(self) -> int:
        return len({self.find(x) for x in self.parent})


@dataclass(frozen=True)
class LinkDiagram:
    """Plat closure of a braid: ordered crossings plus caps on both ends."""

    strands: int
    crossings: tuple[tuple[int, int], ...]  # (position i, sign ±1)
    components: int

    def to_json(self) -> dict:
        return {
            "strands": self.strands,
            "crossings": [list(c) for c in self.crossings],
            "components": self.components,
        }


def plat_closure(braid: BraidWord) -> LinkDiagram:
    """The plat-closed diagram, with its component count."""
    uf = _UnionFind()
    arcs = []
    next_id = 0
    for _ in range(braid.strands):
        uf.make(next_id)
        arcs.append(next_id)
        next_id += 1
    for j in range(0, braid.strands, 2):  # left caps
        uf.union(arcs[j], arcs[j + 1])
    crossings = []
    for g in braid.word:
        i = abs(g)
        crossings.append((i, 1 if g > 0 else -1))
        # strands pass through a crossing: swap positions, keep identities
        arcs[i - 1], arcs[i] = arcs[i], arcs[i - 1]
    for j in range(0, braid.strands, 2):  # right caps
        uf.union(arcs[j], arcs[j + 1])
    return LinkDiagram(braid.strands, tuple(crossings), uf.classes())


def kauffman_bracket(diagram: LinkDiagram, a_value: complex) -> complex:
    """State sum over all smoothings, with a single loop normalized to 1."""
    c = len(diagram.crossings)
    if c > BRACKET_CROSSING_LIMIT:
        raise ResourceError(
            f"{c} crossings exceeds bracket limit {BRACKET_CROSSING_LIMIT}"
        )
    a = complex(a_value)
    delta = -(a**2) - a ** (-2)
    total = 0.0 + 0.0j
    for choice in range(2**c):
        uf = _UnionFind()
        arcs = []
        next_id = 0
        for _ in range(diagram.strands):
            uf.make(next_id)
            arcs.append(next_id)
            next_id += 1
        for j in range(0, diagram.strands, 2):
            uf.union(arcs[j], arcs[j + 1])
        exponent = 0
        for bit, (i, sign) in enumerate(diagram.crossings):
            if (choice >> bit) & 1 == 0:  # vertical smoothing
                exponent += sign
            else:  # cup-cap smoothing
                exponent -= sign
                uf.union(arcs[i - 1], arcs[i])
                uf.make(next_id)
                uf.make(next_id + 1)
                uf.union(next_id, next_id + 1)
                arcs[i - 1], arcs[i] = next_id, next_id + 1
                next_id += 2
        for j in range(0, diagram.strands, 2):
            uf.union(arcs[j], arcs[j + 1])
        total += a**exponent * delta ** (uf.classes() - 1)
    return total


def jones_exact(braid: BraidWord, k: int) -> complex:
    """V(t) at t = e^{2πi/k} from the bracket and the writhe correction."""
    _check_level(k)
    a = np.exp(-1j * pi / (2 * k))
    w = writhe(braid)
    return complex((-a) ** (-3 * w) * kauffman_bracket(plat_closure(braid), a))


@dataclass(frozen=True)
class PathModel:
    """Walks of length `strands` on {1..k-1} starting at 1, steps ±1."""

    strands: int
    k: int
    basis: tuple[tuple[int, ...], ...] = field(init=False)
    dim: int = field(init=False)

    def __post_init__(self):
        _check_level(self.k)
        if self.strands <= 0 or self.strands % 2 != 0:
            raise InvalidInputError(
                f"strand count must be even and positive, got {self.strands}"
            )
        walks = []

        def extend(path):
            if len(path) == self.strands + 1:
                walks.append(tuple(path))
                return
            for step in (1, -1):
                v = path[-1] + step
                if 1 <= v <= self.k - 1:
                    path.append(v)
                    extend(path)
                    path.pop()

        extend([1])
        object.__setattr__(self, "basis", tuple(walks))
        object.__setattr__(self, "dim", len(walks))
        if self.dim == 0:
            raise InvalidInputError("empty path basis")

    def index(self, walk: tuple[int, ...]) -> int:
        return self.basis.index(walk)

    def cap_walk(self) -> tuple[int, ...]:
        """The alternating walk (1,2,1,2,...,1) matching the plat caps."""
        return tuple((2 if j % 2 == 1 else 1) for j in range(self.strands + 1))


def _tl_generator(model: PathModel, i: int) -> np.ndarray:
    """Temperley-Lieb generator E_i on the path basis."""
    k = model.k
    index = {p: j for j, p in enumerate(model.basis)}
    e = np.zeros((model.dim, model.dim), dtype=complex)
    for p in model.basis:
        before, at, after = p[i - 1], p[i], p[i + 1]
        if before != after:
            continue
        for new in (before - 1, before + 1):
            if 1 <= new <= k - 1:
                q = p[:i] + (new,) + p[i + 1:]
                col = index.get(q)
                if col is not None:
                    e[col, index[p]] = (
                        sqrt(sin(pi * at / k) * sin(pi * new / k))
                        / sin(pi * before / k)
                    )
    return e


def _generator_unitary(model: PathModel, i: int) -> np.ndarray:
    a = np.exp(-1j * pi / (2 * model.k))
    gamma = 1j * np.exp(3j * pi / model.k)
    return gamma * (a * np.eye(model.dim) - (1 / a) * _tl_generator(model, i))


def ajl_braid_unitary(braid: BraidWord, k: int) -> np.ndarray:
    """ρ(b): the product of generator images on the path basis."""
    model = PathModel(braid.strands, k)
    if model.dim > PATH_MODEL_DIM_LIMIT:
        raise ResourceError(
            f"path-model dimension {model.dim} exceeds {PATH_MODEL_DIM_LIMIT}"
        )
    out = np.eye(model.dim, dtype=complex)
    cache: dict[int, np.ndarray] = {}
    for g in braid.word:
        i = abs(g)
        if i not in cache:
            cache[i] = _generator_unitary(model, i)
        gen = cache[i] if g > 0 else cache[i].conj().T
        out = out @ gen
    return out


def plat_amplitude(braid: BraidWord, k: int) -> complex:
    """q(b) = (-1)^{n-1}·⟨cap|ρ(b)|cap⟩ for a 2n-strand braid."""
    model = PathModel(braid.strands, k)
    rho = ajl_braid_unitary(braid, k)
    cap = model.index(model.cap_walk())
    n = braid.strands // 2
    return complex((-1) ** (n - 1) * rho[cap, cap])


def jones_from_amplitude(amplitude: complex, w: int, n: int, k: int) -> complex:
    """Invert the plat rescaling: V = q·e^{-3iπ(k+1)w/(2k)}·(2cos π/k)^{n-1}."""
    phase = np.exp(-3j * pi * (k + 1) * w / (2 * k))
    return complex(amplitude * phase * (2 * cos(pi / k)) ** (n - 1))


def jones_via_path_model(braid: BraidWord, k: int) -> complex:
    """Exact pipeline value: plat amplitude rescaled to the Jones value."""
    return jones_from_amplitude(
        plat_amplitude(braid, k), writhe(braid), braid.strands // 2, k
    )


def _embed_unitary(matrix: np.ndarray) -> np.ndarray:
    """Pad a d-dimensional unitary to the next power of two with identity."""
    d = matrix.shape[0]
    m = max(1, ceil(log2(d))) if d > 1 else 1
    full = np.eye(2**m, dtype=complex)
    full[:d, :d] = matrix
    return full


def estimate_jones(
    braid: BraidWord, k: int, tau: float, delta: float, seed: int
) -> EstimateReport:
    """Sampled Jones value with additive bound τ·√2·(2cos π/k)^{n-1}.

    The plat amplitude is estimated by Hadamard tests on ρ(b) embedded into
    the smallest enclosing qubit register, with the cap basis state prepared
    by X gates; the estimate is then rescaled like the exact pipeline.
    """
    model = PathModel(braid.strands, k)
    n = braid.strands // 2
    rho = ajl_braid_unitary(braid, k)
    # fold the (-1)^{n-1} amplitude sign into the (still unitary) block
    embedded = _embed_unitary((-1) ** (n - 1) * rho)
    num_sys = int(log2(embedded.shape[0]))
    cap = model.index(model.cap_walk())
    prep_gates = [
        Gate("X", targets=(q,))
        for q in range(num_sys)
        if (cap >> (num_sys - 1 - q)) & 1
    ]
    prep = QuantumCircuit(num_sys, 0, tuple(prep_gates), 0)
    base = estimate_amplitude(embedded, prep, tau, delta, seed)
    value = jones_from_amplitude(base.value, writhe(braid), n, k)
    bound = tau * sqrt(2.0) * (2 * cos(pi / k)) ** (n - 1)
    return EstimateReport(
        value=value, tau=tau, delta=delta, samples=base.samples,
        seed=seed, mode="additive", bound=bound,
    )
