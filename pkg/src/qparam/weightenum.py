"""Ranking and unranking of fixed-Hamming-weight bitstrings.

The order is lexicographic on the bitstrings (equivalently, increasing as
unsigned integers), and ranks are computed with binomial-coefficient prefix
sums, so both directions run in O(n).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .errors import InvalidInputError


def rank_weight_string(n: int, k: int, bitstring: str) -> int:
    """Position of ``bitstring`` in the lexicographic order of weight-k strings."""
    if len(bitstring) != n:
        raise InvalidInputError(f"expected a string of length {n}, got {len(bitstring)}")
    if any(c not in "01" for c in bitstring):
        raise InvalidInputError(f"not a bitstring: {bitstring!r}")
    if bitstring.count("1") != k:
        raise InvalidInputError(
            f"expected Hamming weight {k}, got {bitstring.count('1')}"
        )
    rank = 0
    remaining = k
    for i, c in enumerate(bitstring):
        if c == "1":
            # strings that agree so far but have 0 here
            rank += comb(n - 1 - i, remaining)
            remaining -= 1
    return rank


def unrank_weight_string(n: int, k: int, index: int) -> str:
    """Inverse of :func:`rank_weight_string`."""
    dim = comb(n, k)
    if not 0 <= index < dim:
        raise InvalidInputError(f"index {index} out of range [0, {dim})")
    bits = []
    remaining = k
    for i in range(n):
        if remaining == 0:
            bits.append("0")
            continue
        zeros_here = comb(n - 1 - i, remaining)
        if index < zeros_here:
            bits.append("0")
        else:
            bits.append("1")
            index -= zeros_here
            remaining -= 1
    return "".join(bits)


def rank_weight_index(n: int, k: int, basis_index: int) -> int:
    """Rank of an n-qubit basis index (qubit 0 = most significant bit)."""
    return rank_weight_string(n, k, format(basis_index, f"0{n}b"))


def unrank_weight_index(n: int, k: int, index: int) -> int:
    """Unrank directly to a basis index (qubit 0 = most significant bit)."""
    return int(unrank_weight_string(n, k, index), 2)


@dataclass(frozen=True)
class WeightEnumeration:
    """Bijection between weight-k strings of length n and {0, ..., C(n,k)-1}."""

    n: int
    k: int
    dim: int = field(init=False)

    def __post_init__(self):
        if not 0 <= self.k <= self.n:
            raise InvalidInputError(f"need 0 <= k <= n, got k={self.k}, n={self.n}")
        object.__setattr__(self, "dim", comb(self.n, self.k))

    def rank(self, bitstring: str) -> int:
        return rank_weight_string(self.n, self.k, bitstring)

    def unrank(self, index: int) -> str:
        return unrank_weight_string(self.n, self.k, index)

    def strings(self):
        """All weight-k strings in rank order."""
        return (self.unrank(i) for i in range(self.dim))

    def indices(self):
        """All weight-k basis indices (qubit 0 = MSB) in rank order."""
        return (int(self.unrank(i), 2) for i in range(self.dim))
