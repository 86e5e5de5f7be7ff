"""Commuting actions of S_r and Gl(s, C) on tensor powers of C^s.

Permutations act by shuffling tensor slots, matrices by Kronecker powers.
Young projectors (images of the central idempotents) are exact rational;
the Frobenius and Schur character checks run in complex floats.

Index convention: the basis vector e_{A_1} x ... x e_{A_r} has flat index
sum_k A_k * s^(r-1-k) (row-major, first slot most significant).  A
permutation acts by rho(sigma): e_{A_1...A_r} -> e_{B_1...B_r} with
B_{sigma(k)} = A_k, which makes rho a homomorphism,
rho(sigma) rho(tau) = rho(sigma tau).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import numpy as np

from grastar.characters import character
from grastar.errors import RangeError
from grastar.partitions import (
    ConjClass,
    Frame,
    Permutation,
    cycle_type,
    dim_symmetric,
    partitions_of,
    permutations_of,
)
from grastar.center import CentralElement

#: Largest dense operator dimension s^r we are willing to materialize.
MAX_DIM = 4096


def _check_dim(s: int, r: int) -> int:
    dim = s**r
    if dim > MAX_DIM:
        raise RangeError(f"tensor dimension {s}^{r} = {dim} exceeds cap {MAX_DIM}")
    return dim


@dataclass
class TensorOperator:
    """Dense linear map on (C^s)^{x r}, exact rational or complex backed."""

    s: int
    r: int
    entries: np.ndarray  # (s^r, s^r); object dtype of Fractions iff exact
    exact: bool

    @classmethod
    def zero(cls, s: int, r: int, exact: bool = True) -> "TensorOperator":
        dim = _check_dim(s, r)
        if exact:
            entries = np.full((dim, dim), Fraction(0), dtype=object)
        else:
            entries = np.zeros((dim, dim), dtype=complex)
        return cls(s, r, entries, exact)

    @classmethod
    def identity(cls, s: int, r: int, exact: bool = True) -> "TensorOperator":
        out = cls.zero(s, r, exact)
        for i in range(s**r):
            out.entries[i, i] = Fraction(1) if exact else 1.0
        return out

    @property
    def dim(self) -> int:
        return self.s**self.r

    def __matmul__(self, other: "TensorOperator") -> "TensorOperator":
        if (self.s, self.r) != (other.s, other.r):
            raise ValueError("operator shapes differ")
        exact = self.exact and other.exact
        a = self.entries if self.exact == exact else self.to_complex().entries
        b = other.entries if other.exact == exact else other.to_complex().entries
        return TensorOperator(self.s, self.r, a @ b, exact)

    def __add__(self, other: "TensorOperator") -> "TensorOperator":
        if (self.s, self.r) != (other.s, other.r):
            raise ValueError("operator shapes differ")
        exact = self.exact and other.exact
        a = self.entries if self.exact == exact else self.to_complex().entries
        b = other.entries if other.exact == exact else other.to_complex().entries
        return TensorOperator(self.s, self.r, a + b, exact)

    def __sub__(self, other: "TensorOperator") -> "TensorOperator":
        return self + other.scale(-1)

    def scale(self, factor) -> "TensorOperator":
        if self.exact and isinstance(factor, (int, Fraction)):
            return TensorOperator(self.s, self.r, self.entries * Fraction(factor), True)
        return TensorOperator(self.s, self.r, self.to_complex().entries * complex(factor), False)

    def trace(self):
        return sum(self.entries[i, i] for i in range(self.dim))

    def to_complex(self) -> "TensorOperator":
        if not self.exact:
            return self
        return TensorOperator(
            self.s, self.r, self.entries.astype(complex), False
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TensorOperator)
            and (self.s, self.r, self.exact) == (other.s, other.r, other.exact)
            and bool(np.all(self.entries == other.entries))
        )

    def allclose(self, other: "TensorOperator", tol: float = 1e-12) -> bool:
        a = self.to_complex().entries
        b = other.to_complex().entries
        return bool(np.max(np.abs(a - b)) <= tol)


def _flat_indices(s: int, r: int):
    """All multi-indices (A_1..A_r) in flat order."""
    if r == 0:
        return [()]
    out = [()]
    for _ in range(r):
        out = [t + (a,) for t in out for a in range(s)]
    return out


def perm_index_map(sigma: Permutation, s: int) -> list[int]:
    """For each flat basis index, the flat index of its image under rho(sigma)."""
    r = sigma.r
    dim = _check_dim(s, r)
    inv = sigma.inverse().images
    powers = [s ** (r - 1 - k) for k in range(r)]
    out = [0] * dim
    for flat, multi in enumerate(_flat_indices(s, r)):
        image = sum(multi[inv[k]] * powers[k] for k in range(r))
        out[flat] = image
    return out


def rho_perm(sigma: Permutation, s: int, exact: bool = True) -> TensorOperator:
    """Permutation operator on (C^s)^{x r}; rho(sigma)rho(tau) = rho(sigma tau)."""
    out = TensorOperator.zero(s, sigma.r, exact)
    one = Fraction(1) if exact else 1.0
    for src, dst in enumerate(perm_index_map(sigma, s)):
        out.entries[dst, src] = one
    return out


def rho_central(u: CentralElement, s: int) -> TensorOperator:
    """Linear extension of rho to a central element (exact rational entries)."""
    r = u.r
    out = TensorOperator.zero(s, r, exact=True)
    coeffs = u.as_dict()
    for sigma in permutations_of(r):
        w = coeffs[cycle_type(sigma)]
        if w == 0:
            continue
        for src, dst in enumerate(perm_index_map(sigma, s)):
            out.entries[dst, src] += w
    return out


def d_power(S: np.ndarray, r: int) -> TensorOperator:
    """Kronecker power D(S) = S^{x r} with the shared index convention."""
    S = np.asarray(S, dtype=complex)
    if S.ndim != 2 or S.shape[0] != S.shape[1]:
        raise ValueError("S must be square")
    s = S.shape[0]
    _check_dim(s, r)
    entries = np.eye(1, dtype=complex)
    for _ in range(r):
        entries = np.kron(entries, S)
    return TensorOperator(s, r, entries, exact=False)


def projector(frame: Frame, s: int) -> TensorOperator:
    """Image rho(e_[m]) of the central idempotent: exact Young projector.

    Frames with more than s rows are annihilated by rho and yield the zero
    operator.
    """
    r = frame.weight
    out = TensorOperator.zero(s, r, exact=True)
    n = dim_symmetric(frame)
    rfact = factorial(r)
    chi_cache: dict[ConjClass, Fraction] = {}
    for sigma in permutations_of(r):
        alpha = cycle_type(sigma)
        if alpha not in chi_cache:
            chi_cache[alpha] = Fraction(n * character(frame, alpha), rfact)
        w = chi_cache[alpha]
        for src, dst in enumerate(perm_index_map(sigma, s)):
            out.entries[dst, src] += w
    return out


def frobenius_trace(A: np.ndarray, sigma: Permutation) -> complex:
    """tr(D(A) rho(sigma)); equals prod_k (tr A^k)^(alpha_k) for the cycle type."""
    A = np.asarray(A, dtype=complex)
    s = A.shape[0]
    r = sigma.r
    _check_dim(s, r)
    D = d_power(A, r).entries
    total = 0.0 + 0.0j
    for src, dst in enumerate(perm_index_map(sigma, s)):
        total += D[src, dst]
    return complex(total)


def power_traces(A: np.ndarray, r: int) -> list[complex]:
    """[tr A, tr A^2, ..., tr A^r]."""
    A = np.asarray(A, dtype=complex)
    out = []
    P = A.copy()
    for _ in range(r):
        out.append(complex(np.trace(P)))
        P = P @ A
    return out


def schur_character(frame: Frame, A: np.ndarray) -> complex:
    """Character of the Gl irreducible at A, by the Frobenius class sum."""
    from grastar.center import conj_classes_of  # local import to avoid cycle
    from grastar.partitions import class_size

    r = frame.weight
    if r == 0:
        return 1.0 + 0.0j
    a = power_traces(A, r)
    total = 0.0 + 0.0j
    for alpha in conj_classes_of(r):
        prod = 1.0 + 0.0j
        for k, mult in enumerate(alpha.alpha, start=1):
            if mult:
                prod *= a[k - 1] ** mult
        total += class_size(alpha) * prod * character(frame, alpha)
    return total / factorial(r)
