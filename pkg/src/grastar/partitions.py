"""Integer partitions, conjugacy classes of S_r and the two dimension formulas.

Partitions ("frames") label both the irreducible representations of the
symmetric group S_r and, via Schur-Weyl duality, those of Gl(s, C).
Conjugacy classes of S_r are cycle types, stored as multiplicity vectors.
Everything here is exact integer arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cache
from math import factorial

from grastar.errors import RangeError

#: Hard cap on the symmetric-group order parameter r.  r! grows fast and the
#: table-building algorithms are meant for desk scale only.
MAX_R = 12


def _check_r(r: int) -> None:
    if not isinstance(r, int) or r < 1 or r > MAX_R:
        raise RangeError(f"r must be an integer in 1..{MAX_R}, got {r!r}")


@dataclass(frozen=True)
class Frame:
    """A partition [m_1 >= m_2 >= ...] drawn as a Young frame.

    Trailing zero rows are permitted on input but stripped on construction,
    so equality and hashing compare canonical forms.
    """

    rows: tuple[int, ...]

    def __init__(self, rows):
        rows = tuple(int(m) for m in rows)
        if any(m < 0 for m in rows):
            raise ValueError(f"negative row length in {rows}")
        if any(rows[i] < rows[i + 1] for i in range(len(rows) - 1)):
            raise ValueError(f"rows not weakly decreasing: {rows}")
        while rows and rows[-1] == 0:
            rows = rows[:-1]
        object.__setattr__(self, "rows", rows)

    @property
    def weight(self) -> int:
        return sum(self.rows)

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def __repr__(self):
        return f"Frame({list(self.rows)})"


@dataclass(frozen=True)
class ConjClass:
    """A conjugacy class of S_r given by its cycle-count vector.

    ``alpha[i-1]`` is the number of i-cycles; the constraint
    sum_i i * alpha_i = r is enforced.
    """

    alpha: tuple[int, ...]

    def __init__(self, alpha):
        alpha = tuple(int(a) for a in alpha)
        if any(a < 0 for a in alpha):
            raise ValueError(f"negative cycle count in {alpha}")
        r = sum((i + 1) * a for i, a in enumerate(alpha))
        if r != len(alpha):
            raise ValueError(
                f"cycle counts {alpha} are not a class of S_{len(alpha)}: "
                f"sum i*alpha_i = {r}"
            )
        object.__setattr__(self, "alpha", alpha)

    @property
    def r(self) -> int:
        return len(self.alpha)

    @property
    def num_cycles(self) -> int:
        """|alpha|, the total number of cycles including fixed points."""
        return sum(self.alpha)

    def cycle_lengths(self) -> tuple[int, ...]:
        """Cycle lengths in decreasing order (the cycle-type partition)."""
        out = []
        for i in range(len(self.alpha), 0, -1):
            out.extend([i] * self.alpha[i - 1])
        return tuple(out)

    @classmethod
    def from_cycle_lengths(cls, lengths, r=None) -> "ConjClass":
        lengths = list(lengths)
        if r is None:
            r = sum(lengths)
        alpha = [0] * r
        for ell in lengths:
            alpha[ell - 1] += 1
        return cls(alpha)

    def __repr__(self):
        return f"ConjClass({list(self.alpha)})"


@dataclass(frozen=True)
class Permutation:
    """A permutation of {0, ..., r-1} given by its image tuple."""

    images: tuple[int, ...]

    def __init__(self, images):
        images = tuple(int(k) for k in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a bijection on 0..{len(images) - 1}: {images}")
        object.__setattr__(self, "images", images)

    @property
    def r(self) -> int:
        return len(self.images)

    def __call__(self, k: int) -> int:
        return self.images[k]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition self * other, acting as self after other."""
        return Permutation(tuple(self.images[other.images[k]] for k in range(self.r)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.r
        for k, v in enumerate(self.images):
            inv[v] = k
        return Permutation(tuple(inv))

    @classmethod
    def identity(cls, r: int) -> "Permutation":
        return cls(tuple(range(r)))

    def __repr__(self):
        return f"Permutation({list(self.images)})"


def _partitions_desc(n: int, maxpart: int):
    """Yield partitions of n with parts <= maxpart, reverse-lexicographically."""
    if n == 0:
        yield ()
        return
    for first in range(min(n, maxpart), 0, -1):
        for rest in _partitions_desc(n - first, first):
            yield (first,) + rest


@cache
def partitions_of(r: int) -> tuple[Frame, ...]:
    """All partitions of r as frames, in reverse-lexicographic order.

    The order ([r] first, [1,...,1] last) is part of the public contract:
    tables produced elsewhere index their rows by this sequence.
    """
    _check_r(r)
    return tuple(Frame(p) for p in _partitions_desc(r, r))


@cache
def conj_classes_of(r: int) -> tuple[ConjClass, ...]:
    """All conjugacy classes of S_r, identity class first.

    Classes are ordered by their cycle-type partition in the reverse of the
    ``partitions_of`` order, so the identity class [1,...,1] comes first and
    the r-cycle class last.
    """
    _check_r(r)
    return tuple(
        ConjClass.from_cycle_lengths(f.rows, r) for f in reversed(partitions_of(r))
    )


def class_size(alpha: ConjClass) -> int:
    """Number of permutations in the class: r! / prod_i i^alpha_i * alpha_i!."""
    denom = 1
    for i, a in enumerate(alpha.alpha, start=1):
        denom *= i**a * factorial(a)
    return factorial(alpha.r) // denom


def min_transpositions(alpha: ConjClass) -> int:
    """Minimal number of transpositions composing a permutation of this class.

    Equals r - |alpha| since an i-cycle needs i - 1 transpositions.
    """
    return alpha.r - alpha.num_cycles


def cycle_type(sigma: Permutation) -> ConjClass:
    """Cycle-count vector of a permutation."""
    r = sigma.r
    seen = [False] * r
    alpha = [0] * r
    for start in range(r):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = sigma.images[k]
            length += 1
        alpha[length - 1] += 1
    return ConjClass(alpha)


def permutations_of(r: int) -> list[Permutation]:
    """All of S_r; intended for brute-force oracles at small r."""
    _check_r(r)
    if r > 8:
        raise RangeError(f"full enumeration of S_{r} is not supported")
    return [Permutation(p) for p in itertools.permutations(range(r))]


def dim_symmetric(frame: Frame) -> int:
    """Dimension n_[m] of the S_r irreducible labelled by the frame.

    Uses the determinant-free product formula with l_i = m_i + k - i;
    appending zero rows does not change the value.
    """
    if frame.num_rows == 0:
        return 1
    k = frame.num_rows
    l = [frame.rows[i] + k - (i + 1) for i in range(k)]
    num = factorial(frame.weight)
    for i in range(k):
        for j in range(i + 1, k):
            num *= l[i] - l[j]
    denom = 1
    for li in l:
        denom *= factorial(li)
    assert num % denom == 0
    return num // denom


def dim_gl(frame: Frame, s: int) -> int:
    """Dimension d_[m] of the Gl(s, C) irreducible labelled by the frame.

    Zero when the frame has more than s nonzero rows (the antisymmetrisation
    degree exceeds s); otherwise the frame is padded to s rows and the
    product formula with l_i = m_i + s - i applies.
    """
    if s < 1:
        raise ValueError(f"s must be positive, got {s}")
    if frame.num_rows > s:
        return 0
    rows = list(frame.rows) + [0] * (s - frame.num_rows)
    l = [rows[i] + s - (i + 1) for i in range(s)]
    num = 1
    for i in range(s):
        for j in range(i + 1, s):
            num *= l[i] - l[j]
    denom = 1
    for i in range(s):
        denom *= factorial(s - 1 - i)
    assert num % denom == 0
    return num // denom
