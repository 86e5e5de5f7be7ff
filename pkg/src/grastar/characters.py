"""Exact irreducible character tables of the symmetric group S_r.

Characters are computed by the Murnaghan-Nakayama border-strip recursion,
carried out on first-column hook lengths (beta-numbers): removing a border
strip of length t corresponds to lowering one beta-number by t, with sign
(-1)^(number of beta-numbers jumped over).  All arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache

from grastar.errors import RangeError
from grastar.partitions import (
    ConjClass,
    Frame,
    _check_r,
    conj_classes_of,
    partitions_of,
)


def _beta_numbers(rows: tuple[int, ...]) -> tuple[int, ...]:
    k = len(rows)
    return tuple(rows[i] + k - (i + 1) for i in range(k))


def _rows_from_beta(beta: list[int]) -> tuple[int, ...]:
    beta = sorted(beta, reverse=True)
    k = len(beta)
    rows = tuple(beta[i] - (k - (i + 1)) for i in range(k))
    while rows and rows[-1] == 0:
        rows = rows[:-1]
    return rows


@cache
def _mn(rows: tuple[int, ...], cycles: tuple[int, ...]) -> int:
    if not cycles:
        return 1 if not rows else 0
    t = cycles[0]
    rest = cycles[1:]
    beta = list(_beta_numbers(rows))
    bset = set(beta)
    total = 0
    for idx, b in enumerate(beta):
        nb = b - t
        if nb < 0 or nb in bset:
            continue
        # strip height parity: count beta-numbers strictly between nb and b
        jumped = sum(1 for x in beta if nb < x < b)
        sign = -1 if jumped % 2 else 1
        new_beta = beta[:idx] + [nb] + beta[idx + 1 :]
        total += sign * _mn(_rows_from_beta(new_beta), rest)
    return total


def character(frame: Frame, alpha: ConjClass) -> int:
    """The irreducible character chi^[m]_alpha of S_r (an integer)."""
    if frame.weight != alpha.r:
        raise ValueError(
            f"frame weight {frame.weight} does not match class of S_{alpha.r}"
        )
    return _mn(frame.rows, alpha.cycle_lengths())


@dataclass(frozen=True)
class CharTable:
    """Complete character table of S_r.

    ``values[a][i]`` is the character of the frame ``frames[a]`` at the
    class ``classes[i]``; rows follow ``partitions_of(r)``, columns follow
    ``conj_classes_of(r)``.
    """

    r: int
    frames: tuple[Frame, ...]
    classes: tuple[ConjClass, ...]
    values: tuple[tuple[int, ...], ...]

    def entry(self, frame: Frame, alpha: ConjClass) -> int:
        a = self.frames.index(frame)
        i = self.classes.index(alpha)
        return self.values[a][i]


@cache
def character_table(r: int) -> CharTable:
    """Build (and cache) the full character table of S_r, r <= 12."""
    _check_r(r)
    frames = partitions_of(r)
    classes = conj_classes_of(r)
    values = tuple(
        tuple(character(f, alpha) for alpha in classes) for f in frames
    )
    return CharTable(r=r, frames=frames, classes=classes, values=values)
