"""Irreducible characters of the symmetric group."""

from math import factorial

import pytest

from grastar.characters import character, character_table
from grastar.partitions import (
    ConjClass,
    Frame,
    class_size,
    conj_classes_of,
    dim_symmetric,
    partitions_of,
)


def test_s2_s3_tables_by_hand():
    t2 = character_table(2)
    assert t2.values == ((1, 1), (1, -1))
    t3 = character_table(3)
    # frames [3], [2,1], [1,1,1] against classes 1+1+1, 2+1, 3
    assert t3.values == ((1, 1, 1), (2, 0, -1), (1, -1, 1))


def test_first_column_is_dimension():
    for r in range(1, 8):
        table = character_table(r)
        for a, frame in enumerate(table.frames):
            assert table.values[a][0] == dim_symmetric(frame)


def test_trivial_and_sign_characters():
    for r in range(1, 8):
        table = character_table(r)
        for i, alpha in enumerate(table.classes):
            assert table.entry(Frame((r,)), alpha) == 1
            parity = (-1) ** (r - alpha.num_cycles)
            assert table.entry(Frame((1,) * r), alpha) == parity


def test_row_orthogonality():
    for r in range(1, 7):
        table = character_table(r)
        nframes = len(table.frames)
        for a in range(nframes):
            for b in range(nframes):
                acc = sum(
                    class_size(alpha) * table.values[a][i] * table.values[b][i]
                    for i, alpha in enumerate(table.classes)
                )
                assert acc == (factorial(r) if a == b else 0)


def test_column_orthogonality():
    for r in range(1, 7):
        table = character_table(r)
        for i, alpha in enumerate(table.classes):
            for j in range(len(table.classes)):
                acc = sum(row[i] * row[j] for row in table.values)
                expect = factorial(r) // class_size(alpha) if i == j else 0
                assert acc == expect


def test_known_value_two_two():
    # chi^[2,2] on the class of cycle type 2+2 in S_4 equals 2
    alpha = ConjClass.from_cycle_lengths((2, 2))
    assert character(Frame((2, 2)), alpha) == 2


def test_regular_representation_decomposition():
    # sum over frames of dim * chi is r! at the identity and 0 elsewhere
    for r in range(1, 7):
        table = character_table(r)
        for i, alpha in enumerate(table.classes):
            acc = sum(
                dim_symmetric(f) * table.values[a][i]
                for a, f in enumerate(table.frames)
            )
            assert acc == (factorial(r) if i == 0 else 0)


def test_weight_mismatch_rejected():
    with pytest.raises(ValueError):
        character(Frame((2,)), ConjClass.from_cycle_lengths((3,)))
