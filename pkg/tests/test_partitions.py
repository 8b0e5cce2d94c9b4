from fractions import Fraction
from math import factorial

import pytest

from fockchern.errors import DomainError
from fockchern.fock import FIXED_POINT, POWER_SUM, FockVector, basis_change
from fockchern.partitions import (EMPTY, Partition, char_table, combine, contains, contents,
                                  hook_product, mn_character, parse_partition, partition_algebra,
                                  partition_count, partitions_of, subpartition, subtract, z_factor)

import oracles


def test_partitions_of_examples():
    assert partitions_of(0) == (EMPTY,)
    assert len(partitions_of(4)) == 5
    assert partitions_of(1) == (Partition([1]),)
    assert [partition_count(n) for n in range(11)] == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]


def test_partition_validation():
    assert Partition([1, 3, 2]) == (3, 2, 1)
    assert parse_partition("2,1,1") == (2, 1, 1)
    assert parse_partition("") == EMPTY
    with pytest.raises((DomainError, ValueError)):
        Partition([2, 0])


@pytest.mark.parametrize("lam,z", [((), 1), ((1, 1), 2), ((3, 3, 1), 18), ((2, 1), 2)])
def test_z_factor(lam, z):
    assert z_factor(Partition(lam)) == z


@pytest.mark.parametrize("lam,h", [((1,), 1), ((2, 1), 3), ((2, 2), 12)])
def test_hook_product(lam, h):
    assert hook_product(Partition(lam)) == h


def test_contents():
    assert sorted(contents(Partition([1]))) == [0]
    assert sorted(contents(Partition([2, 1]))) == [-1, 0, 1]
    assert sorted(contents(Partition([3]))) == [0, 1, 2]


def test_partition_algebra_examples():
    assert combine(Partition([2]), Partition([1, 1])) == (2, 1, 1)
    assert contains(Partition([2]), Partition([1, 1])) is False
    assert subtract(Partition([2, 1, 1]), Partition([1, 1])) == (2,)
    assert partition_algebra(Partition([2]), Partition([1, 1]), "combine") == (2, 1, 1)


def test_subpartition_by_index():
    lam = Partition([3, 2, 2])
    assert subpartition(lam, {1, 3}) == (3, 2)
    assert subpartition(lam, set()) == EMPTY
    assert subpartition(lam, {1, 2, 3}) == lam


def test_character_examples():
    assert mn_character(Partition([2, 1]), Partition([3])) == -1
    assert mn_character(Partition([1, 1]), Partition([2])) == -1


@pytest.mark.parametrize("n", range(1, 7))
def test_characters_match_tabloid_counts(n):
    table = char_table(n)
    for lam in partitions_of(n):
        for mu in partitions_of(n):
            assert table.table[lam, mu] == oracles.brute_character(lam, mu), (lam, mu)


@pytest.mark.parametrize("n", range(0, 9))
def test_orthogonality_and_dimensions(n):
    assert not char_table(n).column_orthogonality_defects()
    ones = Partition([1] * n)
    for lam in partitions_of(n):
        assert mn_character(lam, ones) == factorial(n) // hook_product(lam)


def test_basis_change_examples():
    raw = FockVector(POWER_SUM, {Partition([1, 1]): Fraction(2)})
    assert basis_change(raw, FIXED_POINT) == FockVector(
        FIXED_POINT, {Partition([2]): Fraction(1), Partition([1, 1]): Fraction(1)})
    two = FockVector.basis_vector(Partition([2]), FIXED_POINT)
    assert basis_change(two, POWER_SUM).terms == {Partition([2]): 1, Partition([1, 1]): 1}
