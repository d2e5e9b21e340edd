import hypothesis.strategies as st
import pytest
from hypothesis import given

from drinfeld.errors import InvalidUnion, DomainError
from drinfeld.partitions import (enumerate_partitions, partitions_list, from_union, count, rfib,
                                 weight_identity_holds, ShadowedPartition)


def test_fibonacci_and_tribonacci_counts():
    assert [count(1, n) for n in range(6)] == [1, 1, 1, 1, 1, 1]
    assert [count(2, n) for n in range(9)] == [1, 1, 2, 3, 5, 8, 13, 21, 34]
    assert [count(3, n) for n in range(9)] == [1, 1, 2, 4, 7, 13, 24, 44, 81]
    assert [rfib(4, n) for n in range(7)] == [1, 1, 2, 4, 8, 15, 29]


def test_enumeration_order_for_rank_three():
    got = [S.sets for S in enumerate_partitions(3, 3)]
    assert got == [((0, 1, 2), (), ()), ((0,), (1,), ()), ((2,), (0,), ()), ((), (), (0,))]


def test_empty_partition():
    (S,) = enumerate_partitions(2, 0)
    assert S.sets == ((), ()) and S.class_index() == 0 and S.is_valid()


@given(st.integers(1, 4), st.integers(0, 10))
def test_partitions_tile_and_satisfy_weight_identity(r, n):
    parts = partitions_list(r, n)
    assert len(parts) == rfib(r, n) <= max(1, 2 ** n)
    assert len(set(parts)) == len(parts)
    for S in parts:
        assert S.is_valid()
        assert weight_identity_holds(S, 2) and weight_identity_holds(S, 5)


@given(st.integers(1, 4), st.integers(0, 10))
def test_union_determines_partition(r, n):
    for S in partitions_list(r, n):
        assert from_union(r, n, S.union()) == S


@given(st.integers(1, 4), st.integers(1, 10))
def test_shift_is_a_bijection_onto_each_class(r, n):
    parts = partitions_list(r, n)
    for i in range(1, r + 1):
        cls = sorted(S for S in parts if S.class_index() == i)
        image = sorted(S.shift(i) for S in partitions_list(r, n - i)) if n >= i else []
        assert cls == image
    for S in parts:
        assert S.unshift().shift(S.class_index()) == S


@pytest.mark.parametrize('U', [(1, 2), (0, 4), (0, 5)])
def test_invalid_unions(U):
    with pytest.raises(InvalidUnion):
        from_union(2, 5, U)


def test_bad_parameters():
    with pytest.raises(DomainError):
        list(enumerate_partitions(0, 3))
    with pytest.raises(DomainError):
        ShadowedPartition(2, 0, ((), ())).unshift()
