import pytest
from hypothesis import given, strategies as st
from math import factorial

from mckaylab.partitions import (
    Node,
    add_node,
    addable_nodes,
    as_partition,
    conjugate,
    dimension,
    enumerate_partitions,
    hook_lengths,
    hook_product,
    is_self_conjugate,
    partition_count,
    principal_hooks,
    removable_nodes,
    remove_node,
    staircase,
    staircase_tail,
)
from oracles import syt_count


@st.composite
def partitions(draw, max_n=14):
    n = draw(st.integers(min_value=1, max_value=max_n))
    parts = []
    largest = n
    while n > 0:
        p = draw(st.integers(min_value=1, max_value=min(largest, n)))
        parts.append(p)
        largest = p
        n -= p
    return tuple(parts)


def brute_count(n):
    """Independent DP partition counter (largest-part recursion)."""
    from functools import lru_cache

    @lru_cache(maxsize=None)
    def f(m, k):
        if m == 0:
            return 1
        return sum(f(m - j, j) for j in range(1, min(m, k) + 1))

    return f(n, n)


def test_enumerate_counts_and_order():
    assert enumerate_partitions(0) == ((),)
    assert enumerate_partitions(1) == ((1,),)
    assert len(enumerate_partitions(5)) == 7
    for n in range(13):
        parts = enumerate_partitions(n)
        assert len(parts) == brute_count(n) == partition_count(n)
        assert list(parts) == sorted(parts, reverse=True)
        assert len(set(parts)) == len(parts)


def test_enumerate_range_errors():
    with pytest.raises(ValueError):
        enumerate_partitions(-1)
    with pytest.raises(ValueError):
        enumerate_partitions(41)


def test_partition_validation_and_cap():
    with pytest.raises(ValueError):
        as_partition((1, 2))
    with pytest.raises(ValueError):
        as_partition((3, 0))
    with pytest.raises(ValueError):
        as_partition((41,))
    assert as_partition((41,), allow_large=True) == (41,)


def test_hooks_examples():
    assert hook_lengths((3, 2, 1)) == [[5, 3, 1], [3, 1], [1]]
    assert hook_product((3, 2, 1)) == 45
    assert hook_lengths((1,)) == [[1]]
    assert hook_lengths((5,)) == [[5, 4, 3, 2, 1]]


def test_dimension_examples():
    assert dimension((2, 1)) == 2
    assert dimension((3, 2, 1)) == 16
    assert dimension((7,)) == 1


@given(partitions(max_n=9))
def test_dimension_matches_tableau_count(lam):
    assert dimension(lam) == syt_count(lam)


def test_conjugate_examples():
    assert conjugate((3, 1)) == (2, 1, 1)
    assert is_self_conjugate((2, 1))
    assert is_self_conjugate((2, 2))
    assert not is_self_conjugate((3, 1))


@given(partitions())
def test_conjugate_involution_and_dimension(lam):
    assert conjugate(conjugate(lam)) == lam
    assert dimension(lam) == dimension(conjugate(lam))


def test_burnside_sum_of_squares():
    for n in range(1, 13):
        assert sum(dimension(lam) ** 2 for lam in enumerate_partitions(n)) == factorial(n)


def test_nodes_examples():
    assert addable_nodes((2, 1)) == [Node(1, 3), Node(2, 2), Node(3, 1)]
    assert removable_nodes((2, 1)) == [Node(1, 2), Node(2, 1)]
    assert removable_nodes((1,)) == [Node(1, 1)]
    assert addable_nodes((4,)) == [Node(1, 5), Node(2, 1)]


@given(partitions())
def test_nodes_brute_force(lam):
    n = sum(lam)
    grid = [
        Node(r + 1, c + 1) for r in range(len(lam) + 1) for c in range(lam[0] + 1)
    ]
    addable = set(addable_nodes(lam))
    removable = set(removable_nodes(lam))
    for node in grid:
        try:
            bigger = add_node(lam, node)
            ok_add = sum(bigger) == n + 1
        except ValueError:
            ok_add = False
        assert ok_add == (node in addable)
        try:
            smaller = remove_node(lam, node)
            ok_rm = sum(smaller) == n - 1
        except ValueError:
            ok_rm = False
        assert ok_rm == (node in removable)


def test_staircase():
    assert staircase(3) == (3, 2, 1)
    assert staircase(1) == (1,)
    assert staircase(6) == (6, 5, 4, 3, 2, 1)
    assert sum(staircase(6)) == 21


def test_staircase_dimension_bound_small():
    # dimension^11 >= (n!)^5 for the first few staircases
    for m in (6, 7, 8):
        lam = staircase(m)
        n = m * (m + 1) // 2
        assert dimension(lam) ** 11 >= factorial(n) ** 5


def test_staircase_tail_examples():
    assert staircase_tail(13) == (4, (6, 3, 2, 1))
    assert staircase_tail(24) == (6, (8, 5, 4, 3, 2, 1))
    with pytest.raises(ValueError):
        staircase_tail(12)


def test_staircase_tail_extensions_never_self_conjugate():
    for n in range(13, 201):
        m, mu = staircase_tail(n)
        assert sum(mu) == n - 1 and len(mu) == m and mu[0] >= m + 2
        for b in addable_nodes(mu):
            ext = add_node(mu, b)
            assert len(ext) <= m + 1
            assert ext[0] >= m + 2
            assert not is_self_conjugate(ext)


def test_principal_hooks():
    assert principal_hooks((2, 2)) == (3, 1)
    assert principal_hooks((3, 1, 1)) == (5,)
    assert principal_hooks((3, 2, 1)) == (5, 1)


@given(partitions())
def test_principal_hooks_self_conjugate(lam):
    if is_self_conjugate(lam):
        hooks = principal_hooks(lam)
        assert sum(hooks) == sum(lam)
        assert all(h % 2 == 1 for h in hooks)
        assert len(set(hooks)) == len(hooks)
