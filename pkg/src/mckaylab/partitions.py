"""Integer partitions and Young-diagram geometry.

Partitions are plain tuples of weakly decreasing positive ints.  Everything
here is a pure function of immutable values; all arithmetic is exact.
Partition sizes are capped at ``SIZE_CAP`` unless ``allow_large=True`` is
passed, since most consumers (character tables) only make sense at desk scale.
"""

from __future__ import annotations

from functools import cache
from math import factorial
from typing import NamedTuple

SIZE_CAP = 40


class Node(NamedTuple):
    """A cell of a Young diagram, 1-based."""

    row: int
    col: int


def as_partition(parts, *, allow_large: bool = False) -> tuple[int, ...]:
    """Validate and normalize a partition given as any iterable of parts."""
    parts = tuple(int(p) for p in parts)
    if any(p <= 0 for p in parts):
        raise ValueError(f"partition parts must be positive: {parts}")
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise ValueError(f"partition parts must be weakly decreasing: {parts}")
    if sum(parts) > SIZE_CAP and not allow_large:
        raise ValueError(
            f"partition of {sum(parts)} exceeds the size cap {SIZE_CAP}; "
            "pass allow_large=True to override"
        )
    return parts


@cache
def enumerate_partitions(n: int) -> tuple[tuple[int, ...], ...]:
    """All partitions of n in lexicographically descending order.

    This order is the fixed total order used for character/class indexing
    everywhere in the package.
    """
    if not 0 <= n <= SIZE_CAP:
        raise ValueError(f"enumerate_partitions requires 0 <= n <= {SIZE_CAP}, got {n}")

    def gen(remaining: int, largest: int):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, largest), 0, -1):
            for rest in gen(remaining - first, first):
                yield (first, *rest)

    return tuple(gen(n, n))


@cache
def partition_count(n: int) -> int:
    """p(n) by the Euler pentagonal-free DP over largest parts."""
    table = [[0] * (n + 1) for _ in range(n + 1)]
    for k in range(n + 1):
        table[0][k] = 1
    for m in range(1, n + 1):
        for k in range(1, n + 1):
            table[m][k] = table[m][k - 1] + (table[m - k][min(m - k, k)] if k <= m else 0)
    return table[n][n]


def conjugate(parts: tuple[int, ...]) -> tuple[int, ...]:
    """Transpose of the Young diagram."""
    if not parts:
        return ()
    return tuple(sum(1 for p in parts if p > i) for i in range(parts[0]))


def is_self_conjugate(parts: tuple[int, ...]) -> bool:
    return parts == conjugate(parts)


def hook_lengths(parts: tuple[int, ...]) -> list[list[int]]:
    """hook(i,j) = lambda_i - j + lambda'_j - i + 1 per cell, as row lists."""
    conj = conjugate(parts)
    return [
        [parts[i] - (j + 1) + conj[j] - (i + 1) + 1 for j in range(parts[i])]
        for i in range(len(parts))
    ]


def hook_product(parts: tuple[int, ...]) -> int:
    prod = 1
    for row in hook_lengths(parts):
        for h in row:
            prod *= h
    return prod


def dimension(parts: tuple[int, ...]) -> int:
    """Number of standard Young tableaux, n!/(product of hooks), exactly."""
    n = sum(parts)
    fact, hooks = factorial(n), hook_product(parts)
    if fact % hooks:
        raise ArithmeticError(f"hook product {hooks} does not divide {n}! for {parts}")
    return fact // hooks


def principal_hooks(parts: tuple[int, ...]) -> tuple[int, ...]:
    """Diagonal hook lengths h(1,1) > h(2,2) > ...; for a self-conjugate
    partition these are distinct odd numbers summing to n."""
    conj = conjugate(parts)
    hooks = []
    i = 0
    while i < len(parts) and parts[i] > i:
        hooks.append(parts[i] - (i + 1) + conj[i] - (i + 1) + 1)
        i += 1
    return tuple(hooks)


def removable_nodes(parts: tuple[int, ...]) -> list[Node]:
    """Cells whose removal leaves a valid partition (one per distinct part)."""
    nodes = []
    for i, p in enumerate(parts):
        below = parts[i + 1] if i + 1 < len(parts) else 0
        if p > below:
            nodes.append(Node(i + 1, p))
    return nodes


def addable_nodes(parts: tuple[int, ...]) -> list[Node]:
    """Cells whose addition yields a valid partition, including a new row."""
    nodes = []
    for i, p in enumerate(parts):
        above = parts[i - 1] if i > 0 else None
        if above is None or p < above:
            nodes.append(Node(i + 1, p + 1))
    nodes.append(Node(len(parts) + 1, 1))
    return nodes


def remove_node(parts: tuple[int, ...], node: Node) -> tuple[int, ...]:
    i = node.row - 1
    if not (0 <= i < len(parts)) or parts[i] != node.col:
        raise ValueError(f"{node} is not removable from {parts}")
    if i + 1 < len(parts) and parts[i] - 1 < parts[i + 1]:
        raise ValueError(f"{node} is not removable from {parts}")
    out = list(parts)
    out[i] -= 1
    if out[i] == 0:
        out.pop()
    return tuple(out)


def add_node(parts: tuple[int, ...], node: Node) -> tuple[int, ...]:
    i = node.row - 1
    out = list(parts) + [0]
    if not (0 <= i < len(out)) or out[i] + 1 != node.col:
        raise ValueError(f"{node} is not addable to {parts}")
    if i > 0 and out[i] + 1 > out[i - 1]:
        raise ValueError(f"{node} is not addable to {parts}")
    out[i] += 1
    return tuple(p for p in out if p)


def staircase(m: int) -> tuple[int, ...]:
    """(m, m-1, ..., 1), a partition of m(m+1)/2."""
    if m < 1:
        raise ValueError(f"staircase needs m >= 1, got {m}")
    return tuple(range(m, 0, -1))


def staircase_tail(n: int) -> tuple[int, tuple[int, ...]]:
    """The branching seed for degree n: the unique m with
    m(m+1)/2 <= n-3 < (m+1)(m+2)/2 together with the partition
    mu = (n-1-m(m-1)/2, m-1, ..., 2, 1) of n-1.

    mu has m rows and first part >= m+2, so adding any single node keeps the
    diagram wider than it is tall; every one-node extension of mu is therefore
    not self-conjugate.  Requires n >= 13 so that m >= 3.
    """
    if n < 13:
        raise ValueError(f"staircase_tail needs n >= 13, got {n}")
    m = 1
    while not ((m * (m + 1)) // 2 <= n - 3 < ((m + 1) * (m + 2)) // 2):
        m += 1
    mu = (n - 1 - (m * (m - 1)) // 2, *range(m - 1, 0, -1))
    assert sum(mu) == n - 1 and mu[0] >= m + 2
    return m, mu
