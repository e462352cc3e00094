"""McKay graphs over exact character tables, BFS diameters, covering
exponents, and set-valued product-support closures.

Works over any table object exposing ``chars``, ``degrees``, ``order``,
``trivial_index``, ``char_names``, ``conjugate_char(i)`` and
``kron(i, j) -> list[int]`` (both SnTable and AnTable do).  Supports are
bitmasks over character indices; closure steps are valid set-wise because all
Kronecker multiplicities are nonnegative.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import log

from .anchars import build_an_table


def kron_support_masks(table) -> list[list[int]]:
    """masks[i][j] = bitmask of constituents of chi_i*chi_j; cached on table."""
    masks = getattr(table, "_kron_masks", None)
    if masks is None:
        k = len(table.chars)
        masks = [[0] * k for _ in range(k)]
        for i in range(k):
            for j in range(i, k):
                m = 0
                for nu, mult in enumerate(table.kron(i, j)):
                    if mult:
                        m |= 1 << nu
                masks[i][j] = masks[j][i] = m
        table._kron_masks = masks
    return masks


class McKayGraph:
    """Directed graph on Irr(G) with an edge i -> j when chi_j is a
    constituent of alpha*chi_i."""

    def __init__(self, table, alpha: int, adjacency_masks: list[int]):
        self.table = table
        self.alpha = alpha
        self.adjacency_masks = adjacency_masks
        self.adjacency = [
            sorted(j for j in range(len(table.chars)) if mask >> j & 1)
            for mask in adjacency_masks
        ]


def build_mckay(table, alpha: int) -> McKayGraph:
    if not 0 <= alpha < len(table.chars):
        raise ValueError(f"character index {alpha} out of range")
    masks = kron_support_masks(table)
    return McKayGraph(table, alpha, [masks[alpha][i] for i in range(len(table.chars))])


def bfs_distances(adjacency_masks: list[int], source: int) -> list[int | None]:
    """Directed BFS distances from source; None marks unreachable vertices."""
    k = len(adjacency_masks)
    dist: list[int | None] = [None] * k
    seen = 1 << source
    frontier = seen
    level = 0
    while frontier:
        for v in range(k):
            if frontier >> v & 1:
                dist[v] = level
        nxt = 0
        for v in range(k):
            if frontier >> v & 1:
                nxt |= adjacency_masks[v]
        frontier = nxt & ~seen
        seen |= nxt
        level += 1
    return dist


def diameter(graph: McKayGraph) -> int | None:
    """Max BFS distance over ordered vertex pairs; None when the graph is not
    strongly connected (the infinite case)."""
    best = 0
    for src in range(len(graph.adjacency_masks)):
        dist = bfs_distances(graph.adjacency_masks, src)
        if any(d is None for d in dist):
            return None
        best = max(best, max(dist))
    return best


def undirected_diameter(graph: McKayGraph) -> int | None:
    k = len(graph.adjacency_masks)
    sym = list(graph.adjacency_masks)
    for v in range(k):
        for w in range(k):
            if sym[v] >> w & 1:
                sym[w] |= 1 << v
    best = 0
    for src in range(k):
        dist = bfs_distances(sym, src)
        if any(d is None for d in dist):
            return None
        best = max(best, max(dist))
    return best


def covering_exponent(table, alpha: int) -> int | None:
    """Least k with support(alpha^k) = Irr(G), by iterating the support
    closure from the trivial character; None if a cycle recurs first."""
    if alpha == table.trivial_index:
        raise ValueError("covering exponent requires a nontrivial character")
    masks = kron_support_masks(table)
    full = (1 << len(table.chars)) - 1
    support = 1 << table.trivial_index
    seen = {support}
    k = 0
    while support != full:
        nxt = 0
        for v in range(len(table.chars)):
            if support >> v & 1:
                nxt |= masks[alpha][v]
        support = nxt
        k += 1
        if support in seen:
            return None
        seen.add(support)
    return k


def power_support(table, alpha: int, k: int) -> int:
    """Support bitmask of alpha^k via the same closure (k >= 0)."""
    masks = kron_support_masks(table)
    support = 1 << table.trivial_index
    for _ in range(k):
        nxt = 0
        for v in range(len(table.chars)):
            if support >> v & 1:
                nxt |= masks[alpha][v]
        support = nxt
    return support


def product_support(table, indices: list[int]) -> int:
    """Support bitmask of chi_{i1}*...*chi_{il}, left-to-right closure."""
    if not indices:
        raise ValueError("product_support needs a nonempty index list")
    masks = kron_support_masks(table)
    support = 1 << indices[0]
    for idx in indices[1:]:
        nxt = 0
        for v in range(len(table.chars)):
            if support >> v & 1:
                nxt |= masks[idx][v]
        support = nxt
    return support


def squared_support(table, support: int) -> int:
    """Support of X^2 given the support bitmask of X."""
    masks = kron_support_masks(table)
    members = [v for v in range(len(table.chars)) if support >> v & 1]
    out = 0
    for a in members:
        row = masks[a]
        for b in members:
            out |= row[b]
    return out


def is_faithful(table, i: int) -> bool:
    """Kernel of the character is trivial: value equals the degree only on
    the identity class."""
    if hasattr(table, "values"):  # integer-valued table
        row = table.values[i]
        deg = table.degrees[i]
        return all(v != deg for c, v in enumerate(row) if c != table.identity_class)
    row = table.pairs[i]
    deg2 = 2 * table.degrees[i]
    return all(
        (x, y) != (deg2, 0) for c, (x, y) in enumerate(row) if c != table.identity_class
    )


def _nontrivial_degree_gt1(table) -> list[int]:
    return [i for i in range(len(table.chars)) if table.degrees[i] > 1]


def product_covering_check(
    table,
    n: int,
    mode: str,
    trials: int = 0,
    seed: int = 0,
    indices: list[int] | None = None,
) -> dict:
    """Covering of Irr(G) by long products of degree->1 irreducibles.

    mode "squared": tuples of length l = 8n-11; the squared product must
    cover.  mode "doubled": tuples of length l = 24n-33 in which every entry
    appears at least twice; the product itself must cover.  Runs the
    all-one-character tuples for every candidate, plus `trials` seeded random
    tuples (or the explicit `indices` tuple when given).
    """
    if mode not in ("squared", "doubled"):
        raise ValueError(f"unknown mode {mode!r}")
    l = 8 * n - 11 if mode == "squared" else 24 * n - 33
    cand = _nontrivial_degree_gt1(table)
    full = (1 << len(table.chars)) - 1
    failures = []
    runs = 0

    def run_tuple(idxs):
        nonlocal runs
        runs += 1
        if any(table.degrees[i] <= 1 for i in idxs):
            raise ValueError("product covering requires every degree > 1")
        if len(idxs) < l:
            raise ValueError(f"tuple length {len(idxs)} below the bound {l}")
        if mode == "doubled":
            counts = {}
            for i in idxs:
                counts[i] = counts.get(i, 0) + 1
            if any(c < 2 for c in counts.values()):
                raise ValueError("doubled mode requires every entry at least twice")
        support = product_support(table, idxs)
        covered = (
            squared_support(table, support) == full
            if mode == "squared"
            else support == full
        )
        if not covered:
            failures.append([table.char_names[i] for i in idxs[:8]])

    if indices is not None:
        run_tuple(indices)
    else:
        for i in cand:
            run_tuple([i] * l)
        rng = random.Random(seed)
        for _ in range(trials):
            if mode == "squared":
                run_tuple([rng.choice(cand) for _ in range(l)])
            else:
                picks = [rng.choice(cand) for _ in range(l // 2)]
                tup = [i for i in picks for _ in (0, 1)]
                if len(tup) < l:
                    tup.append(picks[0])
                run_tuple(tup)

    return {
        "group": f"{table.group}_{n}",
        "n": n,
        "mode": mode,
        "l": l,
        "tuples_run": runs,
        "seed": seed,
        "failures": failures,
        "pass": not failures,
    }


def ratio_bound_holds(degree: int, diam: int, order: int, c: Fraction) -> bool:
    """diam <= c * log(order)/log(degree), exactly, via integer powers."""
    return degree ** (diam * c.denominator) <= order ** c.numerator


def minimal_ratio_numerator(degree: int, diam: int, order: int, den: int) -> int:
    """Smallest num with degree^(diam*den) <= order^num."""
    lhs = degree ** (diam * den)
    num, rhs = 0, 1
    while rhs < lhs:
        rhs *= order
        num += 1
    return num


def diameter_ratio_sweep(n_lo: int, n_hi: int) -> list[dict]:
    """Diameter and covering-exponent rows for every nontrivial alpha of A_n.

    The log_ratio column is informational (floats never feed assertions);
    exact bound checks go through fit_ratio_constant/ratio_bound_holds.
    """
    rows = []
    for n in range(n_lo, n_hi + 1):
        table = build_an_table(n)
        for alpha in range(len(table.chars)):
            if alpha == table.trivial_index:
                continue
            graph = build_mckay(table, alpha)
            diam = diameter(graph)
            cov = covering_exponent(table, alpha)
            deg = table.degrees[alpha]
            row = {
                "group": f"A_{n}",
                "n": n,
                "alpha_label": table.char_names[alpha],
                "alpha_degree": deg,
                "diameter": diam,
                "covering_exponent": cov,
                "log_ratio": (
                    None if diam is None or deg == 1
                    else diam * log(deg) / log(table.order)
                ),
            }
            # directed and undirected distance can only differ for complex
            # alpha; report the second notion whenever it does
            if table.conjugate_char(alpha) != alpha:
                undirected = undirected_diameter(graph)
                if undirected != diam:
                    row["diameter_undirected"] = undirected
            rows.append(row)
    return rows


def fit_ratio_constant(rows: list[dict], den: int = 64) -> Fraction:
    """Smallest multiple of 1/den dominating diam*log(deg)/log(order) over
    all finite rows, computed in integer arithmetic."""
    from math import factorial

    num = 1
    for row in rows:
        if row["diameter"] is None or row["alpha_degree"] == 1:
            continue
        order = factorial(row["n"]) // 2
        num = max(
            num,
            minimal_ratio_numerator(row["alpha_degree"], row["diameter"], order, den),
        )
    return Fraction(num, den)
