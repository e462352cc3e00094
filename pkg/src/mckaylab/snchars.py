"""Exact character tables of the symmetric groups.

Character values are computed by the Murnaghan-Nakayama recursion on beta-set
encodings (remove a rim hook of the largest remaining cycle length, sign by
leg length).  Tables validate both orthogonality relations before they are
handed out, and are memoized per n after that.
"""

from __future__ import annotations

from functools import cache
from math import factorial

from .errors import ExactnessError
from .partitions import (
    add_node,
    addable_nodes,
    dimension,
    enumerate_partitions,
    remove_node,
    removable_nodes,
)

TABLE_CAP = 14


def centralizer_order(cycle_type: tuple[int, ...]) -> int:
    """prod k^(m_k) m_k! over part sizes k with multiplicity m_k."""
    out, mult, prev = 1, 0, None
    for p in cycle_type:
        mult = mult + 1 if p == prev else 1
        out *= p * mult
        prev = p
    return out


def class_size(cycle_type: tuple[int, ...]) -> int:
    n = sum(cycle_type)
    return factorial(n) // centralizer_order(cycle_type)


def cycle_type_sign(cycle_type: tuple[int, ...]) -> int:
    return -1 if (sum(cycle_type) - len(cycle_type)) % 2 else 1


def _beta_set(parts: tuple[int, ...]) -> tuple[int, ...]:
    ell = len(parts)
    return tuple(parts[i] + ell - 1 - i for i in range(ell))


def _from_beta(beta: list[int]) -> tuple[int, ...]:
    beta = sorted(beta, reverse=True)
    ell = len(beta)
    return tuple(p for i, b in enumerate(beta) if (p := b - (ell - 1 - i)) > 0)


@cache
def mn_value(lam: tuple[int, ...], mu: tuple[int, ...]) -> int:
    """chi^lam(mu) for lam, mu partitions of the same n."""
    if sum(lam) != sum(mu):
        raise ValueError(f"{lam} and {mu} are partitions of different sizes")
    if not mu:
        return 1
    k, rest = mu[0], mu[1:]
    beta = _beta_set(lam)
    bset = set(beta)
    total = 0
    for b in beta:
        lower = b - k
        if lower < 0 or lower in bset:
            continue
        leg = sum(1 for c in beta if lower < c < b)
        child = [lower if c == b else c for c in beta]
        term = mn_value(_from_beta(child), rest)
        total += -term if leg % 2 else term
    return total


class SnTable:
    """Exact table of Irr(S_n): integer values
    ``values[char_index][class_index]``, characters and classes both indexed
    by partitions of n in the package's fixed descending-lex order."""

    group = "S"

    def __init__(self, n: int, chars, classes, sizes, values):
        self.n = n
        self.chars = chars
        self.classes = classes
        self.class_sizes = sizes
        self.values = values
        self.order = factorial(n)
        self.identity_class = classes.index((1,) * n)
        self.degrees = [row[self.identity_class] for row in values]
        self.trivial_index = 0
        self.char_names = ["+".join(map(str, lam)) for lam in chars]
        self.class_names = ["+".join(map(str, mu)) for mu in classes]

    def conjugate_char(self, i: int) -> int:
        """All S_n characters are real; complex conjugation is the identity."""
        return i

    def kron(self, i: int, j: int) -> list[int]:
        """Multiplicities of chi_i * chi_j in the char basis; memoized."""
        cache = self.__dict__.setdefault("_kron_cache", {})
        key = (i, j) if i <= j else (j, i)
        hit = cache.get(key)
        if hit is not None:
            return hit
        k = len(self.chars)
        weighted = [
            self.class_sizes[c] * self.values[i][c] * self.values[j][c]
            for c in range(k)
        ]
        out = []
        for nu in range(k):
            s = sum(w * self.values[nu][c] for c, w in enumerate(weighted))
            q, r = divmod(s, self.order)
            if r:
                raise ExactnessError(f"inexact Kronecker multiplicity for S_{self.n}")
            if q < 0:
                raise ExactnessError(f"negative Kronecker multiplicity for S_{self.n}")
            out.append(q)
        cache[key] = out
        return out

    def check_orthogonality(self) -> None:
        k = len(self.chars)
        vals, sizes = self.values, self.class_sizes
        for i in range(k):
            for j in range(i, k):
                s = sum(sizes[c] * vals[i][c] * vals[j][c] for c in range(k))
                if s != (self.order if i == j else 0):
                    raise ExactnessError(
                        f"row orthogonality fails for S_{self.n} at {i},{j}"
                    )
        for c in range(k):
            for d in range(c, k):
                s = sum(vals[i][c] * vals[i][d] for i in range(k))
                want = self.order // sizes[c] if c == d else 0
                if s != want:
                    raise ExactnessError(
                        f"column orthogonality fails for S_{self.n} at {c},{d}"
                    )


@cache
def build_sn_table(n: int, allow_large: bool = False) -> SnTable:
    if n < 1:
        raise ValueError(f"build_sn_table needs n >= 1, got {n}")
    if n > TABLE_CAP and not allow_large:
        raise ValueError(
            f"S_{n} table exceeds the soft cap {TABLE_CAP}; pass allow_large=True"
        )
    parts = enumerate_partitions(n)
    sizes = [class_size(mu) for mu in parts]
    values = [[mn_value(lam, mu) for mu in parts] for lam in parts]
    table = SnTable(n, list(parts), list(parts), sizes, values)
    for i, lam in enumerate(parts):
        if table.degrees[i] != dimension(lam):
            raise ExactnessError(f"degree column mismatch for S_{n} at {lam}")
    table.check_orthogonality()
    return table


def kronecker_support(table: SnTable, lam, kap) -> dict[tuple[int, ...], int]:
    """Constituents of chi^lam * chi^kap with multiplicities, keyed by label."""
    i, j = table.chars.index(tuple(lam)), table.chars.index(tuple(kap))
    mults = table.kron(i, j)
    return {table.chars[nu]: m for nu, m in enumerate(mults) if m}


def restrict_to_smaller(lam: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Branching: the constituents of chi^lam restricted one level down,
    each with multiplicity one (remove one removable node)."""
    return [remove_node(lam, a) for a in removable_nodes(lam)]


def induce_to_larger(lam: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Dual branching: add one addable node."""
    return [add_node(lam, b) for b in addable_nodes(lam)]
