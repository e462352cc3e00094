"""Exact character tables of the alternating groups, derived from S_n tables.

An S_n class (of even sign) splits into two A_n classes exactly when its
cycle type has all parts odd and distinct.  A character chi^lam restricts
irreducibly unless lam is self-conjugate, in which case it splits as a pair
phi+/phi- that agree everywhere except on the split class pair whose cycle
type equals the principal hooks (h_1 > ... > h_k) of lam; there the values
are (eps +- sqrt(eps*h_1*...*h_k))/2 with eps = (-1)^((n-k)/2).

Internally every value on class c is stored as an integer pair (x, y) meaning
(x + y*sqrt(D_c))/2, where D_c is the square-free radicand attached to the
class (1 for classes where every character is rational).  That keeps all
inner products in integer arithmetic; irrational parts are accumulated per
radicand and asserted to cancel.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from math import factorial

from .errors import ExactnessError
from .partitions import conjugate, enumerate_partitions, is_self_conjugate, principal_hooks
from .snchars import TABLE_CAP, build_sn_table, class_size, cycle_type_sign


def squarefree_radicand(m: int) -> tuple[int, int]:
    """m = c^2 * d with d square-free; returns (d, c).  Trial division, fine
    for the principal-hook products that occur at desk scale."""
    if m == 0:
        raise ValueError("radicand must be nonzero")
    sign = -1 if m < 0 else 1
    m = abs(m)
    d, c, f = 1, 1, 2
    while f * f <= m:
        e = 0
        while m % f == 0:
            m //= f
            e += 1
        c *= f ** (e // 2)
        if e % 2:
            d *= f
        f += 1
    return sign * d * m, c


@dataclass(frozen=True)
class QuadValue:
    """a + b*sqrt(d) with exact rational a, b and square-free integer d
    (normalized to d=1 whenever b=0).  d < 0 gives a complex value."""

    a: Fraction
    b: Fraction
    d: int

    @staticmethod
    def make(a, b=0, d=1) -> "QuadValue":
        a, b = Fraction(a), Fraction(b)
        if b == 0:
            d = 1
        return QuadValue(a, b, d)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def conj(self) -> "QuadValue":
        """Complex conjugate: flips the irrational part only for d < 0."""
        if self.d < 0:
            return QuadValue(self.a, -self.b, self.d)
        return self

    def __add__(self, other: "QuadValue") -> "QuadValue":
        if self.is_rational or other.is_rational or self.d == other.d:
            d = other.d if self.is_rational else self.d
            return QuadValue.make(self.a + other.a, self.b + other.b, d)
        raise ExactnessError(f"cannot add values over sqrt({self.d}) and sqrt({other.d})")

    def __mul__(self, other: "QuadValue") -> "QuadValue":
        if self.is_rational or other.is_rational or self.d == other.d:
            d = other.d if self.is_rational else self.d
            return QuadValue.make(
                self.a * other.a + self.b * other.b * d,
                self.a * other.b + self.b * other.a,
                d,
            )
        raise ExactnessError(f"cannot multiply values over sqrt({self.d}) and sqrt({other.d})")

    def to_json(self) -> dict:
        return {
            "a_num": str(self.a.numerator),
            "a_den": str(self.a.denominator),
            "b_num": str(self.b.numerator),
            "b_den": str(self.b.denominator),
            "D": str(self.d),
        }

    @staticmethod
    def from_json(obj: dict) -> "QuadValue":
        return QuadValue.make(
            Fraction(int(obj["a_num"]), int(obj["a_den"])),
            Fraction(int(obj["b_num"]), int(obj["b_den"])),
            int(obj["D"]),
        )

    def __str__(self) -> str:
        if self.is_rational:
            return str(self.a)
        return f"{self.a}{'+' if self.b >= 0 else ''}{self.b}*sqrt({self.d})"


class AnTable:
    """Exact table of Irr(A_n).

    classes: list of (cycle_type, tag) with tag in {"whole", "plus", "minus"};
    chars: list of (lam, tag) with tag in {"whole", "plus", "minus"};
    raw values are integer pairs, see module docstring.
    """

    group = "A"

    def __init__(self, n, chars, classes, sizes, radicands, pairs):
        self.n = n
        self.chars = chars
        self.classes = classes
        self.class_sizes = sizes
        self.class_radicands = radicands
        self.pairs = pairs
        self.order = factorial(n) // 2
        self.identity_class = classes.index(((1,) * n, "whole"))
        self.degrees = [row[self.identity_class][0] // 2 for row in pairs]
        self.trivial_index = 0
        self.split_cols = [c for c, d in enumerate(radicands) if d != 1]
        self.rat_cols = [c for c, d in enumerate(radicands) if d == 1]
        self.char_names = [
            "+".join(map(str, lam)) + {"whole": "", "plus": "(+)", "minus": "(-)"}[tag]
            for lam, tag in chars
        ]
        self.class_names = [
            "+".join(map(str, mu)) + {"whole": "", "plus": "(+)", "minus": "(-)"}[tag]
            for mu, tag in classes
        ]

    def value(self, i: int, c: int) -> QuadValue:
        x, y = self.pairs[i][c]
        return QuadValue.make(Fraction(x, 2), Fraction(y, 2), self.class_radicands[c])

    def conjugate_char(self, i: int) -> int:
        """Index of the complex conjugate character."""
        lam, tag = self.chars[i]
        if tag == "whole":
            return i
        # phi+- are swapped by conjugation exactly when their irrational
        # values are non-real, i.e. the radicand on their split classes is < 0.
        for c, (x, y) in enumerate(self.pairs[i]):
            if y:
                if self.class_radicands[c] < 0:
                    other = (lam, "minus" if tag == "plus" else "plus")
                    return self.chars.index(other)
                return i
        return i

    def kron(self, i: int, j: int) -> list[int]:
        """Multiplicities of chi_i * chi_j, asserting irrational cancellation.

        Only the split class pairs can carry irrational contributions, so the
        inner loop over target characters stays in plain integer products on
        the rational columns and corrects the few split columns separately.
        Memoized per table.
        """
        cache = self.__dict__.setdefault("_kron_cache", {})
        key = (i, j) if i <= j else (j, i)
        hit = cache.get(key)
        if hit is not None:
            return hit
        sizes, rad = self.class_sizes, self.class_radicands
        pi, pj = self.pairs[i], self.pairs[j]
        wx = [0] * len(sizes)
        wy = [0] * len(sizes)
        for c, size in enumerate(sizes):
            x1, y1 = pi[c]
            x2, y2 = pj[c]
            if y1 or y2:
                d = rad[c]
                wx[c] = size * (x1 * x2 + y1 * y2 * d)
                wy[c] = size * (x1 * y2 + y1 * x2)
            else:
                wx[c] = size * x1 * x2
        denom = 8 * self.order
        out = []
        for nu in range(len(self.chars)):
            pn = self.pairs[nu]
            total = sum(wx[c] * pn[c][0] for c in self.rat_cols)
            residues: dict[int, int] = {}
            for c in self.split_cols:
                d = rad[c]
                x3, y3 = pn[c]
                if d < 0:
                    y3 = -y3
                total += wx[c] * x3 + wy[c] * y3 * d
                r = wx[c] * y3 + wy[c] * x3
                if r:
                    residues[d] = residues.get(d, 0) + r
            if any(residues.values()):
                raise ExactnessError(
                    f"irrational part survives in A_{self.n} product decomposition"
                )
            q, r = divmod(total, denom)
            if r or q < 0:
                raise ExactnessError(f"inexact Kronecker multiplicity for A_{self.n}")
            out.append(q)
        cache[key] = out
        return out

    def check_orthogonality(self) -> None:
        k = len(self.chars)
        for i in range(k):
            for j in range(i, k):
                s, residues = 0, {}
                for c, size in enumerate(self.class_sizes):
                    x1, y1 = self.pairs[i][c]
                    x2, y2 = self.pairs[j][c]
                    d = self.class_radicands[c]
                    if d < 0:
                        y2 = -y2
                    s += size * (x1 * x2 + y1 * y2 * d)
                    if y1 or y2:
                        residues[d] = residues.get(d, 0) + size * (x1 * y2 + y1 * x2)
                if any(residues.values()) or s != (4 * self.order if i == j else 0):
                    raise ExactnessError(f"row orthogonality fails for A_{self.n} ({i},{j})")
        for c in range(k):
            for e in range(c, k):
                s, residues = 0, {}
                dc, de = self.class_radicands[c], self.class_radicands[e]
                for i in range(k):
                    x1, y1 = self.pairs[i][c]
                    x2, y2 = self.pairs[i][e]
                    if de < 0:
                        y2 = -y2
                    if y1 and y2:
                        if dc != de:
                            raise ExactnessError("mixed radicands in one column product")
                        s += x1 * x2 + y1 * y2 * dc
                        residues[dc] = residues.get(dc, 0) + x1 * y2 + y1 * x2
                    else:
                        s += x1 * x2
                        if y1 or y2:
                            d = dc if y1 else de
                            residues[d] = residues.get(d, 0) + x1 * y2 + y1 * x2
                want = 4 * self.order // self.class_sizes[c] if c == e else 0
                if any(residues.values()) or s != want:
                    raise ExactnessError(f"column orthogonality fails for A_{self.n} ({c},{e})")


def splits_in_an(cycle_type: tuple[int, ...]) -> bool:
    """An even S_n class splits in A_n iff all parts are odd and distinct."""
    return all(p % 2 for p in cycle_type) and len(set(cycle_type)) == len(cycle_type)


@cache
def build_an_table(n: int, allow_large: bool = False) -> AnTable:
    if n < 3:
        raise ValueError(f"build_an_table needs n >= 3, got {n}")
    if n > TABLE_CAP and not allow_large:
        raise ValueError(
            f"A_{n} table exceeds the soft cap {TABLE_CAP}; pass allow_large=True"
        )
    sn = build_sn_table(n, allow_large)

    classes: list[tuple[tuple[int, ...], str]] = []
    sizes: list[int] = []
    radicands: list[int] = []
    split_scale: dict[tuple[int, ...], int] = {}
    for mu in sn.classes:
        if cycle_type_sign(mu) != 1:
            continue
        if splits_in_an(mu):
            eps = 1 if (n - len(mu)) % 4 == 0 else -1
            prod = eps
            for h in mu:
                prod *= h
            d, scale = squarefree_radicand(prod)
            split_scale[mu] = scale
            half = class_size(mu) // 2
            classes.append((mu, "plus"))
            classes.append((mu, "minus"))
            sizes += [half, half]
            radicands += [d, d]
        else:
            classes.append((mu, "whole"))
            sizes.append(class_size(mu))
            radicands.append(1)

    chars: list[tuple[tuple[int, ...], str]] = []
    rows: list[list[tuple[int, int]]] = []
    sn_col = {mu: sn.classes.index(mu) for mu, _ in classes}

    def sn_values_on_an(lam):
        row = sn.values[sn.chars.index(lam)]
        return [row[sn_col[mu]] for mu, _ in classes]

    for lam in enumerate_partitions(n):
        if is_self_conjugate(lam):
            hooks = principal_hooks(lam)
            eps = 1 if (n - len(hooks)) % 4 == 0 else -1
            base = sn_values_on_an(lam)
            scale = split_scale[hooks]
            for char_tag in ("plus", "minus"):
                row = []
                for c, (mu, class_tag) in enumerate(classes):
                    if mu == hooks:
                        if base[c] != eps:
                            raise ExactnessError(
                                f"chi^{lam} is not {eps} on its principal-hook class"
                            )
                        sign = 1 if char_tag == class_tag else -1
                        if radicands[c] == 1:
                            # eps*prod(hooks) was a perfect square: the split
                            # values (eps +- scale)/2 are rational
                            row.append((eps + sign * scale, 0))
                        else:
                            row.append((eps, sign * scale))
                    else:
                        if base[c] % 2:
                            raise ExactnessError(
                                f"odd chi^{lam} value off the principal-hook class"
                            )
                        row.append((base[c], 0))
                chars.append((lam, char_tag))
                rows.append(row)
        else:
            if lam < conjugate(lam):
                continue  # keep the lex-larger member of each {lam, lam'} pair
            chars.append((lam, "whole"))
            rows.append([(2 * v, 0) for v in sn_values_on_an(lam)])

    table = AnTable(n, chars, classes, sizes, radicands, rows)
    if sum(d * d for d in table.degrees) != table.order:
        raise ExactnessError(f"sum of squared degrees != |A_{n}|")
    table.check_orthogonality()
    return table


def kronecker_support(table: AnTable, i: int, j: int) -> dict[str, int]:
    """Constituents of chi_i * chi_j with multiplicities, keyed by label."""
    return {
        table.char_names[nu]: m for nu, m in enumerate(table.kron(i, j)) if m
    }


def split_degree_check(n: int) -> dict:
    """Every split character degree f satisfies f^4 >= 2^(n-5), compared in
    integers.  Returns the per-character report."""
    if not 5 <= n <= TABLE_CAP:
        raise ValueError(f"split_degree_check needs 5 <= n <= {TABLE_CAP}")
    table = build_an_table(n)
    rows = []
    ok = True
    for (lam, tag), deg in zip(table.chars, table.degrees):
        if tag == "whole":
            continue
        passed = deg**4 >= 2 ** (n - 5)
        ok = ok and passed
        rows.append({"label": "+".join(map(str, lam)) + f"({tag})", "degree": deg, "pass": passed})
    return {"n": n, "all_pass": ok, "characters": rows}
