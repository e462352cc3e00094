"""Finite fields GF(p^e), dense exact linear algebra, characteristic
polynomials, polynomial factorization, and the eigenspace-support statistic.

Field elements are plain ints 0..q-1: base-p digits of the int are the
polynomial coefficients over the prime field (so 0 and 1 are always the
additive and multiplicative identities, and the embedding of a field into an
extension built over it is the identity on ints).  Extensions can be built
over any field, which gives GF(q^k) containing GF(q) with no conversion.

Polynomials are trimmed tuples of field ints, lowest degree first.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cache

from .errors import ExactnessError

Q_CAP = 1 << 20
DIM_CAP = 64
_MUL_TABLE_LIMIT = 1 << 16
_ADD_TABLE_LIMIT = 128


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


class Field:
    """GF(q) with q = p^e, either a prime field or an extension of `base` by
    a lexicographically least irreducible modulus."""

    def __init__(self, p, e, base, modulus):
        self.p = p
        self.e = e  # degree over the prime field
        self.q = p**e
        self.base = base  # None for prime fields
        self.modulus = modulus  # monic modulus over base, None for prime fields
        if self.q > Q_CAP:
            raise ValueError(f"field size {self.q} exceeds the cap {Q_CAP}")
        self._exp = self._log = None
        self._add_table = None
        if base is not None:
            self.deg = len(modulus) - 1  # degree over base
            if p == 2:
                pass  # addition is xor
            elif self.q <= _ADD_TABLE_LIMIT:
                self._add_table = [
                    [self._add_slow(a, b) for b in range(self.q)] for a in range(self.q)
                ]
            if self.q <= _MUL_TABLE_LIMIT:
                self._build_log_tables()

    # -- construction ------------------------------------------------------

    @staticmethod
    @cache
    def prime(p: int) -> "Field":
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        return Field(p, 1, None, None)

    @staticmethod
    @cache
    def extension(base: "Field", k: int) -> "Field":
        if k < 2:
            raise ValueError("extension degree must be >= 2")
        modulus = _least_irreducible(base, k)
        return Field(base.p, base.e * k, base, modulus)

    def __repr__(self):
        return f"GF({self.q})"

    def __hash__(self):
        return hash((self.p, self.e, id(self.base)))

    # -- digit helpers -----------------------------------------------------

    def digits(self, a: int) -> list[int]:
        """Coefficients of a over the base field (prime field: [a])."""
        if self.base is None:
            return [a]
        out, q0 = [], self.base.q
        for _ in range(self.deg):
            out.append(a % q0)
            a //= q0
        return out

    def from_digits(self, ds) -> int:
        q0, a = self.base.q, 0
        for c in reversed(list(ds)):
            a = a * q0 + c
        return a

    # -- arithmetic --------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.base is None:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._add_table is not None:
            return self._add_table[a][b]
        return self._add_slow(a, b)

    def _add_slow(self, a: int, b: int) -> int:
        base = self.base
        return self.from_digits(
            base.add(x, y) for x, y in zip(self.digits(a), self.digits(b))
        )

    def neg(self, a: int) -> int:
        if self.base is None:
            return (-a) % self.p
        if self.p == 2:
            return a
        base = self.base
        return self.from_digits(base.neg(x) for x in self.digits(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.base is None:
            return (a * b) % self.p
        if self._exp is not None:
            if a == 0 or b == 0:
                return 0
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_slow(a, b)

    def _mul_slow(self, a: int, b: int) -> int:
        base = self.base
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * self.deg - 1)
        for i, x in enumerate(da):
            if x == 0:
                continue
            for j, y in enumerate(db):
                prod[i + j] = base.add(prod[i + j], base.mul(x, y))
        # reduce by the monic modulus
        for top in range(len(prod) - 1, self.deg - 1, -1):
            c = prod[top]
            if c == 0:
                continue
            prod[top] = 0
            for i in range(self.deg):
                prod[top - self.deg + i] = base.add(
                    prod[top - self.deg + i], base.neg(base.mul(c, self.modulus[i]))
                )
        return self.from_digits(prod[: self.deg])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("field inverse of 0")
        if self.base is None:
            return pow(a, self.p - 2, self.p)
        if self._exp is not None:
            return self._exp[(self.q - 1) - self._log[a]]
        return self.pow(a, self.q - 2)

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            return 0 if n > 0 else 1
        n %= self.q - 1
        r = 1
        while n:
            if n & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            n >>= 1
        return r

    def elements(self):
        return range(self.q)

    def _build_log_tables(self):
        # find a multiplicative generator by order testing
        fac = _prime_factors(self.q - 1)
        g = None
        for cand in range(2, self.q):
            if all(self._pow_slow(cand, (self.q - 1) // f) != 1 for f in fac):
                g = cand
                break
        assert g is not None
        exp = [1] * (2 * (self.q - 1))
        log = [0] * self.q
        acc = 1
        for i in range(self.q - 1):
            exp[i] = acc
            log[acc] = i
            acc = self._mul_slow(acc, g)
        for i in range(self.q - 1, 2 * (self.q - 1)):
            exp[i] = exp[i - (self.q - 1)]
        self._exp, self._log = exp, log

    def _pow_slow(self, a: int, n: int) -> int:
        r = 1
        while n:
            if n & 1:
                r = self._mul_slow(r, a)
            a = self._mul_slow(a, a)
            n >>= 1
        return r


def _prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


@cache
def field(p: int, e: int = 1) -> Field:
    """GF(p^e) over the documented lex-least modulus tower."""
    if e == 1:
        return Field.prime(p)
    return Field.extension(Field.prime(p), e)


def quadratic_extension(f: Field) -> Field:
    return Field.extension(f, 2)


# -- polynomials -----------------------------------------------------------


def poly_trim(f: tuple) -> tuple:
    i = len(f)
    while i and f[i - 1] == 0:
        i -= 1
    return tuple(f[:i])


def poly_add(k: Field, f, g):
    n = max(len(f), len(g))
    f = tuple(f) + (0,) * (n - len(f))
    g = tuple(g) + (0,) * (n - len(g))
    return poly_trim(tuple(k.add(a, b) for a, b in zip(f, g)))


def poly_neg(k: Field, f):
    return tuple(k.neg(a) for a in f)


def poly_sub(k: Field, f, g):
    return poly_add(k, f, poly_neg(k, g))


def poly_scale(k: Field, f, c):
    if c == 0:
        return ()
    return tuple(k.mul(a, c) for a in f)


def poly_mul(k: Field, f, g):
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] = k.add(out[i + j], k.mul(a, b))
    return poly_trim(tuple(out))


def poly_divmod(k: Field, f, g):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    dg = len(g) - 1
    lead_inv = k.inv(g[-1])
    quot = [0] * max(0, len(f) - dg)
    while len(poly_trim(tuple(f))) - 1 >= dg and f:
        f = list(poly_trim(tuple(f)))
        if len(f) - 1 < dg:
            break
        c = k.mul(f[-1], lead_inv)
        shift = len(f) - 1 - dg
        quot[shift] = c
        for i, b in enumerate(g):
            f[shift + i] = k.sub(f[shift + i], k.mul(c, b))
    return poly_trim(tuple(quot)), poly_trim(tuple(f))


def poly_mod(k: Field, f, g):
    return poly_divmod(k, f, g)[1]


def poly_monic(k: Field, f):
    if not f:
        return ()
    return poly_scale(k, f, k.inv(f[-1]))


def poly_gcd(k: Field, f, g):
    f, g = poly_trim(tuple(f)), poly_trim(tuple(g))
    while g:
        f, g = g, poly_mod(k, f, g)
    return poly_monic(k, f)


def poly_pow_mod(k: Field, f, n: int, m):
    r = (1,)
    f = poly_mod(k, f, m)
    while n:
        if n & 1:
            r = poly_mod(k, poly_mul(k, r, f), m)
        f = poly_mod(k, poly_mul(k, f, f), m)
        n >>= 1
    return r


def poly_eval(k: Field, f, x: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = k.add(k.mul(acc, x), c)
    return acc


def poly_deriv(k: Field, f):
    out = []
    for i in range(1, len(f)):
        c = f[i]
        s = 0
        for _ in range(i % k.p):
            s = k.add(s, c)
        out.append(s)
    return poly_trim(tuple(out))


def poly_is_irreducible(k: Field, f) -> bool:
    f = poly_monic(k, f)
    d = len(f) - 1
    if d <= 0:
        return False
    if d == 1:
        return True
    x = (0, 1)
    xq = poly_pow_mod(k, x, k.q**d, f)
    if poly_trim(poly_sub(k, xq, x)) != ():
        return False
    for ell in _prime_factors(d):
        xe = poly_pow_mod(k, x, k.q ** (d // ell), f)
        if len(poly_gcd(k, poly_sub(k, xe, x), f)) - 1 > 0:
            return False
    return True


def _least_irreducible(base: Field, k: int) -> tuple:
    """Monic irreducible of degree k over base, least by the base-q integer
    encoding of its low coefficient vector (the documented canonical choice)."""
    for m in range(base.q**k):
        coeffs = []
        mm = m
        for _ in range(k):
            coeffs.append(mm % base.q)
            mm //= base.q
        f = tuple(coeffs) + (1,)
        if poly_is_irreducible(base, f):
            return f
    raise AssertionError("no irreducible polynomial found")


# -- squarefree / distinct-degree / equal-degree factorization --------------


def _squarefree_parts(k: Field, f) -> list[tuple[tuple, int]]:
    """[(g, m)] with f = prod g^m (up to the leading unit), g squarefree."""
    f = poly_monic(k, f)
    if len(f) - 1 == 0:
        return []
    out: dict[int, tuple] = {}

    def accumulate(g, mult):
        if len(g) - 1 > 0:
            out[mult] = poly_mul(k, out[mult], g) if mult in out else g

    def recurse(f, mult):
        if len(f) - 1 == 0:
            return
        d = poly_deriv(k, f)
        if not d:
            # f = h(x^p); take the p-th root coefficientwise
            root = tuple(k.pow(c, k.q // k.p) for c in f[:: k.p])
            recurse(poly_trim(root), mult * k.p)
            return
        w = poly_gcd(k, f, d)
        sqf, _ = poly_divmod(k, f, w)
        i = 1
        while len(sqf) - 1 > 0:
            y = poly_gcd(k, sqf, w)
            piece, _ = poly_divmod(k, sqf, y)
            accumulate(piece, mult * i)
            sqf = y
            w, _ = poly_divmod(k, w, y)
            i += 1
        if len(w) - 1 > 0:
            recurse(w, mult)

    recurse(f, 1)
    merged: list[tuple[tuple, int]] = []
    for mult, g in sorted(out.items()):
        merged.append((poly_monic(k, g), mult))
    return merged


def _distinct_degree(k: Field, f) -> list[tuple[tuple, int]]:
    """Split squarefree monic f into [(product of irreducibles of degree d, d)]."""
    out = []
    x = (0, 1)
    h = x
    d = 0
    while len(f) - 1 > 0:
        d += 1
        if 2 * d > len(f) - 1:
            out.append((f, len(f) - 1))
            break
        h = poly_pow_mod(k, h, k.q, f)
        g = poly_gcd(k, poly_sub(k, h, x), f)
        if len(g) - 1 > 0:
            out.append((g, d))
            f, _ = poly_divmod(k, f, g)
            h = poly_mod(k, h, f)
    return out


def _equal_degree_split(k: Field, f, d: int, rng: random.Random) -> list[tuple]:
    """Cantor-Zassenhaus: split monic squarefree f (all factors of degree d)."""
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        h = poly_trim(tuple(rng.randrange(k.q) for _ in range(n)))
        if len(h) - 1 < 1:
            continue
        if k.p == 2:
            # trace map over GF(2): sum of h^(2^i), i < d*e
            t = h
            acc = h
            for _ in range(d * k.e - 1):
                t = poly_mod(k, poly_mul(k, t, t), f)
                acc = poly_add(k, acc, t)
            g = poly_gcd(k, acc, f)
        else:
            g = poly_gcd(k, h, f)
            if len(g) - 1 == 0:
                power = poly_pow_mod(k, h, (k.q**d - 1) // 2, f)
                g = poly_gcd(k, poly_sub(k, power, (1,)), f)
        if 0 < len(g) - 1 < n:
            rest, _ = poly_divmod(k, f, g)
            return _equal_degree_split(k, g, d, rng) + _equal_degree_split(k, rest, d, rng)


def factor_poly(k: Field, f, seed: int = 0) -> list[tuple[tuple, int]]:
    """Complete factorization into monic irreducibles with multiplicities,
    deterministic for a given seed, verified by re-multiplication."""
    f = poly_trim(tuple(f))
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    rng = random.Random(seed)
    factors: list[tuple[tuple, int]] = []
    for sqf, mult in _squarefree_parts(k, f):
        for prod, d in _distinct_degree(k, sqf):
            for irr in _equal_degree_split(k, prod, d, rng):
                factors.append((poly_monic(k, irr), mult))
    factors.sort(key=lambda fm: (len(fm[0]), fm[0]))
    check = (1,)
    for g, m in factors:
        for _ in range(m):
            check = poly_mul(k, check, g)
    lead = f[-1]
    if poly_scale(k, check, lead) != f:
        raise ExactnessError("factorization does not re-multiply to the input")
    return factors


# -- dense matrices ---------------------------------------------------------


@dataclass(frozen=True)
class FqMatrix:
    """Square matrix over a field; rows are tuples of field ints."""

    field: Field
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        d = len(self.rows)
        if d > DIM_CAP:
            raise ValueError(f"matrix dimension {d} exceeds the cap {DIM_CAP}")
        if any(len(r) != d for r in self.rows):
            raise ValueError("matrix must be square")

    @property
    def dim(self) -> int:
        return len(self.rows)


def identity_rows(d: int) -> tuple:
    return tuple(tuple(1 if i == j else 0 for j in range(d)) for i in range(d))


def mat_mul(k: Field, a, b):
    d = len(a)
    bt = list(zip(*b))
    out = []
    for row in a:
        orow = []
        for col in bt:
            s = 0
            for x, y in zip(row, col):
                if x and y:
                    s = k.add(s, k.mul(x, y))
            orow.append(s)
        out.append(tuple(orow))
    return tuple(out)


def mat_vec(k: Field, a, v):
    return tuple(
        _dot(k, row, v) for row in a
    )


def _dot(k: Field, row, v):
    s = 0
    for x, y in zip(row, v):
        if x and y:
            s = k.add(s, k.mul(x, y))
    return s


def mat_add_scalar(k: Field, a, lam):
    """a + lam * I."""
    return tuple(
        tuple(k.add(x, lam) if i == j else x for j, x in enumerate(row))
        for i, row in enumerate(a)
    )


def mat_scale(k: Field, a, c):
    return tuple(tuple(k.mul(x, c) for x in row) for row in a)


def mat_rank(k: Field, rows) -> int:
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = k.inv(m[rank][col])
        m[rank] = [k.mul(x, inv) for x in m[rank]]
        for r in range(nrows):
            if r != rank and m[r][col]:
                c = m[r][col]
                m[r] = [k.sub(x, k.mul(c, y)) for x, y in zip(m[r], m[rank])]
        rank += 1
        if rank == nrows:
            break
    return rank


def kernel_dim(k: Field, rows) -> int:
    return len(rows[0]) - mat_rank(k, rows) if rows else 0


def mat_inv(k: Field, rows):
    d = len(rows)
    m = [list(r) + list(ir) for r, ir in zip(rows, identity_rows(d))]
    rank = 0
    for col in range(d):
        pivot = next((r for r in range(rank, d) if m[r][col]), None)
        if pivot is None:
            raise ZeroDivisionError("matrix is singular")
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = k.inv(m[rank][col])
        m[rank] = [k.mul(x, inv) for x in m[rank]]
        for r in range(d):
            if r != rank and m[r][col]:
                c = m[r][col]
                m[r] = [k.sub(x, k.mul(c, y)) for x, y in zip(m[r], m[rank])]
        rank += 1
    return tuple(tuple(row[d:]) for row in m)


def mat_embed(rows, sub: Field, ext: Field):
    """Entries of a matrix over `sub` reinterpreted in the extension built
    over `sub` (the int encoding embeds identically)."""
    assert ext.base is sub
    return rows


def char_poly(k: Field, rows) -> tuple:
    """Monic characteristic polynomial det(xI - g) by exact Hessenberg
    reduction and the standard recurrence."""
    d = len(rows)
    h = [list(r) for r in rows]
    for col in range(d - 2):
        pivot = next((r for r in range(col + 1, d) if h[r][col]), None)
        if pivot is None:
            continue
        if pivot != col + 1:
            h[col + 1], h[pivot] = h[pivot], h[col + 1]
            for r in range(d):
                h[r][col + 1], h[r][pivot] = h[r][pivot], h[r][col + 1]
        inv = k.inv(h[col + 1][col])
        for r in range(col + 2, d):
            if h[r][col]:
                c = k.mul(h[r][col], inv)
                h[r] = [k.sub(x, k.mul(c, y)) for x, y in zip(h[r], h[col + 1])]
                for rr in range(d):
                    h[rr][col + 1] = k.add(h[rr][col + 1], k.mul(c, h[rr][r]))
    # p_m(x) for the leading m x m block; each p_m is monic of degree m
    polys = [(1,)]
    for m in range(1, d + 1):
        term = poly_mul(k, polys[m - 1], (k.neg(h[m - 1][m - 1]), 1))
        prod = 1
        for i in range(m - 1, 0, -1):
            prod = k.mul(prod, h[i][i - 1])
            if h[i - 1][m - 1] and prod:
                coeff = k.neg(k.mul(prod, h[i - 1][m - 1]))
                term = poly_add(k, term, poly_scale(k, polys[i - 1], coeff))
        assert len(term) == m + 1 and term[-1] == 1
        polys.append(term)
    return polys[d]


def eig_dim(mat: FqMatrix, lam: int, ext: Field | None = None) -> int:
    """dim ker(g - lam*I) over the field containing lam (the matrix field, or
    a quadratic/deg-k extension built over it)."""
    k = ext if ext is not None else mat.field
    if ext is not None and ext.base is not mat.field:
        raise ValueError("extension must be built over the matrix field")
    rows = mat.rows
    shifted = mat_add_scalar(k, rows, k.neg(lam))
    return kernel_dim(k, shifted)


def poly_of_matrix(k: Field, f, rows):
    """f(g) by Horner."""
    d = len(rows)
    acc = tuple(tuple(0 for _ in range(d)) for _ in range(d))
    for c in reversed(f):
        acc = mat_mul(k, acc, rows)
        if c:
            acc = tuple(
                tuple(k.add(x, c) if i == j else x for j, x in enumerate(row))
                for i, row in enumerate(acc)
            )
    return acc


def support(mat: FqMatrix, seed: int = 0) -> int:
    """dim(V) minus the largest eigenspace dimension over the algebraic
    closure, computed without extension-field eigenvectors: for each
    irreducible factor f of the characteristic polynomial, the geometric
    multiplicity of each of its roots is dim ker(f(g)) / deg(f)."""
    k = mat.field
    d = mat.dim
    if mat_rank(k, mat.rows) != d:
        raise ValueError("support requires an invertible matrix")
    best = 0
    for f, _mult in factor_poly(k, char_poly(k, mat.rows), seed):
        deg = len(f) - 1
        kd = kernel_dim(k, poly_of_matrix(k, f, mat.rows))
        per_root, rem = divmod(kd, deg)
        if rem:
            raise ExactnessError("kernel dimension not divisible by factor degree")
        best = max(best, per_root)
    return d - best


@cache
def mu_torus(f: Field, which: int) -> tuple[int, ...]:
    """mu_{q-1} (which=-1): the nonzero elements of f; mu_{q+1} (which=+1):
    the norm-one elements of the quadratic extension of f."""
    if which == -1:
        return tuple(range(1, f.q))
    ext = quadratic_extension(f)
    return tuple(x for x in range(1, ext.q) if ext.pow(x, f.q + 1) == 1)


# -- text format -------------------------------------------------------------


def mat_to_hex(mat: FqMatrix) -> list[str]:
    """Rows as hex digit strings (one digit per entry; requires q <= 16)."""
    if mat.field.q > 16:
        raise ValueError("hex row format requires q <= 16")
    return ["".join(f"{x:x}" for x in row) for row in mat.rows]


def mat_from_hex(k: Field, rows: list[str]) -> FqMatrix:
    if k.q > 16:
        raise ValueError("hex row format requires q <= 16")
    parsed = tuple(tuple(int(ch, 16) for ch in row) for row in rows)
    if any(x >= k.q for row in parsed for x in row):
        raise ValueError("entry out of range for the field")
    return FqMatrix(k, parsed)


def random_invertible(k: Field, d: int, rng: random.Random) -> FqMatrix:
    while True:
        rows = tuple(tuple(rng.randrange(k.q) for _ in range(d)) for _ in range(d))
        if mat_rank(k, rows) == d:
            return FqMatrix(k, rows)
