import pytest
from math import factorial

from mckaylab.errors import ExactnessError
from mckaylab.partitions import conjugate, dimension, enumerate_partitions
from mckaylab.snchars import (
    build_sn_table,
    centralizer_order,
    class_size,
    cycle_type_sign,
    induce_to_larger,
    kronecker_support,
    mn_value,
    restrict_to_smaller,
)
from oracles import dixon_table_mod_p, perm_cycle_type, sn_elements


def test_class_data():
    assert centralizer_order((1, 1, 1)) == 6
    assert centralizer_order((3,)) == 3
    assert class_size((2, 1)) == 3
    assert class_size((3,)) == 2
    assert cycle_type_sign((2, 1)) == -1
    assert cycle_type_sign((3,)) == 1
    # class sizes sum to n!
    for n in range(1, 11):
        assert sum(class_size(mu) for mu in enumerate_partitions(n)) == factorial(n)


def test_mn_trivial_sign_and_example():
    for n in range(1, 9):
        for mu in enumerate_partitions(n):
            assert mn_value((n,), mu) == 1
            assert mn_value((1,) * n, mu) == cycle_type_sign(mu)
    assert mn_value((2, 1), (3,)) == -1


def test_table_small_degrees():
    t3 = build_sn_table(3)
    assert t3.degrees == [1, 2, 1]
    t5 = build_sn_table(5)
    assert t5.degrees == [1, 4, 5, 6, 5, 4, 1]
    t12 = build_sn_table(12)
    assert len(t12.chars) == 77


def test_table_cap():
    with pytest.raises(ValueError):
        build_sn_table(15)


def test_degrees_match_hook_formula():
    for n in range(1, 11):
        t = build_sn_table(n)
        for lam, deg in zip(t.chars, t.degrees):
            assert deg == dimension(lam)


def test_orthogonality_validated_to_12():
    for n in range(1, 13):
        build_sn_table(n).check_orthogonality()


def test_fixed_point_character_identity():
    # chi^(n-1,1)(mu) = (#parts of size 1) - 1
    for n in range(2, 13):
        t = build_sn_table(n)
        row = t.values[t.chars.index((n - 1, 1))]
        for mu, v in zip(t.classes, row):
            assert v == sum(1 for p in mu if p == 1) - 1


def test_exterior_square_identity():
    # chi^(n-2,1,1)(g) = (f(g)^2 - f(g))/2 - f(g^2) + f(g) ... realized via
    # explicit permutations: Lambda^2 of the (n-1,1) character
    for n in (4, 5, 6):
        t = build_sn_table(n)
        row = t.values[t.chars.index((n - 2, 1, 1))]
        by_type = {mu: val for mu, val in zip(t.classes, row)}
        for g in sn_elements(n):
            f1 = sum(1 for i in range(n) if g[i] == i) - 1
            gg = tuple(g[g[i]] for i in range(n))
            f2 = sum(1 for i in range(n) if gg[i] == i) - 1
            assert by_type[perm_cycle_type(g)] == (f1 * f1 - f2) // 2


def test_kronecker_examples():
    t5 = build_sn_table(5)
    # identity of the product monoid
    assert kronecker_support(t5, (5,), (3, 2)) == {(3, 2): 1}
    # sign twist sends kappa to its conjugate
    assert kronecker_support(t5, (1, 1, 1, 1, 1), (3, 2)) == {conjugate((3, 2)): 1}
    # the standard-character square for n = 5
    sq = kronecker_support(t5, (4, 1), (4, 1))
    assert sq == {(5,): 1, (4, 1): 1, (3, 2): 1, (3, 1, 1): 1}


def brute_standard_square(n):
    """fix(g)^2 expansion of the permutation-module square, from explicit
    permutations: multiplicities of chi_nu in (pi - 1)^2 where pi = fix."""
    t = build_sn_table(n)
    elements = sn_elements(n)
    out = {}
    for nu_idx, nu in enumerate(t.chars):
        by_type = {mu: v for mu, v in zip(t.classes, t.values[nu_idx])}
        s = 0
        for g in elements:
            f = sum(1 for i in range(n) if g[i] == i) - 1
            s += f * f * by_type[perm_cycle_type(g)]
        assert s % factorial(n) == 0
        if s:
            out[nu] = s // factorial(n)
    return out


def test_standard_square_against_permutation_expansion():
    for n in (4, 5):
        assert brute_standard_square(n) == kronecker_support(
            build_sn_table(n), (n - 1, 1), (n - 1, 1)
        )


def test_kronecker_commutative_and_degree_consistent():
    t = build_sn_table(6)
    k = len(t.chars)
    for i in range(k):
        for j in range(i, k):
            mults = t.kron(i, j)
            assert mults == t.kron(j, i)
            assert sum(m * d for m, d in zip(mults, t.degrees)) == t.degrees[i] * t.degrees[j]


def test_branching():
    assert sorted(restrict_to_smaller((2, 1))) == [(1, 1), (2,)]
    assert restrict_to_smaller((6,)) == [(5,)]
    assert sorted(induce_to_larger((2, 1))) == [(2, 1, 1), (2, 2), (3, 1)]
    # dimension(lam) * n = sum over addable extensions of their dimensions
    for n in range(1, 12):
        for lam in enumerate_partitions(n):
            assert dimension(lam) * (n + 1) == sum(
                dimension(mu) for mu in induce_to_larger(lam)
            )


def test_table_matches_dixon_mod_p():
    for n in (3, 4, 5, 6):
        t = build_sn_table(n)
        reps, sizes, rows, p = dixon_table_mod_p(sn_elements(n))
        type_of = [perm_cycle_type(r) for r in reps]
        col_perm = [type_of.index(mu) for mu in t.classes]
        ours = sorted(
            tuple(t.values[i][c] % p for c in range(len(t.classes))) for i in range(len(t.chars))
        )
        theirs = sorted(
            tuple(row[col_perm[c]] for c in range(len(t.classes))) for row in rows
        )
        assert ours == theirs
        assert sorted(sizes) == sorted(t.class_sizes)


def test_kron_inexactness_guard():
    t = build_sn_table(4)
    t_bad = build_sn_table(4)
    # corrupt a copy of the values and watch the divisibility guard fire
    import copy

    t_bad = copy.deepcopy(t)
    t_bad.__dict__.pop("_kron_cache", None)
    t_bad.values[1][2] += 1
    with pytest.raises(ExactnessError):
        t_bad.kron(1, 1)
