import pytest

from mckaylab.gfq import FqMatrix, identity_rows, support
from mckaylab.spaces import certify, make_space, point_counts, sample_elements, transvection
from mckaylab.weil import (
    beta_value,
    deg_alpha,
    deg_alpha_w,
    deg_beta,
    deg_beta_w,
    deg_delta,
    deg_dst_odd,
    deg_gamma,
    deg_rho1,
    deg_rho2,
    degree_identity_suite,
    derived_constituents,
    ratio_check,
    restriction_identity_check,
    weil_values,
)


def test_degree_values():
    assert deg_rho1(3, 2) == 27 and deg_rho2(3, 2) == 35
    assert deg_alpha(5, 2, 1) == 186 and deg_alpha(5, 2, -1) == 154
    assert deg_beta(5, 2) == 340
    assert deg_delta(5, 2, 1) == 155 and deg_delta(5, 2, -1) == 187
    assert deg_alpha_w(5, 2) == 155 and deg_beta_w(5, 2) == 187
    assert deg_gamma(5, 4, 1) == (4**5 - 1) * (4**4 + 1) // 3
    assert deg_dst_odd(11, 3) == (3**11 - 3) // 8


def test_degree_identity_suite():
    rep = degree_identity_suite(5, 12)
    assert rep["pass"] and rep["rows"] == 112


def test_weil_values_identity_and_transvection():
    sp6 = make_space("symplectic", 3, 2)
    gid = certify(sp6, identity_rows(6))
    assert weil_values(sp6, gid) == (27, 35)
    tv = certify(sp6, transvection(sp6, (1, 0, 0, 0, 0, 0), 1))
    assert weil_values(sp6, tv) == (15, 15)
    # a transvection moves exactly one dimension
    assert support(FqMatrix(sp6.field, tv.rows)) == 1


def test_sample_supports_spread():
    sp6 = make_space("symplectic", 3, 2)
    supports = {
        support(FqMatrix(sp6.field, g.rows))
        for g in sample_elements(sp6, 30, seed=8)
    }
    assert len(supports) >= 2 and all(s >= 0 for s in supports)


def test_restriction_identities_dim12_q2():
    space = make_space("orthogonal-minus", 6, 2)
    rep = restriction_identity_check(space, count=10, seed=3)
    assert rep["pass"]


def test_weil_values_wrong_space():
    op = make_space("orthogonal-plus", 5, 2)
    gid = certify(op, identity_rows(10))
    with pytest.raises(ValueError):
        weil_values(op, gid)


def test_beta_identity_degrees():
    for kind, expect in (("orthogonal-plus", 340), ("orthogonal-minus", 340)):
        space = make_space(kind, 5, 2)
        gid = certify(space, identity_rows(10))
        assert beta_value(space, gid) == expect
    # q = 3: (3^10 - 9)/8
    so = make_space("orthogonal-plus", 5, 3)
    gid = certify(so, identity_rows(10))
    assert beta_value(so, gid) == (3**10 - 9) // 8
    # odd-dimension branch at the identity: (q^d - q)/(q^2 - 1)
    so7 = make_space("orthogonal-odd", 3, 3)
    gid = certify(so7, identity_rows(7))
    assert beta_value(so7, gid) == (3**7 - 3) // 8


def test_beta_conjugation_invariant():
    from mckaylab.gfq import mat_inv, mat_mul

    space = make_space("orthogonal-plus", 5, 2)
    els = sample_elements(space, 6, seed=3)
    k = space.field
    g, h = els[0], els[1]
    conj = certify(space, mat_mul(k, mat_mul(k, h.rows, g.rows), mat_inv(k, h.rows)))
    assert beta_value(space, g) == beta_value(space, conj)


def test_derived_constituents_at_identity():
    op = make_space("orthogonal-plus", 5, 2)
    gid = certify(op, identity_rows(10))
    counts = point_counts(op, gid)
    assert derived_constituents(op, gid, counts, 340) == (186, 0, 155)
    om = make_space("orthogonal-minus", 5, 2)
    gid = certify(om, identity_rows(10))
    counts = point_counts(om, gid)
    assert derived_constituents(om, gid, counts, 340) == (154, 0, 187)


@pytest.mark.parametrize("kind", ["orthogonal-plus", "orthogonal-minus"])
def test_restriction_identities_sampled(kind):
    space = make_space(kind, 5, 2)
    rep = restriction_identity_check(space, count=60, seed=7)
    assert rep["pass"] and rep["samples"] == 60


def test_restriction_identities_q4():
    space = make_space("orthogonal-plus", 2, 4)
    rep = restriction_identity_check(space, count=25, seed=1)
    assert rep["pass"]


def test_restriction_identities_q4_dim10():
    space = make_space("orthogonal-plus", 5, 4)
    rep = restriction_identity_check(space, count=2, seed=1, samples=None)
    assert rep["pass"]


def test_ratio_checks_sampled():
    sp6 = make_space("symplectic", 3, 2)
    rep = ratio_check(sp6, "sp-weil", count=40, seed=2)
    assert rep["pass"] and rep["checked"] == 80
    op = make_space("orthogonal-plus", 5, 2)
    rep = ratio_check(op, "omega-weil", count=30, seed=2)
    assert rep["pass"]
    so = make_space("orthogonal-minus", 5, 3)
    rep = ratio_check(so, "so-odd-weil", count=6, seed=2)
    assert rep["pass"]


def test_ratio_check_identity_boundary():
    # s = 0 at the identity: 1 <= 1 boundary case runs clean
    sp6 = make_space("symplectic", 3, 2)
    gid = certify(sp6, identity_rows(6))
    rep = ratio_check(sp6, "sp-weil", samples=[gid])
    assert rep["pass"]


def test_ratio_check_mode_validation():
    sp6 = make_space("symplectic", 3, 2)
    with pytest.raises(ValueError):
        ratio_check(sp6, "omega-weil", count=1)
    op = make_space("orthogonal-plus", 5, 2)
    with pytest.raises(ValueError):
        ratio_check(op, "so-odd-weil", count=1)


def test_fast_engine_agrees_with_generic_path():
    """The exhaustive-sweep bit engine and the generic exact path must agree
    on every statistic for a sample of Sp_6(2) elements."""
    import numpy as np

    from mckaylab.spsweep import _chunk_stats, _unpack, enumerate_sp6

    keys = enumerate_sp6()
    rng_idx = np.linspace(0, len(keys) - 1, 25, dtype=np.int64)
    sample_keys = keys[rng_idx]
    rows_packed = _unpack(sample_keys)
    sp6 = make_space("symplectic", 3, 2)

    for idx, packed in enumerate(rows_packed):
        # push each element through the batch engine alone: the one-element
        # "sums" are the per-element values, compared against the generic path
        stats = _chunk_stats(rows_packed[idx : idx + 1])
        rows = tuple(
            tuple((int(packed[i]) >> j) & 1 for j in range(6)) for i in range(6)
        )
        g = certify(sp6, rows)
        r1, r2 = weil_values(sp6, g)
        s = support(FqMatrix(sp6.field, rows))
        assert stats["sum_r1"] == r1
        assert stats["sum_r2"] == r2
        assert stats["sum_r1r1"] == r1 * r1
        assert stats["sum_r1r2"] == r1 * r2
        assert stats["sum_r2r2"] == r2 * r2
        assert stats["supp_hist"][s] == 1 and sum(stats["supp_hist"]) == 1
