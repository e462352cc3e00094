"""Weil-character values and the decomposition identities tying them to
fixed-point counts.

For even q the two smallest nontrivial characters of Sp_2n(q) are recovered
exactly from counts: rho = 1 + rho1 + rho2 is the permutation character on
1-spaces, and rho2 - rho1 equals the difference of fixed quadratic-form
counts pi+ - pi-.  The degree-(q^d-q^2)/(q^2-1) constituent beta of the
orthogonal rank-3 character has a closed eigenvalue-count formula valid in
all characteristics, which makes alpha = rho - 1 - beta and the gamma/delta
aggregates computable pointwise.  Everything here is exact integer
arithmetic; ratio bounds are cleared to cube-and-compare form.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction

from .errors import ExactnessError
from .gfq import eig_dim, mu_torus, quadratic_extension, support
from .spaces import (
    GroupElement,
    PointCounts,
    QuadraticSpace,
    fixed_one_spaces_ambient,
    point_counts,
)

# -- degree formulas (dimension 2n, type eps) ---------------------------------


def deg_rho1(n: int, q: int) -> int:
    return (q**n + 1) * (q**n - q) // (2 * (q - 1))


def deg_rho2(n: int, q: int) -> int:
    return (q**n - 1) * (q**n + q) // (2 * (q - 1))


def deg_tau(n: int, q: int) -> int:
    return (q ** (2 * n) - 1) // (q - 1)


def deg_alpha_w(n: int, q: int) -> int:
    return (q**n - 1) * (q**n - q) // (2 * (q + 1))


def deg_beta_w(n: int, q: int) -> int:
    return (q**n + 1) * (q**n + q) // (2 * (q + 1))


def deg_zeta(n: int, q: int) -> int:
    return (q ** (2 * n) - 1) // (q + 1)


def deg_alpha(n: int, q: int, eps: int) -> int:
    num = (q**n - eps) * (q ** (n - 1) + eps * q)
    assert num % (q * q - 1) == 0
    return num // (q * q - 1)


def deg_beta(n: int, q: int) -> int:
    return (q ** (2 * n) - q * q) // (q * q - 1)


def deg_gamma(n: int, q: int, eps: int) -> int:
    return (q**n - eps) * (q ** (n - 1) + eps) // (q - 1)


def deg_delta(n: int, q: int, eps: int) -> int:
    num = (q**n - eps) * (q ** (n - 1) - eps)
    assert num % (q + 1) == 0
    return num // (q + 1)


def deg_dst_odd(d: int, q: int) -> int:
    """Degree (q^d - q)/(q^2 - 1) of the odd-dimensional analogue of beta."""
    return (q**d - q) // (q * q - 1)


def singular_line_count(n: int, q: int, eps: int) -> int:
    return (q**n - eps) * (q ** (n - 1) + eps) // (q - 1)


# -- pointwise values -----------------------------------------------------------


def weil_values(space: QuadraticSpace, g: GroupElement) -> tuple[int, int]:
    """(rho1(g), rho2(g)) on a characteristic-2 symplectic space, from the
    fixed 1-space count and the fixed-form difference."""
    if space.kind != "symplectic" or space.field.p != 2:
        raise ValueError("weil_values needs a characteristic-2 symplectic space")
    counts = point_counts(space, g)
    diff = counts.pi_plus - counts.pi_minus
    if (counts.rho - 1 - diff) % 2:
        raise ExactnessError("parity violation: rho - 1 != pi+ - pi- (mod 2)")
    rho1 = (counts.rho - 1 - diff) // 2
    rho2 = (counts.rho - 1 + diff) // 2
    return rho1, rho2


def beta_value(space: QuadraticSpace, g: GroupElement) -> int:
    """The closed eigenvalue-count formula for the small rank-3 constituent.

    Even dimension d: sum over lambda in F_q^x of q^dim_ker(g - lambda),
    scaled by 1/(2(q-1)), minus the mu_{q+1} sum of (-q)^dim over F_{q^2},
    scaled by 1/(2(q+1)), minus 1.  Odd d (odd q): the same two sums twisted
    by the order-2 characters of the two tori, no constant term.
    The result is asserted to be an integer."""
    if space.quad is None:
        raise ValueError("beta_value needs an orthogonal space")
    k = space.field
    q = k.q
    d = space.dim
    mat = g.matrix
    ext = quadratic_extension(k)
    s_split = Fraction(0)
    s_nonsplit = Fraction(0)
    if d % 2 == 0:
        for lam in mu_torus(k, -1):
            s_split += Fraction(q) ** eig_dim(mat, lam)
        for lam in mu_torus(k, 1):
            s_nonsplit += Fraction(-q) ** eig_dim(mat, lam, ext)
        val = s_split / (2 * (q - 1)) - s_nonsplit / (2 * (q + 1)) - 1
    else:
        if k.p == 2:
            raise ValueError("odd dimension requires odd characteristic")
        for lam in mu_torus(k, -1):
            chi = 1 if k.pow(lam, (q - 1) // 2) == 1 else -1
            s_split += chi * Fraction(q) ** eig_dim(mat, lam)
        neg_one = ext.neg(1)
        for lam in mu_torus(k, 1):
            t = ext.pow(lam, (q + 1) // 2)
            chi = 1 if t == 1 else -1
            assert t in (1, neg_one)
            s_nonsplit += chi * Fraction(-q) ** eig_dim(mat, lam, ext)
        val = s_split / (2 * (q - 1)) + s_nonsplit / (2 * (q + 1))
    if val.denominator != 1:
        raise ExactnessError(f"beta formula returned non-integer {val}")
    return int(val)


def derived_constituents(
    space: QuadraticSpace, g: GroupElement, counts: PointCounts, beta: int
) -> tuple[int, int, int]:
    """(alpha(g), sum_gamma(g), sum_delta(g)) from the three point-stabilizer
    permutation characters: the singular-1-space action is 1 + alpha + beta,
    the singular-vector action adds 2*sum_gamma, and the norm-one action is
    1 + beta + sum_gamma + sum_delta."""
    alpha = counts.rho - 1 - beta
    if (counts.ind_pp - counts.rho) % 2:
        raise ExactnessError("parity violation: fixed vectors != fixed lines (mod 2)")
    sum_gamma = (counts.ind_pp - counts.rho) // 2
    sum_delta = counts.ind_h - 1 - beta - sum_gamma
    return alpha, sum_gamma, sum_delta


# -- identity verifiers ----------------------------------------------------------


def restriction_identity_check(
    space: QuadraticSpace, count: int = 50, seed: int = 0, samples=None
) -> dict:
    """On samples of the char-2 orthogonal group: (a) the two Weil characters
    of the ambient symplectic group restrict so that the full 1-space count
    satisfies rho_amb - 1 = 1 + alpha + 2*beta + sum_gamma + sum_delta, and
    (b) pi+ - pi- = eps*(1 + alpha + sum_gamma - sum_delta).  Both exact at
    every sample; beta integrality comes for free from its formula."""
    from .spaces import sample_elements

    if space.field.p != 2 or space.quad is None:
        raise ValueError("identity check targets characteristic-2 orthogonal spaces")
    eps = 1 if space.kind == "orthogonal-plus" else -1
    if samples is None:
        samples = sample_elements(space, count, seed=seed)
    violations = []
    for idx, g in enumerate(samples):
        counts = point_counts(space, g)
        beta = beta_value(space, g)
        alpha, sg, sd = derived_constituents(space, g, counts, beta)
        rho_amb = fixed_one_spaces_ambient(space, g.rows)
        ok_a = rho_amb - 1 == 1 + alpha + 2 * beta + sg + sd
        ok_b = counts.pi_plus - counts.pi_minus == eps * (1 + alpha + sg - sd)
        if not (ok_a and ok_b):
            violations.append(
                {
                    "sample": idx,
                    "rows": [list(r) for r in g.rows],
                    "counts": asdict(counts),
                    "beta": beta,
                    "identity_a": ok_a,
                    "identity_b": ok_b,
                }
            )
    return {
        "space": space.kind,
        "dim": space.dim,
        "q": space.q,
        "samples": len(samples),
        "seed": seed,
        "violations": violations,
        "pass": not violations,
    }


@dataclass(frozen=True)
class RatioViolation:
    sample: int
    label: str
    value: int
    degree: int
    supp: int
    rows: tuple  # the offending matrix, for replayable artifacts


def _cube_bound_ok(value: int, degree: int, q: int, s: int) -> bool:
    """|value|/degree <= q^(-s/3), cleared to |value|^3 * q^s <= degree^3."""
    return abs(value) ** 3 * q**s <= degree**3


def ratio_check(space: QuadraticSpace, which: str, count: int = 50, seed: int = 0, samples=None) -> dict:
    """Character-ratio bound |chi(g)|/chi(1) <= q^(-supp(g)/3), checked by
    cube-and-compare on exact integers.

    which = "sp-weil": chi in {rho1, rho2} on a char-2 symplectic space.
    which = "omega-weil": chi in {alpha, beta} on a char-2 orthogonal space,
    plus the gamma/delta aggregates as separately labeled necessary checks.
    which = "so-odd-weil": the same orthogonal checks over odd q (sampling
    the special orthogonal group, which contains the index-2 subgroup the
    sharpest statement is made for)."""
    from .spaces import sample_elements

    q = space.q
    if samples is None:
        samples = sample_elements(space, count, seed=seed)
    violations: list[RatioViolation] = []
    checked = 0

    def check(idx, label, value, degree, s, rows):
        nonlocal checked
        checked += 1
        if not _cube_bound_ok(value, degree, q, s):
            violations.append(
                RatioViolation(idx, label, value, degree, s, tuple(map(list, rows)))
            )

    n = space.dim // 2
    for idx, g in enumerate(samples):
        s = support(g.matrix)
        if which == "sp-weil":
            if space.kind != "symplectic" or space.field.p != 2:
                raise ValueError("sp-weil needs a char-2 symplectic space")
            rho1, rho2 = weil_values(space, g)
            check(idx, "rho1", rho1, deg_rho1(n, q), s, g.rows)
            check(idx, "rho2", rho2, deg_rho2(n, q), s, g.rows)
        elif which in ("omega-weil", "so-odd-weil"):
            if space.quad is None or space.dim % 2:
                raise ValueError("weil ratio checks need an even orthogonal space")
            if which == "omega-weil" and space.field.p != 2:
                raise ValueError("omega-weil is the char-2 variant")
            if which == "so-odd-weil" and space.field.p == 2:
                raise ValueError("so-odd-weil is the odd-q variant")
            eps = 1 if space.kind == "orthogonal-plus" else -1
            counts = point_counts(space, g)
            beta = beta_value(space, g)
            alpha = counts.rho - 1 - beta
            check(idx, "alpha", alpha, deg_alpha(n, q, eps), s, g.rows)
            check(idx, "beta", beta, deg_beta(n, q), s, g.rows)
            if space.field.p == 2:
                a2, sg, sd = derived_constituents(space, g, counts, beta)
                if q > 2:
                    check(idx, "sum_gamma(aggregate)", sg, (q - 2) // 2 * deg_gamma(n, q, eps), s, g.rows)
                check(idx, "sum_delta(aggregate)", sd, q // 2 * deg_delta(n, q, eps), s, g.rows)
        else:
            raise ValueError(f"unknown ratio check {which!r}")
    return {
        "which": which,
        "space": space.kind,
        "dim": space.dim,
        "q": q,
        "samples": len(samples),
        "checked": checked,
        "seed": seed,
        "violations": [asdict(v) for v in violations],
        "pass": not violations,
    }


# -- degree bookkeeping -----------------------------------------------------------


def degree_identity_suite(n_lo: int, n_hi: int, qs=(2, 3, 4, 5, 7, 8, 9)) -> dict:
    """Exact integer identities among all the degree formulas, for both types
    and every (n, q) on the grid: the rank-3 sum, the norm-one coset count,
    the two restriction resolutions, and (even q) the unitary-Weil degree
    identity q^n(q^n+1)/2 = beta_w(1) + (q/2)(q^2n - 1)/(q + 1)."""
    failures = []
    rows = 0
    for n in range(n_lo, n_hi + 1):
        for q in qs:
            for eps in (1, -1):
                rows += 1
                a, b = deg_alpha(n, q, eps), deg_beta(n, q)
                gsum = (q - 2) // 2 * deg_gamma(n, q, eps)
                dsum = q // 2 * deg_delta(n, q, eps)
                checks = {
                    "rank3": 1 + a + b == singular_line_count(n, q, eps),
                    "one_spaces": 1 + deg_rho1(n, q) + deg_rho2(n, q)
                    == (q ** (2 * n) - 1) // (q - 1),
                }
                if q % 2 == 0:
                    # the gamma/delta constituent counts are even-q data
                    checks["norm_one_index"] = (
                        q ** (n - 1) * (q**n - eps) == 1 + b + gsum + dsum
                    )
                    # the two form-orbit characters resolve the q^2n forms
                    checks["form_totals"] = (
                        2
                        + deg_rho1(n, q)
                        + deg_rho2(n, q)
                        + (q - 2) * deg_tau(n, q)
                        == q ** (2 * n)
                    )
                    checks["unitary_weil"] = (
                        q**n * (q**n + 1) // 2
                        == deg_beta_w(n, q) + (q // 2) * deg_zeta(n, q)
                    )
                    # the two linear-Weil restriction resolutions
                    if eps == 1:
                        checks["rho1_restrict"] = deg_rho1(n, q) == b + dsum
                        checks["rho2_restrict"] = deg_rho2(n, q) == 1 + a + b + gsum
                        checks["alpha_w_restrict"] = deg_alpha_w(n, q) == dsum
                        checks["beta_w_restrict"] = deg_beta_w(n, q) == 1 + a + gsum
                    else:
                        checks["rho1_restrict"] = deg_rho1(n, q) == 1 + a + b + gsum
                        checks["rho2_restrict"] = deg_rho2(n, q) == b + dsum
                        checks["alpha_w_restrict"] = deg_alpha_w(n, q) == 1 + a + gsum
                        checks["beta_w_restrict"] = deg_beta_w(n, q) == dsum
                bad = [name for name, ok in checks.items() if not ok]
                if bad:
                    failures.append({"n": n, "q": q, "eps": eps, "failed": bad})
    return {"rows": rows, "failures": failures, "pass": not failures}
