"""Command-line front end: every verifier as a subcommand with seeded,
reproducible runs and machine-readable reports.

Exit codes: 0 when every assertion in the invoked verifier passes, 1 on an
assertion failure (counterexample artifacts are written to --out), 2 on
validation errors.  Reports are JSON with an embedded manifest whose digest
covers only the result payload, so identical inputs reproduce identical
digests at any worker count.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from math import factorial

from .anchars import split_degree_check
from .bounds import centralizer_exponent_check, constants_chain, sigma_ratio_bounds
from .cache import load_or_build_an, load_or_build_sn, make_report, resolve_cache_dir
from .errors import CacheError, ExactnessError
from .mckay import (
    build_mckay,
    covering_exponent,
    diameter,
    diameter_ratio_sweep,
    fit_ratio_constant,
    product_covering_check,
    ratio_bound_holds,
)
from .partitions import (
    add_node,
    addable_nodes,
    dimension,
    is_self_conjugate,
    staircase,
    staircase_tail,
)
from .spaces import make_space
from .spsweep import sp6_exhaustive
from .weil import degree_identity_suite, ratio_check, restriction_identity_check


def _parse_label(table, label: str) -> int:
    try:
        return table.char_names.index(label)
    except ValueError:
        raise ValueError(
            f"unknown character {label!r}; choose from {table.char_names}"
        ) from None


def _get_table(group: str, n: int, cache_dir: str | None):
    if group == "S":
        return load_or_build_sn(n, cache_dir)
    if group == "A":
        return load_or_build_an(n, cache_dir)
    raise ValueError("group must be S or A")


# -- subcommand implementations: each returns (ok, result_dict) -----------------


def cmd_sn_table(args):
    table = load_or_build_sn(args.n, resolve_cache_dir(args.cache_dir), args.paranoid)
    return True, {
        "group": f"S_{args.n}",
        "characters": len(table.chars),
        "degrees": table.degrees,
        "order": str(table.order),
    }


def cmd_an_table(args):
    table = load_or_build_an(args.n, resolve_cache_dir(args.cache_dir), args.paranoid)
    return True, {
        "group": f"A_{args.n}",
        "characters": len(table.chars),
        "degrees": table.degrees,
        "split_characters": sum(1 for _, tag in table.chars if tag != "whole"),
        "order": str(table.order),
    }


def cmd_mckay(args):
    table = _get_table(args.group, args.n, resolve_cache_dir(args.cache_dir))
    alpha = _parse_label(table, args.alpha)
    graph = build_mckay(table, alpha)
    diam = diameter(graph)
    cov = covering_exponent(table, alpha) if alpha != table.trivial_index else None
    result = {
        "group": f"{args.group}_{args.n}",
        "alpha_label": table.char_names[alpha],
        "alpha_degree": table.degrees[alpha],
        "diameter": diam if diam is not None else "infinite",
        "covering_exponent": cov if cov is not None else "infinite",
        "adjacency": {
            table.char_names[i]: [table.char_names[j] for j in out]
            for i, out in enumerate(graph.adjacency)
        },
    }
    return True, result


def cmd_covering(args):
    table = _get_table(args.group, args.n, resolve_cache_dir(args.cache_dir))
    alpha = _parse_label(table, args.alpha)
    cov = covering_exponent(table, alpha)
    return True, {
        "group": f"{args.group}_{args.n}",
        "alpha_label": table.char_names[alpha],
        "covering_exponent": cov if cov is not None else "infinite",
    }


def cmd_diameter_sweep(args):
    rows = diameter_ratio_sweep(args.n_min, args.n_max)
    fit_hi = min(args.fit_max, args.n_max)
    fit_rows = [r for r in rows if r["n"] <= fit_hi]
    c_hat = fit_ratio_constant(fit_rows, den=args.fit_den)
    violations = []
    for row in rows:
        if row["diameter"] is None:
            violations.append({**row, "reason": "infinite diameter"})
            continue
        if row["alpha_degree"] == 1:
            continue
        order = factorial(row["n"]) // 2
        if not ratio_bound_holds(row["alpha_degree"], row["diameter"], order, c_hat):
            violations.append({**row, "reason": "ratio bound"})
    ok = not violations
    per_n_max = {}
    for r in rows:
        if r["log_ratio"] is not None:
            key = r["n"]
            if key not in per_n_max or r["log_ratio"] > per_n_max[key]:
                per_n_max[key] = r["log_ratio"]
    result = {
        "rows": rows,
        "fitted_constant": str(c_hat),
        "fit_range": [args.n_min, fit_hi],
        "assert_range": [args.n_min, args.n_max],
        "per_n_max_ratio": {str(n): v for n, v in sorted(per_n_max.items())},
        "violations": violations,
        "pass": ok,
    }
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.DictWriter(
                fh,
                fieldnames=[
                    "group",
                    "n",
                    "alpha_label",
                    "alpha_degree",
                    "diameter",
                    "covering_exponent",
                    "log_ratio",
                ],
                extrasaction="ignore",
            )
            writer.writeheader()
            writer.writerows(rows)
    return ok, result


def cmd_product_cover(args):
    table = _get_table(args.group, args.n, resolve_cache_dir(args.cache_dir))
    rep = product_covering_check(
        table, args.n, args.mode, trials=args.trials, seed=args.seed
    )
    return rep["pass"], rep


def cmd_staircase(args):
    rows = []
    ok = True
    for m in range(6, args.m_max + 1):
        lam = staircase(m)
        n = m * (m + 1) // 2
        dim = dimension(lam)
        holds = dim**11 >= factorial(n) ** 5
        ok = ok and holds
        rows.append({"m": m, "n": n, "dimension": str(dim), "holds": holds})
    return ok, {"rows": rows, "pass": ok}


def cmd_staircase_growth(args):
    rows = []
    ok = True
    for m in range(args.m_min, args.m_max + 1):
        n0 = m * (m + 1) // 2
        lhs = 1
        for i in range(1, 2 * m + 4):
            lhs *= n0 + i
        dfact = 1
        for i in range(1, 2 * m + 4, 2):
            dfact *= i
        dfact2 = 1
        for i in range(1, 2 * m + 2, 2):
            dfact2 *= i
        holds = lhs**6 > (dfact * dfact2) ** 11
        ok = ok and holds
        rows.append({"m": m, "holds": holds})
    return ok, {"rows": rows, "pass": ok}


def cmd_staircase_tail(args):
    rows = []
    ok = True
    for n in range(13, args.n_max + 1):
        m, mu = staircase_tail(n)
        extensions_ok = all(
            not is_self_conjugate(add_node(mu, b)) for b in addable_nodes(mu)
        )
        shape_ok = len(mu) == m and mu[0] >= m + 2
        ok = ok and extensions_ok and shape_ok
        rows.append(
            {"n": n, "m": m, "mu": list(mu), "extensions_not_self_conjugate": extensions_ok}
        )
    return ok, {"rows": rows, "pass": ok}


def cmd_split_degree(args):
    reports = [split_degree_check(n) for n in range(args.n_min, args.n_max + 1)]
    ok = all(r["all_pass"] for r in reports)
    return ok, {"reports": reports, "pass": ok}


def cmd_sp_exhaustive(args):
    if (args.q, args.n) != (2, 3):
        raise ValueError("the exhaustive sweep is implemented for q=2, n=3 (Sp_6(2))")
    rep = sp6_exhaustive(workers=args.workers)
    return rep["pass"], rep


def cmd_omega_identities(args):
    kind = "orthogonal-plus" if args.sign == "+" else "orthogonal-minus"
    space = make_space(kind, args.n, args.q)
    rep = restriction_identity_check(space, count=args.samples, seed=args.seed)
    return rep["pass"], rep


def cmd_ratio_check(args):
    space = make_space(args.kind, args.n, args.q)
    rep = ratio_check(space, args.which, count=args.samples, seed=args.seed)
    return rep["pass"], rep


def cmd_replay(args):
    with open(args.file) as fh:
        art = json.load(fh)
    space = make_space(art["kind"], art["n"], art["q"])
    from .gfq import mat_from_hex
    from .spaces import certify

    if "rows_hex" in art:
        rows = mat_from_hex(space.field, art["rows_hex"]).rows
    else:
        rows = tuple(tuple(r) for r in art["rows"])
    g = certify(space, rows)
    rep = ratio_check(space, art["which"], samples=[g])
    return rep["pass"], rep


def cmd_sigma_bounds(args):
    rows = []
    ok = True
    for n in range(args.n_min, args.n_max + 1):
        for q in args.q:
            rep = sigma_ratio_bounds(n, q, l=args.l, v=args.v)
            rows.append(rep.approx())
            ok = ok and rep.verdict
    return ok, {"rows": rows, "pass": ok}


def cmd_centralizer_exponents(args):
    reports = [centralizer_exponent_check(n) for n in range(4, args.n_max + 1)]
    ok = all(r["pass"] for r in reports)
    return ok, {"reports": reports, "pass": ok}


def cmd_constants(args):
    rows = constants_chain()
    ok = all(r["holds"] for r in rows)
    return ok, {"rows": rows, "pass": ok}


def cmd_degree_suite(args):
    rep = degree_identity_suite(args.n_min, args.n_max, tuple(args.q))
    return rep["pass"], rep


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mckaylab",
        description="Exact McKay-graph and classical-group character verifiers",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--out", help="directory for counterexample artifacts")
    common.add_argument("--cache-dir", help="table cache directory (or MCKAYLAB_CACHE_DIR)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, parents=[common], **kwargs)
        p.set_defaults(fn=fn)
        return p

    p = add("sn-table", cmd_sn_table, help="build/validate an S_n character table")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--paranoid", action="store_true", help="re-validate orthogonality on cache load")

    p = add("an-table", cmd_an_table, help="build/validate an A_n character table")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--paranoid", action="store_true", help="re-validate orthogonality on cache load")

    p = add("mckay", cmd_mckay, help="McKay graph, diameter and covering exponent")
    p.add_argument("--group", choices=("S", "A"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", required=True, help="character label, e.g. 4+1 or 3+1+1(+)")

    p = add("covering", cmd_covering, help="covering exponent of a character")
    p.add_argument("--group", choices=("S", "A"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", required=True)

    p = add("diameter-sweep", cmd_diameter_sweep, help="A_n diameter/degree-ratio sweep")
    p.add_argument("--n-min", type=int, default=5)
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--fit-max", type=int, default=10, help="fit the constant on n <= this")
    p.add_argument("--fit-den", type=int, default=4, help="denominator granularity of the fitted constant")
    p.add_argument("--csv", help="also write the rows as CSV")

    p = add("product-cover", cmd_product_cover, help="covering by long products of irreducibles")
    p.add_argument("--group", choices=("S", "A"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=("squared", "doubled"), required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)

    p = add("staircase", cmd_staircase, help="staircase dimension lower bound")
    p.add_argument("--m-max", type=int, default=20)

    p = add("staircase-growth", cmd_staircase_growth, help="the staircase growth-step inequality")
    p.add_argument("--m-min", type=int, default=3)
    p.add_argument("--m-max", type=int, default=40)

    p = add("staircase-tail", cmd_staircase_tail, help="non-self-conjugate extensions of the branching seed")
    p.add_argument("--n-max", type=int, default=200)

    p = add("split-degree", cmd_split_degree, help="degree bound for split A_n characters")
    p.add_argument("--n-min", type=int, default=5)
    p.add_argument("--n-max", type=int, default=13)

    p = add("sp-exhaustive", cmd_sp_exhaustive, help="exhaustive Sp_6(2) Weil-value sweep")
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--workers", type=int, default=1)

    p = add("omega-identities", cmd_omega_identities, help="orthogonal restriction identities on samples")
    p.add_argument("--sign", choices=("+", "-"), required=True)
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)

    p = add("ratio-check", cmd_ratio_check, help="character-ratio bounds on samples")
    p.add_argument("--which", choices=("sp-weil", "omega-weil", "so-odd-weil"), required=True)
    p.add_argument("--kind", choices=("symplectic", "orthogonal-plus", "orthogonal-minus"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)

    p = add("replay", cmd_replay, help="re-run a stored counterexample artifact")
    p.add_argument("--file", required=True)

    p = add("sigma-bounds", cmd_sigma_bounds, help="exponent-sum ratio calculator")
    p.add_argument("--n-min", type=int, default=10)
    p.add_argument("--n-max", type=int, default=20)
    p.add_argument("--q", type=int, nargs="+", default=[2, 3, 4, 5, 7, 8, 9])
    p.add_argument("--l", type=int, default=None)
    p.add_argument("--v", type=int, default=0, choices=(0, 1))
    p.add_argument("--workers", type=int, default=1)

    p = add("centralizer-exponents", cmd_centralizer_exponents, help="p-part exponent brute force")
    p.add_argument("--n-max", type=int, default=30)

    add("constants", cmd_constants, help="constant-propagation arithmetic ledger")

    p = add("degree-suite", cmd_degree_suite, help="degree identity suite")
    p.add_argument("--n-min", type=int, default=5)
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--q", type=int, nargs="+", default=[2, 3, 4, 5, 7, 8, 9])

    return parser


def _write_artifacts(args, result: dict) -> list[str]:
    paths = []
    out_dir = args.out
    if not out_dir:
        return paths
    os.makedirs(out_dir, exist_ok=True)
    violations = result.get("violations") or []
    for i, v in enumerate(violations[:20]):
        art = {
            "which": result.get("which"),
            "kind": result.get("space"),
            "n": result.get("dim", 0) // 2,
            "q": result.get("q"),
            "violation": v,
        }
        if "rows" in v:
            art["rows"] = v["rows"]
            q = result.get("q")
            if isinstance(q, int) and q <= 16:
                art["rows_hex"] = ["".join(f"{x:x}" for x in row) for row in v["rows"]]
        path = os.path.join(out_dir, f"counterexample_{i}.json")
        with open(path, "w") as fh:
            json.dump(art, fh, indent=1)
        paths.append(path)
    return paths


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.time()
    try:
        ok, result = args.fn(args)
    except (ValueError, CacheError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ExactnessError as exc:
        print(f"exactness failure: {exc}", file=sys.stderr)
        return 1
    runtime_ms = int((time.time() - started) * 1000)
    params = {
        k: v
        for k, v in vars(args).items()
        if k not in ("fn", "command", "format", "out", "workers", "cache_dir")
        and v is not None
    }
    seed = params.pop("seed", None)
    report = make_report(args.command, params, seed, result, started)
    report["runtime_ms"] = runtime_ms
    if args.format == "json":
        print(json.dumps(report, indent=1, default=str))
    else:
        status = "PASS" if ok else "FAIL"
        print(f"[{status}] {args.command} ({runtime_ms} ms)")
        print(f"  result digest: {report['manifest']['result_digest']}")
        summary = {
            k: v
            for k, v in result.items()
            if not isinstance(v, (list, dict)) or k in ("violations",)
        }
        for k, v in summary.items():
            if k == "violations":
                print(f"  violations: {len(v)}")
            else:
                print(f"  {k}: {v}")
    if not ok:
        paths = _write_artifacts(args, result)
        for p in paths:
            print(f"  counterexample written: {p}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
