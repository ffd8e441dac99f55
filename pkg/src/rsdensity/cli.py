"""Command-line front end.

Every subcommand prints (or writes with --emit / --report) a deterministic
report that embeds the package version, the seed when one applies, and the
full argument set. Exit codes: 0 success, 1 invariant violation, 2 usage or
input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__, config

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _jsonable(x):
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "item"):  # numpy scalar
        return _jsonable(x.item())
    return x


def _config_block() -> dict:
    return {
        "rel_tol": config.REL_TOL,
        "abs_tol": config.ABS_TOL,
        "central_tol": config.CENTRAL_TOL,
        "zfr_constant": config.ZFR_CONSTANT,
    }


def _report(command: str, args: argparse.Namespace, body: dict) -> dict:
    params = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "command", "emit", "report")}
    return {
        "command": command,
        "version": __version__,
        "seed": params.get("seed"),
        "params": params,
        "config": _config_block(),
        **body,
    }


def _emit(doc: dict, path: str | None) -> None:
    text = json.dumps(_jsonable(doc), indent=2, sort_keys=True) + "\n"
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _complex_list(text: str) -> list[complex]:
    try:
        return [complex(t.strip().replace(" ", "")) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"cannot parse complex list {text!r}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"cannot parse integer list {text!r}") from None


# subcommands ------------------------------------------------------------------------


def cmd_partitions(args) -> int:
    from .symmetric_core import enumerate_partitions

    parts = enumerate_partitions(args.n, args.r)
    _emit(_report("partitions", args, {"count": len(parts), "partitions": [list(p) for p in parts]}), args.emit)
    return EXIT_OK


def cmd_schur(args) -> int:
    from .symmetric_core import Partition, schur_eval

    mu = Partition(_int_list(args.mu))
    value = schur_eval(mu, _complex_list(args.x))
    _emit(_report("schur", args, {"value": value}), args.emit)
    return EXIT_OK


def cmd_rs_coeffs(args) -> int:
    from .rs_coefficients import rs_coeff_oracle, rs_coeff_prime_power, sample_satake

    pi = sample_satake(args.n, args.seed, kind=args.kind, primes=[args.p], p_max=args.p)
    pi0 = sample_satake(args.n, args.seed + 1, kind=args.kind, primes=[args.p], p_max=args.p)
    rows = []
    ok = True
    for r in range(args.r + 1):
        a = rs_coeff_prime_power(pi, pi0, args.p, r, check_central=False)
        b = rs_coeff_oracle(pi, pi0, args.p, r)
        agree = config.close(a, b)
        ok &= agree
        rows.append({"r": r, "cauchy": a, "oracle": b, "agree": agree})
    _emit(_report("rs-coeffs", args, {"coefficients": rows, "passed": ok}), args.emit)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_local_factor(args) -> int:
    import numpy as np

    from .local_factors import BZDatum, assembled_coefficient, local_rs_series, random_bz_pair, root_audit

    if args.fixture:
        doc = json.loads(Path(args.fixture).read_text(encoding="utf-8"))
        sigma = BZDatum.from_json(json.dumps(doc["sigma"]))
        tau = BZDatum.from_json(json.dumps(doc["tau"]))
    else:
        if args.seed is None:
            raise UsageError("--seed is required without --fixture")
        sigma, tau = random_bz_pair(np.random.default_rng(args.seed), args.q)
    series = local_rs_series(sigma, tau, args.r)
    rows, ok = [], True
    for r in range(args.r + 1):
        a = assembled_coefficient(sigma, tau, r)
        agree = config.close(a, series[r], abs_=config.REL_TOL)
        ok &= agree
        rows.append({"r": r, "series": series[r], "assembled": a, "agree": agree})
    audit = root_audit(sigma, tau)
    body = {
        "sigma": json.loads(sigma.to_json()),
        "tau": json.loads(tau.to_json()),
        "coefficients": rows,
        "passed": ok,
        "diagnostic": {"tempered": audit.tempered, "js_bound_ok": audit.js_ok},
    }
    _emit(_report("local-factor", args, body), args.emit)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_conductor(args) -> int:
    from . import verify
    from .conductor_pairs import bh_tightness_witness

    if args.witness:
        n, a = args.witness
        _, _, c = bh_tightness_witness(n, a, p=args.p)
        ok = c == (2 * n - 2) * a
        body = {"exact_conductor": c, "bound": (2 * n - 2) * a, "passed": ok}
    else:
        if args.seed is None:
            raise UsageError("--seed is required for a random corpus")
        body = verify.suite_conductor(args.seed, args.instances)
        ok = body["passed"]
    _emit(_report("conductor", args, body), args.emit)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_sieve(args) -> int:
    from .analytic_toolkit import selberg_weights

    if args.g not in ("1/p", "kappa/p"):
        raise UsageError("--g must be '1/p' or 'kappa/p'")
    g = (lambda p: Fraction(1, p)) if args.g == "1/p" else (lambda p: Fraction(args.kappa, p))
    sv = selberg_weights(g, args.z)
    conds = sv.conditions()
    qf, mt = sv.quadratic_form(), sv.main_term()
    ok = all(conds.values()) and qf == mt
    body = {
        "primes": sv.primes,
        "rho": {str(d): str(r) for d, r in sorted(sv.rho.items())},
        "conditions": conds,
        "main_term": str(mt),
        "quadratic_form": str(qf),
        "passed": ok,
        "diagnostic": {"sum_h_up_to_z_squared": str(sv.literal_z2_sum())},
    }
    _emit(_report("sieve", args, body), args.emit)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_power_sum(args) -> int:
    from .analytic_toolkit import sos_turan

    res = sos_turan(_complex_list(args.z), args.K)
    body = {"k": res.k, "value": res.value, "threshold": res.threshold, "certified": res.certified}
    _emit(_report("power-sum", args, body), args.emit)
    return EXIT_OK if res.certified else EXIT_VIOLATION


def cmd_zeros(args) -> int:
    from .zero_lab import bundled_zeta_zeros, count_zeros, load_zeros

    table = load_zeros(args.file) if args.file else bundled_zeta_zeros()
    body = {"provenance": table.provenance, "zeros_in_table": len(table), "count": count_zeros(table, args.sigma, args.T)}
    _emit(_report("zeros count", args, body), args.emit)
    return EXIT_OK


def cmd_eta(args) -> int:
    from .zero_lab import classical_delta, classical_eta_lower_bound, eta_grid_search, eta_of_x, two_piece_model

    if args.delta is not None:
        if args.T is None:
            raise UsageError("--delta needs --T")
        model = two_piece_model(args.delta, args.T, args.log_D, args.n_L, args.c)
    else:
        model = classical_delta(args.log_D, args.n_L, args.c)
    closed = eta_of_x(model, log_x=args.log_x)
    grid = eta_grid_search(model, log_x=args.log_x)
    ok = abs(closed - grid) <= 1e-6 * abs(grid)
    body = {
        "eta_closed_form": closed,
        "eta_grid": grid,
        "passed": ok,
        "diagnostic": {"classical_lower_bound": classical_eta_lower_bound(args.log_x, args.log_D, args.n_L, args.c)},
    }
    _emit(_report("eta", args, body), args.emit)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_chebotarev(args) -> int:
    from .chebotarev_lab import AbelianFieldSpec, error_report

    field = AbelianFieldSpec.cyclotomic(args.q)
    cls = args.cls
    if cls not in field.classes():
        raise UsageError(f"class {cls} is not a unit mod {args.q}")
    xs = [int(float(v)) for v in args.x.split(",")]
    rows = [error_report(field, cls, x, delta=args.delta).row() for x in xs]
    cols = ["x", "pi_C", "expected", "E_C", "grh_bound", "quasi_grh_bound"]
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in row.items()})
    if args.report:
        Path(args.report).write_text(buf.getvalue(), encoding="utf-8")
    else:
        sys.stdout.write(buf.getvalue())
    return EXIT_OK


def cmd_family_bound(args) -> int:
    from .family_lab import family_bound_report

    body = family_bound_report(args.D, args.n, args.Q, args.norm_q, args.eps)
    diag = body.pop("diagnostic")
    _emit(_report("family-bound", args, {"report": body, "diagnostic": diag}), args.emit)
    return EXIT_OK


def cmd_verify_all(args) -> int:
    from . import verify

    only = set(args.only.split(",")) if args.only else None
    if only:
        unknown = only - {name for name, _ in verify.SUITES}
        if unknown:
            raise UsageError(f"unknown suites: {sorted(unknown)}")
    result = verify.run_all(args.seed, only)
    _emit(_report("verify-all", args, result), args.emit)
    return EXIT_OK if result["passed"] else EXIT_VIOLATION


# parser --------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rsdensity", description="Rankin-Selberg coefficient and zero-density toolkit")
    ap.add_argument("--version", action="version", version=f"rsdensity {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        p.add_argument("--emit", help="write the JSON report to this path instead of stdout")
        return p

    p = add("partitions", cmd_partitions, "partitions of r with at most n parts")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)

    p = add("schur", cmd_schur, "evaluate a Schur polynomial")
    p.add_argument("--mu", required=True, help="comma-separated parts, e.g. 2,1")
    p.add_argument("--x", required=True, help="comma-separated complex values, e.g. 1,0.5+1j")

    p = add("rs-coeffs", cmd_rs_coeffs, "Rankin-Selberg prime-power coefficients, Schur form vs direct expansion")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--kind", choices=["unitary", "grc", "js"], default="unitary")

    p = add("local-factor", cmd_local_factor, "ramified local factor series vs block assembly")
    p.add_argument("--fixture", help='JSON file {"sigma": {...}, "tau": {...}}')
    p.add_argument("--seed", type=int)
    p.add_argument("--q", type=int, default=3)
    p.add_argument("--r", type=int, default=6)

    p = add("conductor", cmd_conductor, "conductor-of-pairs bounds on a random corpus or the tightness witness")
    p.add_argument("--seed", type=int)
    p.add_argument("--instances", type=int, default=10_000)
    p.add_argument("--witness", type=int, nargs=2, metavar=("N", "A"))
    p.add_argument("--p", type=int, default=3)

    p = add("sieve", cmd_sieve, "exact Selberg weights")
    p.add_argument("--z", type=float, required=True)
    p.add_argument("--g", default="1/p", help="'1/p' or 'kappa/p'")
    p.add_argument("--kappa", type=int, default=1)

    p = add("power-sum", cmd_power_sum, "power-sum witness search over k in [K, 2K]")
    p.add_argument("--z", required=True, help="comma-separated complex values")
    p.add_argument("--K", type=int, required=True)

    zp = sub.add_parser("zeros", help="zero tables")
    zsub = zp.add_subparsers(dest="zeros_command", required=True)
    p = zsub.add_parser("count", help="count zeros with beta >= sigma and |gamma| <= T")
    p.set_defaults(func=cmd_zeros)
    p.add_argument("--file", help="zeros file (default: bundled first 100 zeta ordinates)")
    p.add_argument("--sigma", type=float, default=0.5)
    p.add_argument("--T", type=float, required=True)
    p.add_argument("--emit")

    p = add("eta", cmd_eta, "eta(x) for a zero-free-region model, closed form and grid")
    p.add_argument("--log-x", type=float, required=True)
    p.add_argument("--log-D", type=float, required=True)
    p.add_argument("--n-L", type=int, default=1)
    p.add_argument("--c", type=float, default=config.ZFR_CONSTANT)
    p.add_argument("--delta", type=float, help="constant piece on [3, T] (two-piece model)")
    p.add_argument("--T", type=float)

    p = sub.add_parser("chebotarev", help="exact prime counts in a Frobenius class of Q(zeta_q), CSV")
    p.set_defaults(func=cmd_chebotarev)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--class", dest="cls", type=int, required=True)
    p.add_argument("--x", required=True, help="comma-separated bounds, e.g. 1e4,1e6")
    p.add_argument("--delta", type=float, default=0.5)
    p.add_argument("--report", help="CSV output path (default stdout)")

    p = add("family-bound", cmd_family_bound, "X choices, index size and the K <= 2N family bound")
    p.add_argument("--D", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--Q", type=float, required=True)
    p.add_argument("--norm-q", type=float, default=1.0)
    p.add_argument("--eps", type=float, default=0.1)

    p = add("verify-all", cmd_verify_all, "run every invariant suite")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--only", help="comma-separated suite names")
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"rsdensity: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        print(f"rsdensity: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
