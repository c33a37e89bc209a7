"""Command-line front end: benchmarks, sweeps and verification suites.

Subcommands
-----------
exactness    plane-wave reproduction test at one (k, n)
convergence  mesh-refinement study for one benchmark/scheme
table        relative V-error matrix over k_list x h_list (sine2 benchmark)
compare      scheme comparison at paired (k, n) lists
verify       run one of the named verification suites

All numeric output is CSV with 17-significant-digit scientific notation so
runs diff cleanly. Exit codes: 0 success, 1 check failure, 2 usage error,
3 numerical guard (near-Nyquist or resonant parameters).
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .analysis import VERIFY_SUITES, convergence_study, error_report
from .errors import NumericalGuardError
from .grid import restrict, sample
from .numerics import nyquist_guard
from .reference import fine_grid_reference, make_benchmark, plane_wave_problem
from .schemes import SchemeKind, solve_scheme

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_GUARD = 3

_SCHEMES = {kind.value: kind for kind in SchemeKind}
_BENCHMARKS = ("planewave", "smooth", "box", "sine2")
_NORMS = ("linf", "l2h", "h1", "v")

# Default fine-reference resolutions for benchmarks without a closed form.
_DEFAULT_N_REF = {"box": 3**12, "sine2": 2**18}


def _fmt(x: float) -> str:
    return f"{x:.16e}"


def _parse_list(text: str, cast):
    return [cast(tok) for tok in text.replace(",", " ").split()]


def _emit(lines: list[str], out_path: str | None) -> None:
    payload = "\n".join(lines) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _resolve_n_list(args, L: float) -> list[int]:
    if args.n_list:
        return _parse_list(args.n_list, int)
    if args.h_list:
        return [round(L / h) for h in _parse_list(args.h_list, float)]
    raise SystemExit(EXIT_USAGE)


def cmd_exactness(args) -> int:
    """Solve the homogeneous plane-wave benchmark and report the absolute
    max-norm error; fails (exit 1) above 1e-12."""
    k = args.k
    n = args.n
    nyquist_guard(k, 1.0 / n, args.nyquist_tol)
    problem, exact = plane_wave_problem(k, 2.0, 1.0)
    u_h = solve_scheme(problem, n, SchemeKind.BPF, args.nyquist_tol)
    ref = sample(exact.u, u_h.grid)
    err = float(np.max(np.abs(u_h.values - ref.values)))
    lines = ["k,n,h,err_linf_abs",
             f"{_fmt(k)},{n},{_fmt(1.0 / n)},{_fmt(err)}"]
    _emit(lines, args.out)
    return EXIT_OK if err <= 1e-12 else EXIT_CHECK_FAILED


def cmd_convergence(args) -> int:
    """Refinement study; rates are appended as comment footer lines."""
    k = args.k
    n_list = sorted(_resolve_n_list(args, 1.0))
    kind = _SCHEMES[args.scheme]
    if args.benchmark == "box":
        table = convergence_study(args.benchmark, kind, k, n_list,
                                  reference="fine", n_ref=args.n or _DEFAULT_N_REF["box"],
                                  tol=args.nyquist_tol)
    else:
        table = convergence_study(args.benchmark, kind, k, n_list, reference="exact",
                                  tol=args.nyquist_tol)
    lines = ["k,h,err_linf_rel,err_v_rel"]
    for row in table.rows:
        lines.append(f"{_fmt(row.k)},{_fmt(row.h)},"
                     f"{_fmt(row.errors.rel_linf)},{_fmt(row.errors.rel_v)}")
    for norm in ("linf", "v"):
        if norm in table.rates:
            lines.append(f"# rate_fit,err_{norm}_rel,{_fmt(table.rates[norm])}")
        else:
            lines.append(f"# rate_fit,err_{norm}_rel,floored")
    _emit(lines, args.out)
    return EXIT_OK


def _table_matrix(k_list, h_list, norm: str, reference: str, n_ref_override,
                  tol: float):
    rows = []
    for k in k_list:
        problem, exact = make_benchmark("sine2", k)
        row = []
        for h in h_list:
            n = round(1.0 / h)
            u_h = solve_scheme(problem, n, SchemeKind.BPF, tol)
            if reference == "exact":
                ref = sample(exact.u, u_h.grid)
            else:
                n_ref = n_ref_override or _DEFAULT_N_REF["sine2"]
                ref = restrict(fine_grid_reference(problem, n_ref, SchemeKind.BPF, tol),
                               u_h.grid)
            row.append(error_report(u_h, ref, k).rel(norm))
        rows.append(row)
    return rows


def _diagonal_summary(k_list, h_list, matrix) -> list[str]:
    """Group entries by fixed k*h and report whether each diagonal decays."""
    diagonals: dict[float, list[tuple[float, float]]] = {}
    for i, k in enumerate(k_list):
        for j, h in enumerate(h_list):
            key = round(k * h, 12)
            diagonals.setdefault(key, []).append((k, matrix[i][j]))
    lines = []
    for kh in sorted(diagonals):
        entries = sorted(diagonals[kh])
        errs = [e for _, e in entries]
        increases = sum(1 for a, b in zip(errs, errs[1:]) if b >= a)
        lines.append(f"# diagonal_kh,{_fmt(kh)},entries,{len(errs)},"
                     f"nonmonotone_steps,{increases}")
    return lines


def cmd_table(args) -> int:
    """Relative error matrix (rows k_list, columns h_list) for the sine2
    benchmark, against both the closed-form and fine-grid references."""
    k_list = _parse_list(args.k_list, float)
    if args.h_list:
        h_list = _parse_list(args.h_list, float)
    elif args.n_list:
        h_list = [1.0 / n for n in _parse_list(args.n_list, int)]
    else:
        raise SystemExit(EXIT_USAGE)
    header = "k\\h," + ",".join(_fmt(h) for h in h_list)
    lines = [f"# reference,exact,norm,{args.norm}", header]
    exact_matrix = _table_matrix(k_list, h_list, args.norm, "exact", None,
                                 args.nyquist_tol)
    for k, row in zip(k_list, exact_matrix):
        lines.append(",".join([_fmt(k)] + [_fmt(v) for v in row]))
    lines.append(f"# reference,fine,norm,{args.norm}")
    lines.append(header)
    fine_matrix = _table_matrix(k_list, h_list, args.norm, "fine", args.n,
                                args.nyquist_tol)
    for k, row in zip(k_list, fine_matrix):
        lines.append(",".join([_fmt(k)] + [_fmt(v) for v in row]))
    lines.extend(_diagonal_summary(k_list, h_list, exact_matrix))
    _emit(lines, args.out)
    return EXIT_OK


def cmd_compare(args) -> int:
    """All three schemes on paired (k, n) lists; one CSV row per scheme and
    pair, reporting the relative error in the selected norm."""
    k_list = _parse_list(args.k_list, float)
    n_list = _resolve_n_list(args, 1.0)
    if len(k_list) != len(n_list):
        raise SystemExit(EXIT_USAGE)
    lines = [f"scheme,k,h,kh,err_{args.norm}_rel"]
    for kind in (SchemeKind.BPF, SchemeKind.DISPERSION_CORRECTED_FD, SchemeKind.CLASSICAL_FD):
        for k, n in zip(k_list, n_list):
            problem, exact = make_benchmark(args.benchmark, k)
            if exact is None:
                raise SystemExit(EXIT_USAGE)
            u_h = solve_scheme(problem, n, kind, args.nyquist_tol)
            ref = sample(exact.u, u_h.grid)
            err = error_report(u_h, ref, k).rel(args.norm)
            h = 1.0 / n
            lines.append(f"{kind.value},{_fmt(k)},{_fmt(h)},{_fmt(k * h)},{_fmt(err)}")
    _emit(lines, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    """Run one verification suite; one machine-readable line per check."""
    suite = VERIFY_SUITES[args.suite]
    checks = suite(seed=args.seed)
    lines = ["status,check,value,bound,detail"]
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        lines.append(f"{status},{c.name},{_fmt(c.value)},{_fmt(c.bound)},{c.detail}")
    n_failed = sum(1 for c in checks if not c.passed)
    lines.append(f"# summary,{args.suite},checks,{len(checks)},failed,{n_failed}")
    _emit(lines, args.out)
    return EXIT_OK if n_failed == 0 else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bpfhelm",
        description="Phase-fitted finite differences for the 1D Helmholtz "
                    "equation with impedance boundary conditions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", default=None, help="write CSV here instead of stdout")
        p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
        p.add_argument("--nyquist-tol", type=float, default=1e-8,
                       help="relative guard distance from kh in pi*Z")

    p = sub.add_parser("exactness", help="plane-wave reproduction test")
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_exactness)

    p = sub.add_parser("convergence", help="mesh-refinement study")
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--n-list", default=None, help="comma-separated subinterval counts")
    p.add_argument("--h-list", default=None, help="comma-separated mesh sizes (L=1)")
    p.add_argument("--n", type=int, default=None,
                   help="fine-reference resolution override (box benchmark)")
    p.add_argument("--scheme", choices=sorted(_SCHEMES), default="bpf")
    p.add_argument("--benchmark", choices=_BENCHMARKS, default="smooth")
    p.add_argument("--norm", choices=_NORMS, default="v")
    common(p)
    p.set_defaults(func=cmd_convergence)

    p = sub.add_parser("table", help="relative V-error matrix (sine2 benchmark)")
    p.add_argument("--k-list", required=True)
    p.add_argument("--h-list", default=None)
    p.add_argument("--n-list", default=None)
    p.add_argument("--n", type=int, default=None,
                   help="fine-reference resolution override (default 2^18)")
    p.add_argument("--norm", choices=_NORMS, default="v")
    common(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("compare", help="scheme comparison at paired (k, n) lists")
    p.add_argument("--k-list", required=True)
    p.add_argument("--n-list", default=None)
    p.add_argument("--h-list", default=None)
    p.add_argument("--benchmark", choices=_BENCHMARKS, default="sine2")
    p.add_argument("--norm", choices=_NORMS, default="linf")
    common(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=sorted(VERIFY_SUITES))
    common(p)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except NumericalGuardError as exc:
        print(f"numerical guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
