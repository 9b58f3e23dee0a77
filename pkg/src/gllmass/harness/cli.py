"""Command-line entry point: ``gllmass {tables,verify,mortar,advect,bench}``.

Data goes to stdout as CSV, diagnostics to stderr. The exit status is 0
only if every residual check of the command passed.
"""

from __future__ import annotations

import argparse
import csv
import logging
import sys

import numpy as np

from ..mortar import l2_projection_matrix
from ..quadrature import gauss_lobatto_nodes
from .advection import CSV_COLUMNS, AdvectionConfig, ConfigError, DGAdvection, InitialCondition, run_advection
from .bench import BENCH_COLUMNS, run_apply_benchmark
from .checks import CHECK_COLUMNS, mortar_checks, verify_checks
from .tables import SEP, emit_tables, fmt_real

log = logging.getLogger("gllmass")

CONSERVATION_TOL = 1e-12


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _writer(out):
    return csv.writer(out, lineterminator="\n")


def _fmt(row):
    return [fmt_real(v) if isinstance(v, float) else v for v in row]


def _emit_checks(checks, out) -> int:
    w = _writer(out)
    w.writerow(CHECK_COLUMNS)
    for c in checks:
        w.writerow(_fmt(c.csv_row()))
        if not c.passed:
            log.error("check %s failed: %g (tolerance %g)", c.name, c.value, c.tolerance)
    return 0 if all(c.passed for c in checks) else 1


def cmd_tables(args, out) -> int:
    out.write(emit_tables(args.degree, args.family))
    return 0


def cmd_verify(args, out) -> int:
    return _emit_checks(verify_checks(args.degree), out)


def cmd_mortar(args, out) -> int:
    if args.target < args.source:
        log.error("mortar degree (--target) must be >= subdomain degree (--source)")
        return 2
    s, t = gauss_lobatto_nodes(args.source), gauss_lobatto_nodes(args.target)
    for mode in ("exact", "lumped"):
        for name, P in (("forward", l2_projection_matrix(s, t, mode)), ("backward", l2_projection_matrix(t, s, mode))):
            for i, row in enumerate(P):
                out.write(SEP.join([f"{name}_{mode}", str(i)] + [fmt_real(v) for v in row]) + "\n")
    return _emit_checks(mortar_checks(args.source, args.target), out)


def cmd_advect(args, out) -> int:
    modes = ("exact", "lumped") if args.mass == "both" else (args.mass,)
    w = _writer(out)
    w.writerow(CSV_COLUMNS)
    ok = True
    for N in args.degree:
        for mode in modes:
            try:
                cfg = AdvectionConfig(degree=N, elements=args.elements, wave_speed=args.wave_speed,
                                      cfl=args.cfl, final_time=args.t_final, mass_mode=mode,
                                      initial_condition=args.ic)
            except ConfigError as exc:
                log.error("invalid configuration: %s", exc)
                return 2
            rep = run_advection(cfg)
            w.writerow(_fmt(rep.csv_row()))
            finite = all(np.isfinite([rep.l2_error, rep.linf_error, rep.conservation_defect]))
            if not finite or rep.conservation_defect > CONSERVATION_TOL:
                log.error("run mode=%s N=%d failed: conservation defect %g", mode, N, rep.conservation_defect)
                ok = False
            if args.dump_operator:
                path = args.dump_operator
                if len(args.degree) > 1 or len(modes) > 1:
                    path = f"{path}.{mode}.N{N}"
                np.savetxt(path, DGAdvection(cfg).dense_operator(), delimiter=",", fmt="%.17g")
                log.info("wrote semidiscrete operator to %s", path)
    return 0 if ok else 1


def cmd_bench(args, out) -> int:
    rows = run_apply_benchmark(args.sizes, repeats=args.repeats)
    w = _writer(out)
    w.writerow(BENCH_COLUMNS)
    ok = True
    for r in rows:
        w.writerow(_fmt(r.csv_row()))
        if not r.max_abs_diff <= 1e-10:
            log.error("N=%d rank-1 and dense results differ by %g", r.N, r.max_abs_diff)
            ok = False
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gllmass", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("tables", help="nodes, weights, gamma, alpha, beta and operator matrices")
    t.add_argument("--degree", type=int, required=True)
    t.add_argument("--family", choices=("gauss", "gll"), default="gll")
    t.set_defaults(func=cmd_tables)

    v = sub.add_parser("verify", help="residuals of the mass-matrix and operator identities")
    v.add_argument("--degree", type=int, required=True)
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("mortar", help="projection matrices between two GLL degrees")
    m.add_argument("--source", type=int, required=True, help="subdomain degree")
    m.add_argument("--target", type=int, required=True, help="mortar degree")
    m.set_defaults(func=cmd_mortar)

    a = sub.add_parser("advect", help="periodic DG advection, exact vs lumped mass")
    a.add_argument("--degree", type=_int_list, required=True, help="N or a comma list")
    a.add_argument("--elements", type=int, default=4)
    a.add_argument("--cfl", type=float, default=0.25)
    a.add_argument("--t-final", type=float, default=2.0)
    a.add_argument("--wave-speed", type=float, default=1.0)
    a.add_argument("--mass", choices=("exact", "lumped", "both"), default="both")
    a.add_argument("--ic", type=InitialCondition.parse, default=InitialCondition("sine", 1.0),
                   help="sine:m or gaussian:sigma")
    a.add_argument("--dump-operator", metavar="PATH")
    a.set_defaults(func=cmd_advect)

    b = sub.add_parser("bench", help="rank-1 vs dense mass application timings")
    b.add_argument("--sizes", type=_int_list, default=[64, 256, 1024, 4096])
    b.add_argument("--repeats", type=int, default=100)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None, out=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s: %(message)s")
    try:
        return args.func(args, out or sys.stdout)
    except (ValueError, ConfigError) as exc:
        log.error("%s", exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
