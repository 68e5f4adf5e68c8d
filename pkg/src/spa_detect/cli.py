"""spa-detect command line.

Usage:
    spa-detect detect --family rho1 --a 0.05 --b 0.45 --f 0.4+0.1i [--json]
    spa-detect detect --family rho2 --alpha 0.5
    spa-detect detect --file state.json [--witness-file psi.json] [--q 0.9]
    spa-detect tables [--csv] [--check]
    spa-detect figure1 [--steps 101]
    spa-detect properties [--seed 42] [--trials 1000]

Exit codes for ``detect``: 0 entangled, 3 not detected / inconclusive,
1 input error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

from . import properties, reproduce
from .detect import DetectionReport, full_report, report_family1, report_family2
from .fileio import StateFileError, load_state, load_vector, parse_complex
from .qmat import NotPSD, QmatError, TraceNotOne
from .states import Family1Params
from .witness import DegenerateWitness, approximate_witness, witness_from_pure

EXIT_DETECTED = 0
EXIT_INPUT = 1
EXIT_NUMERICAL = 2
EXIT_NOT_DETECTED = 3


def _fmt(x: float) -> str:
    return f"{x:.6f}"


def _write_csv(rows: list[dict], columns: list[str], out) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(row[c]) if isinstance(row[c], float) else row[c] for c in columns])


def _print_human(rep: DetectionReport, out) -> None:
    p = lambda s="": print(s, file=out)  # noqa: E731
    p(f"state       : {rep.description or 'from file'}  dims {rep.dims.d1}x{rep.dims.d2}")
    p(f"spa map     : {rep.spa_map}")
    p(f"witness     : {rep.witness_source}  p={rep.p:.6g}  R={rep.threshold_r:.6g}")
    p(f"F(W~,rho)   : {rep.fidelity_witness_state:.5f}")
    p(f"F(rho,rho~) : {rep.fidelity_state_spa:.5f}")
    p(f"criterion 1 : {rep.criterion1.verdict.value}  ({rep.criterion1.fidelity:.5f} vs R={rep.threshold_r:.5f})")
    eb = rep.eig_bounds
    p(f"bounds      : L={eb.L:.5f}  lambda_min(rho~)={eb.lambda_min_spa:.5f}  U={eb.U:.5f}")
    cb = rep.concurrence_bounds
    p(f"concurrence : lower={cb.lower_raw:.5f}  upper={cb.upper:.5f}"
      + (f"  wootters={rep.wootters:.5f}" if rep.wootters is not None else ""))
    for c in rep.criterion2:
        p(f"criterion 2 : [{c.label}] {c.verdict.value}  ({c.lambda_min_spa:.5f} >= {c.rhs:.5f}: {c.holds})")
    for c in rep.criterion3:
        p(f"criterion 3 : [{c.label}] {c.verdict.value}  (U_ent={c.u_ent:.5f})")
    et = rep.eigen_threshold
    p(f"eigen test  : {et.verdict.value}  (lambda_min={et.lambda_min:.5f} vs {et.threshold:.5f}"
      + (", extrapolated q*" if et.extrapolated else "") + ")")
    for note in rep.notes:
        p(f"note        : {note}")
    p(f"detected    : {'yes' if rep.detected else 'no'}")


def cmd_detect(args, out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    sources = [args.family is not None, args.file is not None]
    if sum(sources) != 1:
        print("error: give exactly one of --family or --file", file=err)
        return EXIT_INPUT
    if args.q is not None and not 0 <= args.q <= 1:
        print("error: --q must lie in [0, 1]", file=err)
        return EXIT_INPUT
    try:
        if args.family == "rho1":
            if args.a is None or args.b is None:
                print("error: rho1 needs --a and --b", file=err)
                return EXIT_INPUT
            fp = Family1Params(args.a, args.b, parse_complex(args.f))
            rep = report_family1(fp, q=args.q)
        elif args.family == "rho2":
            if args.alpha is None:
                print("error: rho2 needs --alpha", file=err)
                return EXIT_INPUT
            rep = report_family2(args.alpha, q=args.q)
        else:
            rho, origin = load_state(args.file)
            witness = None
            if args.witness_file:
                psi, wdims = load_vector(args.witness_file)
                if wdims != rho.dims:
                    print("error: witness dimensions differ from the state's", file=err)
                    return EXIT_INPUT
                witness = approximate_witness(witness_from_pure(psi, wdims, source=f"file {args.witness_file}"))
            if origin["family"] == "rho1" and witness is None:
                rep = report_family1(origin["params"], q=args.q)
            elif origin["family"] == "rho2" and witness is None:
                rep = report_family2(origin["params"], q=args.q)
            else:
                rep = full_report(rho, witness, q=args.q, description=str(args.file))
    except NotPSD as exc:
        code = EXIT_NUMERICAL if args.q is not None else EXIT_INPUT
        print(f"error: {exc}", file=err)
        return code
    except (QmatError, StateFileError, DegenerateWitness, TraceNotOne, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    except Exception as exc:  # linear algebra breakdown
        print(f"numerical failure: {exc}", file=err)
        return EXIT_NUMERICAL

    if args.json:
        json.dump(rep.to_dict(), out, indent=2)
        out.write("\n")
    elif args.csv:
        c1 = rep.criterion1
        row = {
            "description": rep.description,
            "F_witness_state": rep.fidelity_witness_state,
            "F_state_spa": rep.fidelity_state_spa,
            "R": rep.threshold_r,
            "criterion1": c1.verdict.value,
            "lambda_min_spa": rep.eig_bounds.lambda_min_spa,
            "L": rep.eig_bounds.L,
            "U": rep.eig_bounds.U,
            "C_lower": rep.concurrence_bounds.lower_raw,
            "C_upper": rep.concurrence_bounds.upper,
            "detected": rep.detected,
        }
        _write_csv([row], list(row), out)
    else:
        _print_human(rep, out)
    return EXIT_DETECTED if rep.detected else EXIT_NOT_DETECTED


def cmd_tables(args, out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    tables = reproduce.all_tables()
    layouts = {
        "I": ["params", "F_witness_state", "criterion1"],
        "II": ["params", "F_witness_state", "F_spa_state", "C"],
        "III": ["params", "lambda_min_spa", "criterion2", "verdict"],
    }
    for name, rows in tables.items():
        cols = layouts[name]
        if args.csv:
            print(f"# Table {name}", file=out)
            _write_csv(rows, cols, out)
        else:
            print(f"Table {name}", file=out)
            print("| " + " | ".join(cols) + " |", file=out)
            print("|" + "---|" * len(cols), file=out)
            for row in rows:
                cells = [_fmt(row[c]) if isinstance(row[c], float) else str(row[c]) for c in cols]
                print("| " + " | ".join(cells) + " |", file=out)
            print(file=out)
    if args.check:
        failures = [(name, r["params"]) for name, rows in tables.items() for r in rows if not r["ok"]]
        for name, params in failures:
            print(f"MISMATCH table {name} row {params}", file=err)
        print(f"check: {'FAIL' if failures else 'OK'} (tolerance {reproduce.TABLE_TOL:g})", file=err)
        return 1 if failures else 0
    return 0


def cmd_figure1(args, out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    if args.steps < 2:
        print("error: --steps must be >= 2", file=err)
        return EXIT_INPUT
    rows = reproduce.figure1_rows(args.steps)
    _write_csv(rows, ["alpha", "lower", "upper", "lower_direct", "upper_direct"], out)
    return 0


def cmd_properties(args, out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    if args.trials < 1:
        print("error: --trials must be >= 1", file=err)
        return EXIT_INPUT
    try:
        results = properties.run_all(args.seed, args.trials, q=args.q, skip=tuple(args.skip))
    except ValueError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status} {r.name}: {r.violations}/{r.trials} violations (worst {r.worst:.3e})", file=out)
    return 0 if all(r.passed for r in results) else 1


def _default_seed() -> int:
    return int(os.environ.get("SPA_DETECT_SEED", "42"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spa-detect", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    d = sub.add_parser("detect", help="run all criteria on one state")
    d.add_argument("--family", choices=["rho1", "rho2"])
    d.add_argument("--a", type=float)
    d.add_argument("--b", type=float)
    d.add_argument("--f", default="0", help="complex literal, e.g. 0.4+0.1i")
    d.add_argument("--alpha", type=float)
    d.add_argument("--file", help="JSON state file")
    d.add_argument("--witness-file", help="JSON pure-state vector; the witness is its partial transpose")
    d.add_argument("--q", type=float, help="force the generic map with this noise weight")
    fmt = d.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")
    d.set_defaults(func=cmd_detect)

    t = sub.add_parser("tables", help="regenerate Tables I-III")
    t.add_argument("--csv", action="store_true")
    t.add_argument("--check", action="store_true", help="compare with the embedded reference values at 1e-4")
    t.set_defaults(func=cmd_tables)

    f = sub.add_parser("figure1", help="qutrit-qubit concurrence bounds versus alpha (CSV)")
    f.add_argument("--steps", type=int, default=101)
    f.set_defaults(func=cmd_figure1)

    pr = sub.add_parser("properties", help="seeded randomized property suites")
    pr.add_argument("--seed", type=int, default=_default_seed())
    pr.add_argument("--trials", type=int, default=1000)
    pr.add_argument("--q", type=float, help="noise weight for the generic-map PSD suite")
    pr.add_argument("--skip", action="append", default=[], choices=sorted(properties.SUITES),
                    help="suite to skip (repeatable)")
    pr.set_defaults(func=cmd_properties)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
