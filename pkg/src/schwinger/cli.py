"""Command-line front end: bases, tables, distributions, crossovers, checks.

Every subcommand writes deterministic text (CSV, JSON or aligned tables)
to stdout.  Exit codes: 0 on success, 1 on usage errors, 2 when a
validation or verification step fails.  The environment variable
SCHWINGER_TOL overrides the default construction tolerance of 1e-10.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction

import numpy as np

from .degeneracy import (
    csco_crossover,
    degeneracy_table,
    first_fermionic_crossover_mode,
    q_binomial,
    verify_qbinomial_degeneracy_identity,
)
from .entangle import (
    closed_form_distribution,
    ghz_state,
    spin_distribution,
    w_state,
)
from .sector import Statistics, enumerate_sector
from .spinbasis import DEFAULT_TOL, build_spin_basis
from .threemode import admissible_labels, spin_state_3mode
from .verify import run_all

USAGE_ERROR = 1
VALIDATION_ERROR = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)


def _half_text(doubled: int) -> str:
    return f"{doubled / 2:g}"


def _default_tol() -> float:
    raw = os.environ.get("SCHWINGER_TOL")
    if raw is None:
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise SystemExit(
            f"schwinger: invalid SCHWINGER_TOL={raw!r}"
        ) from None
    return tol


def _basis_table_lines(basis) -> list[str]:
    sec = basis.sector
    lines = []
    for lab, row in zip(basis.labels, basis.matrix):
        terms = []
        for k in np.flatnonzero(np.abs(row) > 1e-12):
            amp = row[k]
            occ = ",".join(str(x) for x in sec.states[k])
            if abs(amp.imag) > 1e-12:
                terms.append(f"({amp.real:+.12f}{amp.imag:+.12f}i)|{occ}>")
            else:
                terms.append(f"{amp.real:+.12f}|{occ}>")
        label = f"|{lab.n_particles},{_half_text(lab.l2)},{_half_text(lab.lz2)};C={lab.c}>"
        lines.append(f"{label} = {' '.join(terms)}")
    return lines


def _basis_csv_lines(basis) -> list[str]:
    sec = basis.sector
    lines = ["N,two_l,l,two_lz,lz,C,occupation,re,im"]
    for lab, row in zip(basis.labels, basis.matrix):
        for k in np.flatnonzero(np.abs(row) > 1e-12):
            amp = row[k]
            occ = " ".join(str(x) for x in sec.states[k])
            lines.append(
                f"{lab.n_particles},{lab.l2},{_half_text(lab.l2)},{lab.lz2},"
                f"{_half_text(lab.lz2)},{lab.c},{occ},{amp.real!r},{amp.imag!r}"
            )
    return lines


def _cmd_basis(args) -> int:
    sec = enumerate_sector(args.n, args.N, args.statistics)
    basis = build_spin_basis(sec, args.tol)
    if args.format == "json":
        print(basis.to_json())
    elif args.format == "csv":
        print("\n".join(_basis_csv_lines(basis)))
    else:
        print("\n".join(_basis_table_lines(basis)))
    return 0


def _cmd_threemode(args) -> int:
    if args.table:
        labels = admissible_labels(args.N)
    else:
        if args.l is None or args.lz is None:
            raise SystemExit(USAGE_ERROR)
        labels = [(args.l, args.lz)]
    sec = enumerate_sector(3, args.N, Statistics.BOSON)
    if args.format == "csv":
        print("N,l,lz,occupation,amplitude")
    for l, lz in labels:
        state = spin_state_3mode(args.N, l, lz)
        if args.format == "csv":
            for k in np.flatnonzero(np.abs(state.amplitudes) > 1e-12):
                occ = " ".join(str(x) for x in sec.states[k])
                print(f"{args.N},{l},{lz},{occ},{state.amplitudes[k].real!r}")
        else:
            terms = [
                f"{state.amplitudes[k].real:+.12f}|{','.join(str(x) for x in sec.states[k])}>"
                for k in np.flatnonzero(np.abs(state.amplitudes) > 1e-12)
            ]
            print(f"|{args.N},{l},{lz}> = {' '.join(terms)}")
    return 0


def _cmd_degeneracy(args) -> int:
    table = degeneracy_table(args.n, args.N, args.statistics)
    print("two_lz,lz,g")
    for lz2, count in table.items():
        print(f"{lz2},{_half_text(lz2)},{count}")
    return 0


def _cmd_qbinom(args) -> int:
    poly = q_binomial(args.j, args.k)
    print(f"[{args.j} {args.k}]_q = {poly}")
    if args.verify:
        report = verify_qbinomial_degeneracy_identity(args.j, args.k)
        if report.ok:
            print("degeneracy identity: PASS")
            return 0
        print("degeneracy identity: FAIL")
        for power, coeff, count in report.mismatches:
            print(f"  q^{power}: coefficient {coeff} vs score count {count}")
        return VALIDATION_ERROR
    return 0


def _cmd_crossover(args) -> int:
    stat = Statistics.parse(args.statistics)
    if args.scan_modes is not None:
        if stat is not Statistics.FERMION:
            print("--scan-modes applies to fermions only", file=sys.stderr)
            return USAGE_ERROR
        hit = first_fermionic_crossover_mode(args.scan_modes)
        if hit is None:
            print(f"no fermionic crossover for n <= {args.scan_modes}")
        else:
            print(f"first fermionic crossover: n={hit[0]} (at N={hit[1]})")
        return 0
    if args.n is None:
        print("crossover requires --n or --scan-modes", file=sys.stderr)
        return USAGE_ERROR
    result = csco_crossover(args.n, stat, args.N_max)
    if result is None:
        print(f"none (N <= {args.N_max})")
    else:
        print(result)
    return 0


def _cmd_distribution(args) -> int:
    if args.closed_form:
        dist = closed_form_distribution(args.N, args.state, args.axis)
    else:
        state = w_state(args.N) if args.state == "w" else ghz_state(args.N)
        dist = spin_distribution(state, args.axis, args.tol)
    axis = args.axis
    if args.marginal_l:
        print("two_l,l,p")
        for l2, p in sorted(dist.marginal_l().items()):
            print(f"{l2},{_half_text(l2)},{p!r}")
    elif args.marginal_lj:
        print(f"two_l{axis},l{axis},p")
        for lj2, p in sorted(dist.marginal_lj().items()):
            print(f"{lj2},{_half_text(lj2)},{p!r}")
    else:
        print(f"two_l,l,two_l{axis},l{axis},p")
        for (l2, lj2), p in dist.items():
            print(f"{l2},{_half_text(l2)},{lj2},{_half_text(lj2)},{p!r}")
    return 0


def _cmd_verify(args) -> int:
    results = run_all()
    failed = 0
    for name, ok, detail in results:
        status = "PASS" if ok else "FAIL"
        suffix = f"  [{detail}]" if detail else ""
        print(f"{status}  {name}{suffix}")
        failed += 0 if ok else 1
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 0 if failed == 0 else VALIDATION_ERROR


def _build_parser() -> _Parser:
    parser = _Parser(prog="schwinger", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    tol = _default_tol()

    def add_stats(p):
        p.add_argument(
            "--statistics", default="boson", choices=["boson", "fermion"]
        )

    p = sub.add_parser("basis", help="spin basis of one sector")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    add_stats(p)
    p.add_argument("--format", default="table", choices=["table", "csv", "json"])
    p.add_argument("--tol", type=float, default=tol)
    p.set_defaults(func=_cmd_basis)

    p = sub.add_parser("threemode", help="closed-form three-mode spin states")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--l", type=int)
    p.add_argument("--lz", type=int)
    p.add_argument("--table", action="store_true")
    p.add_argument("--format", default="table", choices=["table", "csv"])
    p.set_defaults(func=_cmd_threemode)

    p = sub.add_parser("degeneracy", help="degeneracy per l_z as CSV")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    add_stats(p)
    p.set_defaults(func=_cmd_degeneracy)

    p = sub.add_parser("qbinom", help="Gaussian polynomial and identity check")
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=_cmd_qbinom)

    p = sub.add_parser("crossover", help="CSCO sufficiency crossover scan")
    p.add_argument("--n", type=int)
    add_stats(p)
    p.add_argument("--N-max", type=int, default=1000)
    p.add_argument("--scan-modes", type=int)
    p.set_defaults(func=_cmd_crossover)

    p = sub.add_parser("distribution", help="GHZ/W spin measurement statistics")
    p.add_argument("--state", required=True, choices=["w", "ghz"])
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--axis", default="z", choices=["z", "x", "y"])
    group = p.add_mutually_exclusive_group()
    group.add_argument("--joint", action="store_true")
    group.add_argument("--marginal-l", action="store_true")
    group.add_argument("--marginal-lj", action="store_true")
    p.add_argument("--closed-form", action="store_true")
    p.add_argument("--tol", type=float, default=tol)
    p.set_defaults(func=_cmd_distribution)

    p = sub.add_parser("verify", help="run the bounded invariant suite")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit:
        raise
    except (ValueError, KeyError) as exc:
        print(f"schwinger: {exc}", file=sys.stderr)
        return VALIDATION_ERROR


if __name__ == "__main__":
    sys.exit(main())
