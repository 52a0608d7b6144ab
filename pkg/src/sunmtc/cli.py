"""Command-line front end: modular data, effective centers, torus partition
functions, invariant search, reducibility verdicts and (N, k) grid sweeps.

Exit codes: 0 success, 1 invalid arguments, 2 search budget exceeded,
3 internal consistency failure (e.g. a relation residual too large).
Identical invocations produce byte-identical JSON/CSV output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

import numpy as np

from . import __version__
from .invariants import (
    DEFAULT_ALCOVE_GUARD,
    DEFAULT_BUDGET,
    BudgetExceeded,
    commutant,
    enumerate_integer_invariants,
)
from .liealg import enumerate_alcove
from .modular import (
    InternalCheckError,
    datum_to_json,
    modular_datum,
    verify_relations,
)
from .schellekens import (
    SupportNotInEffectiveCenter,
    build_algebra,
    is_trivial,
    reducibility_verdict,
    torus_partition_function,
)
from .simple_currents import effective_center

__all__ = ["main", "build_parser"]

_BUDGET_ENV = "MTC_BUDGET"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); the contract wants 1
        raise _UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sunmtc", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_k=True):
        p.add_argument("--N", type=int, required=True, help="rank parameter, N >= 2")
        if with_k:
            p.add_argument("--k", type=int, required=True, help="level, k >= 0")
        p.add_argument("--output", type=str, default=None,
                       help="write to this path instead of stdout")
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")

    p = sub.add_parser("modular-data", help="assemble and verify the (S, T, theta, zeta) datum")
    add_common(p)

    p = sub.add_parser("effective-center", help="effective center exponents and generator")
    add_common(p)

    p = sub.add_parser("schellekens", help="torus partition function of a cyclic-support algebra")
    add_common(p)
    p.add_argument("--support", type=int, default=None,
                   help="power p of the generating invertible (default: criterion case split)")

    p = sub.add_parser("invariants", help="exhaustive masked integer modular-invariant search")
    add_common(p)
    p.add_argument("--max-entry", type=int, default=3)
    p.add_argument("--budget", type=int, default=None,
                   help=f"solution-lattice dimension cap (default {DEFAULT_BUDGET}; "
                        f"env {_BUDGET_ENV} overrides)")
    p.add_argument("--alcove-guard", type=int, default=DEFAULT_ALCOVE_GUARD)
    p.add_argument("--commutant", action="store_true",
                   help="also report the joint {S,T}-commutant dimension")

    p = sub.add_parser("reducibility", help="genus-1 reducibility verdict for one (N, k)")
    add_common(p)
    p.add_argument("--support", type=int, default=None,
                   help="override the support exponent (verdict still computed from Z)")

    p = sub.add_parser("grid", help="sweep N' in [2..N], k' in [1..k] and tabulate verdicts")
    add_common(p)
    return parser


def _emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _z_csv(alcove, Z) -> str:
    # header row of alcove labels, then integer rows in alcove order
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["(" + " ".join(map(str, w)) + ")" for w in alcove])
    for row in np.asarray(Z):
        writer.writerow([int(v) for v in row])
    return buf.getvalue()


def _weight_str(w) -> str:
    return "(" + ",".join(map(str, w)) + ")"


def _cmd_modular_data(args) -> int:
    datum = modular_datum(args.N, args.k)
    report = verify_relations(datum)
    if not report.ok():
        raise InternalCheckError(
            f"relation residual {report.max_residual:.3e} exceeds 1e-9")
    if args.format == "json":
        payload = datum_to_json(datum)
        payload["relation_residuals"] = {
            "unitarity": report.unitarity,
            "s2_vs_c": report.s2c,
            "st_cubed_vs_s2": report.st,
            "s4_vs_1": report.s4,
        }
        _emit(args, _json_dumps(payload))
        return 0
    lines = [
        f"su({args.N}) level {args.k}: {datum.size} simple objects",
        f"zeta = {datum.zeta:.12f} ({len(datum.zeta_passing)} passing branches)",
        f"relation residuals: unitarity {report.unitarity:.3e}, "
        f"S^2=C {report.s2c:.3e}, (ST)^3=S^2 {report.st:.3e}, S^4=1 {report.s4:.3e}",
        "theta phases: " + " ".join(str(p) for p in datum.theta),
    ]
    _emit(args, "\n".join(lines) + "\n")
    return 0


def _cmd_effective_center(args) -> int:
    center = effective_center(args.N, args.k)
    if args.format == "json":
        _emit(args, _json_dumps({
            "N": args.N, "k": args.k,
            "exponents": list(center.exponents),
            "generator": center.generator,
            "order": center.size,
        }))
        return 0
    gen = f"J^{center.generator}" if center.generator is not None else "none"
    _emit(args, f"effective center of su({args.N}) level {args.k}: order "
                f"{center.size}, exponents {list(center.exponents)}, generator {gen}\n")
    return 0


def _select_support(N: int, k: int, support: int | None) -> int:
    if support is not None:
        return support
    report = reducibility_verdict(N, k)
    return report.support_p


def _cmd_schellekens(args) -> int:
    p = _select_support(args.N, args.k, args.support)
    algebra = build_algebra(args.N, args.k, p)
    tpf = torus_partition_function(algebra)
    alcove = enumerate_alcove(args.N, args.k)
    if args.format == "csv":
        _emit(args, _z_csv(alcove, tpf.Z))
        return 0
    if args.format == "json":
        _emit(args, _json_dumps({
            "N": args.N, "k": args.k, "support": p,
            "support_order": algebra.order_h,
            "xi_base": str(algebra.xi_base.q),
            "trivial": is_trivial(tpf),
            "Z": [[int(v) for v in row] for row in tpf.Z],
        }))
        return 0
    lines = [
        f"Schellekens algebra on <J^{p}> (order {algebra.order_h}) in su({args.N}) level {args.k}",
        f"xi_base phase = {algebra.xi_base.q}",
        f"Z trivial: {is_trivial(tpf)}",
        _z_csv(alcove, tpf.Z).rstrip("\n"),
    ]
    _emit(args, "\n".join(lines) + "\n")
    return 0


def _cmd_invariants(args) -> int:
    budget = args.budget
    if budget is None:
        budget = int(os.environ.get(_BUDGET_ENV, DEFAULT_BUDGET))
    datum = modular_datum(args.N, args.k)
    found = enumerate_integer_invariants(datum, max_entry=args.max_entry,
                                         budget=budget,
                                         alcove_guard=args.alcove_guard)
    payload = {
        "N": args.N, "k": args.k, "max_entry": args.max_entry,
        "count": len(found),
        "invariants": [
            {
                "Z": [[int(v) for v in row] for row in inv.Z],
                "residual_S": inv.residual_s,
                "residual_T": inv.residual_t,
                "eigen_decomposition":
                    None if inv.eigen_decomposition is None
                    else [[v, mult] for v, mult in inv.eigen_decomposition],
            }
            for inv in found
        ],
    }
    if args.commutant:
        payload["commutant_dimension"] = commutant(datum.S, datum.t_diag).dimension
    if args.format == "json":
        _emit(args, _json_dumps(payload))
        return 0
    if args.format == "csv":
        blocks = [_z_csv(datum.alcove, inv.Z) for inv in found]
        _emit(args, "\n".join(blocks))
        return 0
    lines = [f"su({args.N}) level {args.k}: {len(found)} integer invariants "
             f"with entries <= {args.max_entry}"]
    if args.commutant:
        lines.append(f"joint commutant dimension: {payload['commutant_dimension']}")
    for t, inv in enumerate(found):
        eig = ("  eigenvalues " + ", ".join(f"{v:g} (x{c})" for v, c in inv.eigen_decomposition)
               if inv.eigen_decomposition else "")
        lines.append(f"invariant {t}: residual_S {inv.residual_s:.2e}{eig}")
        lines.append(_z_csv(datum.alcove, inv.Z).rstrip("\n"))
    _emit(args, "\n".join(lines) + "\n")
    return 0


def _verdict_payload(report) -> dict:
    return {
        "N": report.N, "k": report.k,
        "support": report.support_p,
        "support_order": report.support_order,
        "valid_supports": list(report.valid_supports),
        "effective_center_order": len(report.valid_supports),
        "trivial": report.trivial,
        "witness": None if report.witness is None else
            [list(report.witness[0]), list(report.witness[1])],
        "verdict": report.verdict,
        "case": report.case,
    }


def _cmd_reducibility(args) -> int:
    report = reducibility_verdict(args.N, args.k)
    Z = report.Z
    payload = _verdict_payload(report)
    if args.support is not None and args.support != report.support_p:
        # probe a non-canonical support; the verdict stays with the case split
        tpf = torus_partition_function(build_algebra(args.N, args.k, args.support))
        Z = tpf.Z
        payload["probed_support"] = args.support
        payload["probed_trivial"] = is_trivial(tpf)
    alcove = enumerate_alcove(args.N, args.k)
    if args.format == "json":
        _emit(args, _json_dumps(payload))
        return 0
    if args.format == "csv":
        _emit(args, _z_csv(alcove, Z))
        return 0
    lines = [f"su({args.N}) level {args.k}: verdict: {report.verdict} (case {report.case})"]
    lines.append(f"support <J^{report.support_p}> of order {report.support_order}; "
                 f"valid supports {list(report.valid_supports)}")
    if report.witness is not None:
        wi, wj = report.witness
        lines.append(f"witness: Z[{_weight_str(wi)}, {_weight_str(wj)}] = 1")
    else:
        lines.append("Z(A) is trivial (proportional to the identity)")
    eye = np.eye(report.Z.shape[0], dtype=np.int64)
    if np.array_equal(report.Z, eye):
        lines.append("Z equals the identity matrix")
    else:
        C = np.zeros_like(report.Z)
        idx = {w: i for i, w in enumerate(alcove)}
        for i, w in enumerate(alcove):
            C[i, idx[tuple(reversed(w))]] = 1
        if np.array_equal(report.Z, C):
            lines.append("Z equals the charge conjugation matrix")
    _emit(args, "\n".join(lines) + "\n")
    return 0


def _cmd_grid(args) -> int:
    rows = []
    for N in range(2, args.N + 1):
        for k in range(1, args.k + 1):
            r = reducibility_verdict(N, k)
            witness = ("-" if r.witness is None else
                       f"Z[{_weight_str(r.witness[0])},{_weight_str(r.witness[1])}]=1")
            rows.append({
                "N": N, "k": k,
                "center_order": len(r.valid_supports),
                "support": f"J^{r.support_p}",
                "trivial": r.trivial,
                "witness": witness,
                "verdict": r.verdict,
                "case": r.case,
            })
    if args.format == "json":
        _emit(args, _json_dumps({"rows": rows}))
        return 0
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()),
                                lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        _emit(args, buf.getvalue())
        return 0
    header = f"{'N':>2} {'k':>2} {'|Pic°|':>6} {'support':>8} {'trivial':>7}  {'witness':<28} verdict"
    lines = [header]
    for r in rows:
        lines.append(f"{r['N']:>2} {r['k']:>2} {r['center_order']:>6} "
                     f"{r['support']:>8} {str(r['trivial']):>7}  {r['witness']:<28} "
                     f"{r['verdict']} (case {r['case']})")
    _emit(args, "\n".join(lines) + "\n")
    return 0


_COMMANDS = {
    "modular-data": _cmd_modular_data,
    "effective-center": _cmd_effective_center,
    "schellekens": _cmd_schellekens,
    "invariants": _cmd_invariants,
    "reducibility": _cmd_reducibility,
    "grid": _cmd_grid,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.N < 2:
            raise _UsageError("need N >= 2")
        if getattr(args, "k", 0) < 0:
            raise _UsageError("need k >= 0")
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (SupportNotInEffectiveCenter, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InternalCheckError as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
