"""Command-line front end.

Exit codes: 0 when the property holds, 1 when it fails, 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import census, factor6, graphstate, oa
from .errors import ConditionFailed, ConditionZero, NotSuperregular, UnverifiedDecomposition
from .factor8 import factor8, gate_perfection_report
from .formats import (
    FormatError,
    circuit_to_dict,
    decomposition_from_dict,
    decomposition_to_dict,
    dumps,
    format_array_csv,
    parse_array_csv,
    parse_matrix,
)
from .gf import field_new
from .linalg import FFMatrix, first_vanishing_minor

OK, FAIL, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _err(msg: str):
    print(msg, file=sys.stderr)


def _flag_field(args):
    if getattr(args, "p", None) is None:
        return None
    try:
        return field_new(args.p, args.n, tuple(args.poly) if args.poly else None)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _load_matrix(args) -> FFMatrix:
    try:
        text = Path(args.matrix).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {args.matrix}: {exc.strerror}") from exc
    m, overridden = parse_matrix(text, _flag_field(args))
    if overridden is not None:
        _err(f"warning: file header field {m.field} overrides {overridden} from flags")
    return m


def _write(text: str, dest: str | None):
    if dest and dest != "-":
        Path(dest).write_text(text)
    else:
        sys.stdout.write(text)


def _fmt_rows(m: FFMatrix) -> str:
    return "[" + ", ".join("[" + ", ".join(map(str, r)) + "]" for r in m.tolist()) + "]"


def _load_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


# -- subcommands -------------------------------------------------------------


def cmd_superregular(args) -> int:
    m = _load_matrix(args)
    hit = first_vanishing_minor(m)
    if hit is None:
        print(f"superregular ({m.rows}x{m.cols} over {m.field})")
        return OK
    print(NotSuperregular(*hit))
    return FAIL


def cmd_factor6(args) -> int:
    G = _load_matrix(args)
    try:
        d = factor6.factor(G, args.direction)
    except (ConditionZero, NotSuperregular) as exc:
        print(exc)
        return FAIL
    for name, gate in d.gates.items():
        print(f"{name} = {_fmt_rows(gate)}")
    print(f"{d.direction} condition = {d.condition_value}; verified = {d.verify()}")
    if args.json:
        _write(dumps(decomposition_to_dict(d)), args.json)
    return OK


def cmd_factor8(args) -> int:
    G = _load_matrix(args)
    try:
        d = factor8(G)
    except (ConditionFailed, NotSuperregular) as exc:
        print(exc)
        return FAIL
    perfect = gate_perfection_report(d)
    for pair, gate in d.gates.items():
        tag = "" if perfect[pair] else "  (not perfect)"
        print(f"A{pair[0]}{pair[1]} = {_fmt_rows(gate)}{tag}")
    print(f"verified = {d.verify()}")
    if args.json:
        _write(dumps(decomposition_to_dict(d)), args.json)
    return OK


def cmd_yb(args) -> int:
    f = _flag_field(args) or field_new(5)
    triple = factor6.yb_build(f, *args.params)
    for name in ("A", "B", "C"):
        print(f"{name} = {_fmt_rows(getattr(triple, name))}")
    holds = factor6.yb_check(triple.A, triple.B, triple.C)
    print(f"product = {_fmt_rows(triple.product())}")
    print(f"yang-baxter = {holds}")
    return OK if holds else FAIL


def _array_summary(arr: oa.OrthogonalArray, direction: str) -> tuple[int, oa.BipartitionReport | None]:
    s = oa.strength(arr)
    report = oa.bipartition_report(arr, direction) if arr.k in (6, 8) else None
    return s, report


def cmd_oa(args) -> int:
    if args.action == "build":
        G = _load_matrix(args)
        arr = oa.array_from_matrix(G)
        _write(format_array_csv(arr, G.field), args.output)
        _err(f"{arr.n_rows} rows, {arr.k} columns, strength {oa.strength(arr)}")
        return OK
    if args.action == "export":
        d = decomposition_from_dict(_load_json(args.matrix))
        if not d.verify():
            print("decomposition does not reproduce its matrix")
            return FAIL
        arr = oa.array_from_matrix(d.recompose())
        _write(format_array_csv(arr, d.field), args.output)
        _err(f"{arr.n_rows} rows, strength {oa.strength(arr)}")
        return OK
    try:
        text = Path(args.matrix).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {args.matrix}: {exc.strerror}") from exc
    arr, _ = parse_array_csv(text, args.symbols)
    s, report = _array_summary(arr, args.direction)
    want = args.strength if args.strength is not None else arr.k // 2
    print(f"strength = {s}")
    if report is not None:
        good = sum(b.orthogonal for b in report.bipartitions)
        print(f"balanced bipartitions orthogonal: {good}/{len(report.bipartitions)}")
        for b in report.failing():
            label = f" [{b.label}]" if b.label else ""
            print(f"  fails: {b.side} | {b.complement}{label}")
    return OK if s >= want else FAIL


def cmd_circuit(args) -> int:
    d = decomposition_from_dict(_load_json(args.decomposition))
    try:
        plan = graphstate.tensor_network_circuit(d)
    except UnverifiedDecomposition as exc:
        print(exc)
        return FAIL
    _write(dumps(circuit_to_dict(plan)), args.output)
    dropped = plan.droppable()
    names = ", ".join(g.name for g in dropped)
    extra = f" ({plan.effective} effective; droppable identity: {names})" if dropped else ""
    _err(f"gates: {plan.total}{extra}")
    return OK


def cmd_graphstate(args) -> int:
    m = _load_matrix(args)
    L = graphstate.IncidenceMatrix(m) if args.incidence else graphstate.block_incidence(m)
    checks = args.check_property1 or args.gate_count or args.verify_uniformity
    status = OK
    if args.check_property1 or not checks:
        ok = graphstate.property1_check(L)
        print(f"property 1: {'holds' if ok else 'fails'}")
        status = max(status, OK if ok else FAIL)
    if args.gate_count or not checks:
        print(f"gate count: {graphstate.gate_count(L)} (lower bound {graphstate.min_gate_bound(L.k)})")
    if args.verify_uniformity:
        psi = graphstate.build_graph_state(L)
        rep = graphstate.uniformity_check(psi, L.field.order, L.k, args.tol)
        npass = sum(e.passed for e in rep.entries)
        print(f"uniformity: {npass}/{len(rep.entries)} bipartitions within {args.tol:g}")
        status = max(status, OK if rep.passed else FAIL)
    return status


def cmd_census(args) -> int:
    f = _flag_field(args)
    if f is None:
        raise UsageError("census needs --p")
    if args.singular:
        est = census.minor_singularity_estimate(f, args.singular, args.samples or 100_000, args.seed or 0)
        print(json.dumps({
            "q": est.q, "c": est.c, "samples": est.samples, "seed": est.seed,
            "empirical": est.empirical, "closed_form": est.closed_form,
            "difference": est.difference, "sigma": est.sigma,
        }, sort_keys=True))
        return OK if est.within_3sigma else FAIL
    run = census.census_factorizable if args.factor else census.census_superregular
    kw = dict(samples=args.samples, seed=args.seed, threads=args.threads,
              column_major=args.column_major, checkpoint=args.checkpoint)
    res = run(f, args.size, args.mode, **kw)
    rec = res.to_dict()
    rec.pop("duration")  # keep stdout reproducible
    line = json.dumps(rec, sort_keys=True)
    print(line)
    if args.out:
        with open(args.out, "a") as fh:
            fh.write(line + "\n")
    _err(f"scanned {res.total} candidates in {res.duration:.2f}s")
    return OK


def cmd_field_table(args) -> int:
    f = _flag_field(args)
    if f is None:
        raise UsageError("field-table needs --p")
    if f.order > 64:
        raise UsageError("tables are printed only for q <= 64")
    print(f"{f}  modulus coefficients (lowest first) {' '.join(map(str, f.modulus))}")
    for c in range(f.order):
        inv = f.inv(c) if c else "-"
        print(f"{c:>4}  {f.format(c):<16} inv {inv}")
    w = len(str(f.order - 1))
    for name, op in (("+", f.add), ("*", f.mul)):
        print()
        print(f"{name:>{w}} | " + " ".join(f"{b:>{w}}" for b in range(f.order)))
        for a in range(f.order):
            print(f"{a:>{w}} | " + " ".join(f"{op(a, b):>{w}}" for b in range(f.order)))
    return OK


# -- parser ------------------------------------------------------------------


def _field_flags(p: argparse.ArgumentParser):
    p.add_argument("--p", type=int, help="field characteristic")
    p.add_argument("--n", type=int, default=1, help="extension degree")
    p.add_argument("--poly", type=int, nargs="+", help="modulus coefficients, lowest first")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ametensor", description="Perfect tensors from superregular matrices over finite fields.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("superregular", help="check that every minor is nonzero")
    p.add_argument("matrix")
    _field_flags(p)
    p.set_defaults(func=cmd_superregular)

    p = sub.add_parser("factor6", help="factor a 3x3 matrix into three 2x2 gates")
    p.add_argument("matrix")
    p.add_argument("--direction", choices=[factor6.FORWARD, factor6.BACKWARD], default=factor6.FORWARD)
    p.add_argument("--json", metavar="OUT")
    _field_flags(p)
    p.set_defaults(func=cmd_factor6)

    p = sub.add_parser("factor8", help="factor a 4x4 matrix into six 2x2 gates")
    p.add_argument("matrix")
    p.add_argument("--json", metavar="OUT")
    _field_flags(p)
    p.set_defaults(func=cmd_factor8)

    p = sub.add_parser("yb", help="build a Yang-Baxter triple from its free parameters")
    p.add_argument("params", type=int, nargs=8, metavar="X", help=" ".join(factor6.YB_FREE))
    _field_flags(p)
    p.set_defaults(func=cmd_yb)

    p = sub.add_parser("oa", help="orthogonal arrays")
    p.add_argument("action", choices=["build", "verify", "export"])
    p.add_argument("matrix", help="matrix file (build), CSV (verify) or decomposition JSON (export)")
    p.add_argument("-o", "--output")
    p.add_argument("--strength", type=int, help="required strength for verify (default k/2)")
    p.add_argument("--symbols", type=int)
    p.add_argument("--direction", default="none", choices=["none", factor6.FORWARD, factor6.BACKWARD])
    _field_flags(p)
    p.set_defaults(func=cmd_oa)

    p = sub.add_parser("circuit", help="circuit plan from a decomposition record")
    p.add_argument("decomposition")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_circuit)

    p = sub.add_parser("graphstate", help="graph state checks for the block incidence matrix of G")
    p.add_argument("matrix")
    p.add_argument("--incidence", action="store_true", help="the file holds L itself")
    p.add_argument("--check-property1", action="store_true")
    p.add_argument("--gate-count", action="store_true")
    p.add_argument("--verify-uniformity", action="store_true")
    p.add_argument("--tol", type=float, default=1e-9)
    _field_flags(p)
    p.set_defaults(func=cmd_graphstate)

    p = sub.add_parser("census", help="count superregular and factorizable matrices")
    _field_flags(p)
    p.add_argument("--size", type=int, default=3)
    p.add_argument("--mode", choices=["exhaustive", "random"], default="exhaustive")
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--threads", type=int, help="worker processes (default: $THREADS or 1)")
    p.add_argument("--checkpoint")
    p.add_argument("--factor", action="store_true", help="also count nonzero solubility conditions")
    p.add_argument("--column-major", action="store_true")
    p.add_argument("--singular", type=int, metavar="C", help="estimate the chance a random CxC matrix is singular")
    p.add_argument("--out", help="append the JSON line to this file")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("field-table", help="print element forms and arithmetic tables")
    _field_flags(p)
    p.set_defaults(func=cmd_field_table)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, FormatError) as exc:
        _err(f"error: {exc}")
        return USAGE
    except ValueError as exc:
        # remaining validation failures come from bad inputs
        _err(f"error: {exc}")
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
