"""Command-line entry point: ``iwagraph invariants|tower|stats|verify``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence, TextIO

from . import stats
from .errors import IwagraphError, ValidationError
from .invariants import compute_invariants
from .multigraph import from_json_dict
from .padic import is_odd_prime
from .series import VoltageAssignment
from .tower import kappa_sequence, normalize_voltage, is_admissible, max_level
from .two_vertex import TwoVertexShape


def _read_json(path: str, stdin: TextIO):
    try:
        if path == "-":
            return json.load(stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc


def _check_ell(ell: int) -> int:
    if not is_odd_prime(ell):
        raise ValidationError(f"ell = {ell} must be an odd prime")
    return ell


def load_inputs(graph_path: str, voltage_path: str, stdin: TextIO):
    try:
        g = from_json_dict(_read_json(graph_path, stdin))
        vdata = _read_json(voltage_path, stdin)
        ell = _check_ell(int(vdata["ell"]))
        prec = vdata.get("precision", "exact")
        prec = None if prec == "exact" else int(prec)
        v = VoltageAssignment([int(x) for x in vdata["values"]], ell, prec)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, IwagraphError):
            raise
        raise ValidationError(f"malformed input: {exc}") from exc
    if len(v) != g.edge_count:
        raise ValidationError(f"{len(v)} voltages for {g.edge_count} edges")
    return g, v


def _emit(text: str, output: Optional[str], stdout: TextIO):
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)


def cmd_invariants(args, stdin, stdout):
    g, v = load_inputs(args.graph, args.voltage, stdin)
    res = compute_invariants(g, v, levels=args.levels, degree_cap=args.degree,
                             cross_validate=args.cross_validate, workers=args.threads)
    out = res.as_dict(prefix_len=args.prefix)
    out["ell"] = v.ell
    out["levels"] = [{"n": n, "kappa": str(k), "ord_ell": o} for n, (k, o) in enumerate(res.kappas)]
    if res.nu is None and res.kappas:
        out["nu_note"] = "nu_n did not stabilize over the computed levels"
    else:
        out["nu_note"] = "n0 is the first level of the observed constant tail"
    _emit(json.dumps(out, indent=2) + "\n", args.output, stdout)


def cmd_tower(args, stdin, stdout):
    g, v = load_inputs(args.graph, args.voltage, stdin)
    tree, w = normalize_voltage(g, v)
    if not is_admissible(g, w, tree):
        raise ValidationError("inadmissible voltage: no off-tree value is an ell-adic unit")
    levels = args.levels if args.levels is not None else max_level(g, v.ell)
    ks = kappa_sequence(g, w, levels, workers=args.threads)
    out = [{"n": n, "kappa": str(k), "ord_ell": o} for n, (k, o) in enumerate(ks)]
    _emit(json.dumps(out, indent=2) + "\n", args.output, stdout)


def cmd_stats(args, stdin, stdout):
    ell = _check_ell(args.ell)
    kind = args.family
    if kind == "bouquet":
        if args.mode == "mc":
            rep = stats.monte_carlo_bouquet(ell, args.t, args.samples, args.seed,
                                            depth=args.depth, threads=args.threads)
        else:
            rep = stats.bouquet_enumerate(ell, args.t, depth=args.depth)
            if args.k is not None:
                bound = stats.lambda_small_bound(ell, args.t, args.k)
                emp = stats.lambda_small_empirical(ell, args.t, args.k)
                # summary row: overlaps the per-lambda rows above
                rep.rows.append(stats.StatRow(0, f"<{2 * args.k - 1}", int(emp * rep.total), None, bound))
    elif kind == "two-vertex":
        shape = TwoVertexShape(args.p, args.q, args.r, args.e, args.r - args.e)
        if args.mode == "mc":
            rep = stats.monte_carlo_two_vertex(shape, ell, args.samples, args.seed,
                                               threads=args.threads)
        else:
            rep = stats.two_vertex_enumerate(shape, ell)
    elif kind == "complete":
        if args.a % ell == 0:
            raise ValidationError("the voltage a must be prime to ell")
        rep = stats.complete_report(ell, args.mu, args.lam, args.max_u, args.assignment)
    else:  # vary-t
        good, adm, t_max = stats.vary_t_counts(ell, args.x, args.delta)
        rep = stats.StatReport("vary-t", ell, f"x={args.x};delta={args.delta};t_max={t_max}", adm)
        rep.rows.append(stats.StatRow(0, 1, good, 1 - Fraction(1, ell)))
    text = rep.to_csv()
    if rep.intervals:
        lines = text.rstrip("\n").split("\n")
        lines[0] += ",wilson95_low,wilson95_high"
        for i, row in enumerate(rep.rows, start=1):
            lo, hi = rep.intervals.get((row.mu, row.lam), (None, None))
            lines[i] += "" if lo is None else f",{lo:.6f},{hi:.6f}"
        text = "\n".join(lines) + "\n"
    _emit(text, args.output, stdout)


def cmd_verify(args, stdin, stdout):
    from .regression import PINNED, check_example
    failures = 0
    for ex in PINNED:
        for name, ok, detail in check_example(ex):
            failures += not ok
            stdout.write(f"{'PASS' if ok else 'FAIL'}  {ex.name}: {name}  [{detail}]\n")
    stdout.write(f"{'all pinned checks passed' if not failures else f'{failures} check(s) failed'}\n")
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="iwagraph", description="Iwasawa invariants of voltage multigraphs")
    sub = p.add_subparsers(dest="command", required=True)
    tp = argparse.ArgumentParser(add_help=False)
    tp.add_argument("--threads", type=int, default=1, help="worker count (results do not depend on it)")

    def io_args(sp):
        sp.add_argument("--graph", required=True, help="graph JSON path, or - for stdin")
        sp.add_argument("--voltage", required=True, help="voltage JSON path, or - for stdin")
        sp.add_argument("--levels", type=int, default=None, help="highest tower level (default: min(4, cap))")
        sp.add_argument("--output", default=None)

    sp = sub.add_parser("invariants", parents=[tp], help="mu, lambda, nu of a voltage graph")
    io_args(sp)
    sp.add_argument("--degree", type=int, default=None, help="series degree cap D")
    sp.add_argument("--prefix", type=int, default=8, help="number of series terms to print")
    sp.add_argument("--cross-validate", action="store_true",
                    help="allow a prefix-only mu > 0 once tree counts confirm it")
    sp.set_defaults(func=cmd_invariants)

    sp = sub.add_parser("tower", parents=[tp], help="kappa_n and ord_ell(kappa_n) along the tower")
    io_args(sp)
    sp.set_defaults(func=cmd_tower)

    st = sub.add_parser("stats", help="distribution statistics (CSV)")
    fam = st.add_subparsers(dest="family", required=True)

    def common(sp):
        sp.add_argument("--ell", type=int, required=True)
        sp.add_argument("--output", default=None)

    b = fam.add_parser("bouquet", parents=[tp])
    common(b)
    b.add_argument("--t", type=int, required=True)
    b.add_argument("--mode", choices=["enumerate", "mc"], default="enumerate")
    b.add_argument("--samples", type=int, default=10000)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--depth", type=int, default=None, help="residues mod ell^depth")
    b.add_argument("--k", type=int, default=None, help="also report the lambda < 2k-1 bound")

    tv = fam.add_parser("two-vertex", parents=[tp])
    common(tv)
    for name in ("p", "q", "r", "e"):
        tv.add_argument(f"--{name}", type=int, required=True)
    tv.add_argument("--mode", choices=["enumerate", "mc"], default="enumerate")
    tv.add_argument("--samples", type=int, default=10000)
    tv.add_argument("--seed", type=int, default=0)

    c = fam.add_parser("complete", parents=[tp])
    common(c)
    c.add_argument("--assignment", choices=["single", "star"], default="star")
    c.add_argument("--a", type=int, default=1)
    c.add_argument("--mu", type=int, default=0)
    c.add_argument("--lambda", dest="lam", type=int, default=1)
    c.add_argument("--max-u", dest="max_u", type=int, required=True)

    vt = fam.add_parser("vary-t", parents=[tp])
    common(vt)
    vt.add_argument("--x", type=int, required=True)
    vt.add_argument("--delta", type=float, required=True)
    st.set_defaults(func=cmd_stats)

    sub.add_parser("verify", parents=[tp], help="re-check every pinned worked example").set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None, stdin: TextIO = None, stdout: TextIO = None,
         stderr: TextIO = None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    if getattr(args, "family", None) == "bouquet" and args.depth is None:
        args.depth = 1 if args.mode == "enumerate" else 2
    try:
        rc = args.func(args, stdin, stdout)
    except IwagraphError as exc:
        stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return exc.exit_code
    return rc or 0


if __name__ == "__main__":
    sys.exit(main())
