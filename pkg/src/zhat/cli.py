"""Command-line frontend.

Subcommands:

* ``brieskorn B1 B2 B3``  closed-form invariants of one Brieskorn sphere
* ``graph FILE``          series from a PLUMB v1 plumbing file
* ``delta FILE``          leading exponents only
* ``table ID``            recompute a reference table (d-family, batch,
                          hom-cob-family)
* ``check B1 B2 B3``      run the invariant suite for one triple

Every rational in the output is exact (num/den); there is no floating
point anywhere.  Exit codes: 0 success, 1 check failure, 2 input or
domain error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .brieskorn import brieskorn_data, zhat0_brieskorn
from .compare import counterexample_report, generate_table, rows_to_csv, sharpness_analysis
from .engine import compute_zhat, delta_a, spin_c_representatives
from .errors import EmptySeries, ZhatError
from .plumbing import parse_plumb

DEFAULT_ORDER = 200


def _envelope(command: str, inputs: dict, results, order) -> dict:
    return {
        "command": command,
        "inputs": inputs,
        "results": results,
        "toolVersion": __version__,
        "truncationOrder": str(order) if order is not None else None,
    }


def _emit(obj: dict, out) -> None:
    json.dump(obj, out, indent=2, default=str)
    out.write("\n")


def _parse_order(text: str) -> Fraction:
    try:
        order = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ZhatError(f"bad order {text!r}") from exc
    if order < 0:
        raise ZhatError("order must be nonnegative")
    return order


def _parse_seifert(text: str) -> tuple[int, int, int, int]:
    parts = text.split(",")
    if len(parts) != 4:
        raise ZhatError("--seifert expects b,a1,a2,a3")
    try:
        return tuple(int(x) for x in parts)  # type: ignore[return-value]
    except ValueError as exc:
        raise ZhatError(f"bad --seifert value {text!r}") from exc


def _cmd_brieskorn(args, out) -> int:
    order = _parse_order(args.order)
    override = _parse_seifert(args.seifert) if args.seifert else None
    data = brieskorn_data(args.b1, args.b2, args.b3, seifert_override=override)
    result = zhat0_brieskorn(args.b1, args.b2, args.b3, order, data=data)
    if args.format == "json":
        _emit(
            _envelope(
                "brieskorn",
                {"triple": [args.b1, args.b2, args.b3], "order": str(order)},
                {"data": data.to_json_obj(), "zhat0": result.to_json_obj()},
                order,
            ),
            out,
        )
        return 0
    b, a = data.seifert_b, data.a
    print(f"triple       = ({args.b1}, {args.b2}, {args.b3})", file=out)
    print(f"seifert data = (b = {b}; a = {a[0]}, {a[1]}, {a[2]})", file=out)
    print(f"legs         = {[list(f) for f in data.leg_fractions]}", file=out)
    print(f"p            = {data.p}", file=out)
    print(f"alpha        = {data.alphas}", file=out)
    print(f"h            = {data.h}", file=out)
    print(f"xi           = {data.xi}", file=out)
    print(f"delta0 = {data.delta0}", file=out)
    print(f"zhat0  = q^({result.delta}) * ({result.tail.text(ellipsis=True)})", file=out)
    print(f"  (tail exact through q^{order})", file=out)
    return 0


def _spinc_selection(graph, args):
    m = graph.linking_matrix()
    reps = spin_c_representatives(m, graph.degree_vector())
    if args.all:
        return reps
    idx = args.spinc
    if not (0 <= idx < len(reps)):
        raise ZhatError(f"spin-c class {idx} out of range [0, {len(reps)})")
    return [reps[idx]]


def _cmd_graph(args, out) -> int:
    order = _parse_order(args.order)
    with open(args.file, encoding="utf-8") as fh:
        graph = parse_plumb(fh.read())
    reps = _spinc_selection(graph, args)
    results = []
    for rep in reps:
        try:
            res = compute_zhat(graph, rep, order=order, allow_weakly=args.experimental_weakly)
            results.append((rep, res))
        except EmptySeries as exc:
            results.append((rep, exc))
    if args.format == "json":
        payload = [
            res.to_json_obj()
            if not isinstance(res, EmptySeries)
            else {"spinc": rep.to_json_obj(), "zero": True, "note": str(res)}
            for rep, res in results
        ]
        _emit(
            _envelope("graph", {"file": args.file, "order": str(order)}, payload, order),
            out,
        )
        return 0
    for rep, res in results:
        label = f"class {rep.class_index} (rep {list(rep.vector)})"
        if isinstance(res, EmptySeries):
            print(f"{label}: zhat = 0 ({res})", file=out)
        else:
            print(f"{label}: delta = {res.delta}", file=out)
            print(f"{label}: zhat = q^({res.delta}) * ({res.tail.text()})", file=out)
            if res.eta_pow2:
                print(f"{label}: eta = {res.eta_pow2} (coefficients in Z/2^eta)", file=out)
    return 0


def _cmd_delta(args, out) -> int:
    with open(args.file, encoding="utf-8") as fh:
        graph = parse_plumb(fh.read())
    reps = _spinc_selection(graph, args)
    results = []
    for rep in reps:
        try:
            results.append((rep, delta_a(graph, rep, allow_weakly=args.experimental_weakly)))
        except EmptySeries:
            results.append((rep, None))
    if args.format == "json":
        payload = [
            {"spinc": rep.to_json_obj(), "delta": None if d is None else str(d)}
            for rep, d in results
        ]
        _emit(_envelope("delta", {"file": args.file}, payload, None), out)
        return 0
    for rep, d in results:
        val = "undefined (zero series)" if d is None else str(d)
        print(f"class {rep.class_index}: delta = {val}", file=out)
    return 0


def _read_triples(path: str) -> list[tuple[int, int, int]]:
    triples = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 3:
                raise ZhatError(f"bad triple line {line!r}")
            try:
                triples.append(tuple(int(x) for x in parts))
            except ValueError as exc:
                raise ZhatError(f"bad triple line {line!r}") from exc
    return triples


def _cmd_table(args, out) -> int:
    table_id = {"batch": "brieskorn-batch"}.get(args.table_id, args.table_id)
    triples = _read_triples(args.triples_file) if args.triples_file else None
    try:
        rows = generate_table(table_id, pmax=args.pmax, triples=triples)
    except ValueError as exc:
        raise ZhatError(str(exc)) from exc
    if args.format == "json":
        _emit(
            _envelope("table", {"id": table_id}, [r.to_json_obj() for r in rows], None),
            out,
        )
    elif args.format == "csv":
        out.write(rows_to_csv(rows))
    else:
        for r in rows:
            d = "" if r.d_value is None else f"  d = {r.d_value}"
            flag = "ok" if r.mod1_check else "MOD-1 FAILURE"
            print(
                f"Sigma({r.triple[0]},{r.triple[1]},{r.triple[2]}): delta0 = {r.delta0}{d}  "
                f"series = {r.series_prefix.text(ellipsis=True)}  [{flag}]",
                file=out,
            )
    return 0


def _cmd_check(args, out) -> int:
    from .checks import run_invariant_suite

    order = _parse_order(args.order)
    results = run_invariant_suite(args.b1, args.b2, args.b3, order=order)
    failed = [name for name, ok, _ in results if not ok]
    if args.format == "json":
        _emit(
            _envelope(
                "check",
                {"triple": [args.b1, args.b2, args.b3], "order": str(order)},
                [{"check": name, "pass": ok, "detail": detail} for name, ok, detail in results],
                order,
            ),
            out,
        )
    else:
        for name, ok, detail in results:
            print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}", file=out)
    return 1 if failed else 0


def _cmd_report(args, out) -> int:
    rep = counterexample_report(order=int(args.order))
    sharp = sharpness_analysis()
    if args.format == "json":
        _emit(_envelope("report", {}, {"counterexample": rep, "sharpness": sharp}, None), out)
        return 0
    for row in rep["manifolds"]:
        print(f"{row['name']}: delta0 = {row['delta0']}   {row['series_text']}", file=out)
        print(f"  homology cobordant to S3: {row['homology_cobordant_to_s3']} ({row['cobordism_status']})", file=out)
    print(f"pairwise delta0 differences integral: {rep['pairwise_delta_differences_integer']}", file=out)
    print(f"common delta0 mod 1: {rep['delta0_mod_1_common_value']}", file=out)
    print(rep["conclusion"], file=out)
    print(f"sharpness: offsets {sharp['offsets']}, x candidates {sharp['admissible_x_from_plumbed_examples']}, final x = {sharp['x']}", file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zhat", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=f"zhat {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, order_default=str(DEFAULT_ORDER), formats=("text", "json")):
        p.add_argument("--order", default=order_default, help="tail truncation order (exponent offset above delta)")
        p.add_argument("--format", choices=formats, default="text")

    p = sub.add_parser("brieskorn", help="closed-form invariants of Sigma(b1,b2,b3)")
    p.add_argument("b1", type=int)
    p.add_argument("b2", type=int)
    p.add_argument("b3", type=int)
    p.add_argument("--seifert", help="override Seifert data as b,a1,a2,a3")
    common(p)
    p.set_defaults(func=_cmd_brieskorn)

    p = sub.add_parser("graph", help="series from a PLUMB v1 file")
    p.add_argument("file")
    p.add_argument("--spinc", type=int, default=0, help="spin-c class index (default 0)")
    p.add_argument("--all", action="store_true", help="every spin-c class")
    p.add_argument("--experimental-weakly", action="store_true", help="accept weakly negative definite input")
    common(p)
    p.set_defaults(func=_cmd_graph)

    p = sub.add_parser("delta", help="leading exponents from a PLUMB v1 file")
    p.add_argument("file")
    p.add_argument("--spinc", type=int, default=0)
    p.add_argument("--all", action="store_true")
    p.add_argument("--experimental-weakly", action="store_true")
    common(p)
    p.set_defaults(func=_cmd_delta)

    p = sub.add_parser("table", help="recompute a reference table")
    p.add_argument("table_id", choices=("d-family", "batch", "brieskorn-batch", "hom-cob-family"))
    p.add_argument("triples_file", nargs="?", help="batch input: one 'b1 b2 b3' per line")
    p.add_argument("--pmax", type=int, default=6)
    common(p, formats=("text", "json", "csv"))
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("check", help="invariant suite for one triple")
    p.add_argument("b1", type=int)
    p.add_argument("b2", type=int)
    p.add_argument("b3", type=int)
    common(p, order_default="50")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("report", help="homology cobordism counterexample report")
    common(p, order_default="100")
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, sys.stdout)
    except ZhatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
