"""Command-line entry point.

Exit codes: 0 on success, 1 on invalid input or a failed check, 2 when a
size or search budget is exceeded.  Each run writes a manifest (command,
parameters, input hashes, outputs, version, wall time) to ``--manifest``,
else next to the primary output, else to standard error.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path
from typing import Optional

from . import __version__, io
from .complexes import dual_graph, honeycomb, iterated_subdivision
from .errors import BudgetExceeded, ResourceError, StructuralViolation, ValidationError
from .exact import exact_tww
from .grids import GridSpec, contract_grid, fold_grid, grid_bound, grid_graph, red_grid_bound
from .lower_bound import (RegularGraphSpec, is_pseudomanifold, random_regular_graph,
                          thickening_triangulation, verify_claim_dual)
from .pipeline import run_pipeline
from .trigraph import Trigraph, apply_sequence

log = logging.getLogger("twwtop")


class UsageError(ValidationError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _emit(data) -> None:
    sys.stdout.write(io.dumps(data))


def cmd_build_honeycomb(args, m):
    x = honeycomb(args.dim, args.size)
    io.write_json(args.out, io.complex_to_dict(x))
    m.outputs.append(args.out)
    return 0


def cmd_subdivide(args, m):
    m.add_input(args.input)
    x = io.read_complex(args.input)
    y = iterated_subdivision(x, args.iterations, max_dim=args.max_dim)
    io.write_json(args.out, io.complex_to_dict(y))
    m.outputs.append(args.out)
    return 0


def cmd_dual(args, m):
    m.add_input(args.input)
    x = io.read_complex(args.input)
    dual = dual_graph(x, args.skeleton)
    io.write_json(args.out, io.trigraph_to_dict(dual.graph))
    m.outputs.append(args.out)
    return 0


def cmd_pipeline(args, m):
    run = run_pipeline(args.dim, args.size, order=args.order)
    report = run.report
    io.write_json(args.report, report.to_dict(with_timings=args.timings))
    m.outputs.append(args.report)
    m.extra["timings"] = report.timings
    if args.emit_sequence:
        io.write_json(args.emit_sequence, io.sequence_to_dict(run.sequence))
        m.outputs.append(args.emit_sequence)
    if args.emit_dot:
        out = Path(args.emit_dot)
        out.mkdir(parents=True, exist_ok=True)
        for name, g in (("G", run.g), ("G_star", run.g_star)):
            path = out / f"{name}.dot"
            path.write_text(io.to_dot(g, name), encoding="utf-8")
            m.outputs.append(str(path))
    violations = report.family_stats["violations"]
    for v in violations:
        log.warning("estimate not met: %s", v)
    return 1 if args.strict and violations else 0


def cmd_contract_grid(args, m):
    spec = GridSpec(args.size, args.dim, args.diagonals, args.red)
    if args.diagonals or args.red:
        seq = fold_grid(spec)
    else:
        seq = contract_grid(spec)
    report = apply_sequence(grid_graph(spec), seq)
    io.write_json(args.out, io.sequence_to_dict(seq))
    m.outputs.append(args.out)
    bound = red_grid_bound(args.dim) if args.diagonals and args.red else grid_bound(args.dim)
    _emit({"width": report.width, "steps": len(seq), "bound": bound})
    return 0


def cmd_exact(args, m):
    m.add_input(args.input)
    g = io.read_trigraph(args.input)
    try:
        result = exact_tww(g, upper_hint=args.upper, max_nodes=args.budget_nodes,
                           max_seconds=args.budget_secs, max_vertices=args.max_vertices)
    except BudgetExceeded as exc:
        m.extra["upper_bound"] = exc.upper_bound
        m.extra["nodes_explored"] = exc.nodes_explored
        raise
    m.extra["solve_time"] = result.time
    data = io.solve_result_to_dict(result)
    if args.out:
        io.write_json(args.out, data)
        m.outputs.append(args.out)
    else:
        _emit(data)
    return 0


def cmd_lowerbound(args, m):
    g = random_regular_graph(RegularGraphSpec(args.dim + 1, args.nodes, args.seed))
    t = thickening_triangulation(g, args.dim)
    dual = dual_graph(t, args.dim)
    io.write_json(args.out, io.complex_to_dict(t))
    dual_path = f"{args.out}.dual.json"
    io.write_json(dual_path, io.trigraph_to_dict(dual.graph))
    m.outputs += [args.out, dual_path]
    try:
        ok, mapping = verify_claim_dual(t, g, args.dim)
        error = None
    except StructuralViolation as exc:
        ok, mapping, error = False, {}, str(exc)
    verdict = {
        "verified": ok,
        "error": error,
        "graph": io.trigraph_to_dict(g),
        "top_simplices": len(t.cells_of_dim(args.dim)),
        "dual_vertices": len(dual.graph),
        "dual_edges": len(dual.graph.black),
        "pseudomanifold": is_pseudomanifold(t),
    }
    m.extra["verified"] = ok
    _emit(verdict)
    return 0 if ok else 1


def cmd_verify_sequence(args, m):
    m.add_input(args.graph)
    m.add_input(args.sequence)
    g = io.read_trigraph(args.graph)
    seq = io.read_sequence(args.sequence)
    report = apply_sequence(g, seq)
    _emit(io.width_report_to_dict(report))
    if not report.valid:
        log.error("invalid sequence: %s", report.error)
        return 1
    if not report.full:
        log.error("sequence stops with %d vertices left", report.remaining_vertices)
        return 1
    return 0


def cmd_export_dot(args, m):
    m.add_input(args.input)
    data = io.read_json(args.input)
    if isinstance(data, dict) and "kind" in data:
        x = io.complex_from_dict(data)
        g: Trigraph = dual_graph(x, x.dim).graph
    else:
        g = io.trigraph_from_dict(data)
    Path(args.out).write_text(io.to_dot(g), encoding="utf-8")
    m.outputs.append(args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="twwtop", description="Twin-width of dual graphs of triangulations.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--manifest", help="where to write the run manifest")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("build-honeycomb", help="cubical honeycomb of [1,N]^D")
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--size", type=int, required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_build_honeycomb)

    s = sub.add_parser("subdivide", help="iterated barycentric subdivision")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--iterations", type=int, default=1)
    s.add_argument("--max-dim", type=int, help="only build cells up to this dimension")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_subdivide)

    s = sub.add_parser("dual", help="dual graph of the K-cells")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--skeleton", type=int, required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_dual)

    s = sub.add_parser("pipeline", help="contract G_{D,N} in two epochs")
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--size", type=int, required=True)
    s.add_argument("--report", required=True)
    s.add_argument("--emit-sequence")
    s.add_argument("--emit-dot", metavar="DIR")
    s.add_argument("--timings", action="store_true", help="include timings in the report")
    s.add_argument("--order", choices=("lex", "reverse"), default="lex")
    s.add_argument("--strict", action="store_true",
                   help="exit 1 when a size or incidence estimate is not met")
    s.set_defaults(func=cmd_pipeline)

    s = sub.add_parser("contract-grid", help="slice-folding sequence for a grid")
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--size", type=int, required=True)
    s.add_argument("--diagonals", action="store_true")
    s.add_argument("--red", action="store_true")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_contract_grid)

    s = sub.add_parser("exact", help="exact twin-width of a small trigraph")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--upper", type=int)
    s.add_argument("--budget-nodes", type=int, default=10_000_000)
    s.add_argument("--budget-secs", type=float, default=60.0)
    s.add_argument("--max-vertices", type=int, default=12)
    s.add_argument("--out")
    s.set_defaults(func=cmd_exact)

    s = sub.add_parser("lowerbound", help="thickening triangulation of a random regular graph")
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--nodes", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_lowerbound)

    s = sub.add_parser("verify-sequence", help="replay a sequence and report its width")
    s.add_argument("--graph", required=True)
    s.add_argument("--sequence", required=True)
    s.set_defaults(func=cmd_verify_sequence)

    s = sub.add_parser("export-dot", help="trigraph (or a complex's dual graph) as DOT")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_export_dot)
    return p


def _primary_output(args) -> Optional[str]:
    return getattr(args, "out", None) or getattr(args, "report", None)


def main(argv: Optional[list[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    params = {k: v for k, v in vars(args).items() if k not in ("func", "manifest", "verbose", "command")}
    manifest = io.RunManifest(args.command, params, version=__version__)
    start = time.perf_counter()
    try:
        code = args.func(args, manifest)
    except (ValidationError, StructuralViolation) as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = 1
    except ResourceError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        code = 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = 1
    manifest.wall_time = time.perf_counter() - start
    manifest.exit_code = code
    target = io.manifest_path(args.manifest, _primary_output(args))
    text = io.dumps(manifest.to_dict())
    try:
        if target is None:
            sys.stderr.write(text)
        else:
            target.write_text(text, encoding="utf-8")
    except OSError as exc:
        print(f"cannot write manifest: {exc}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
