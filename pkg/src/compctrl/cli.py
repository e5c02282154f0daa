"""compctrl command line: synthesize, verify, analyze, oracle, gen, export-dot.

Exit codes: 0 ok, 1 unreadable input, 2 infeasible instance, 3 not
controllable, 64 usage error, 65 malformed document.
"""
from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional, Sequence

from . import io as cio
from .errors import Infeasible, InstanceError
from .graphs import build_digraph, inaccessible_nontop_sccs, strongly_connected_components, template_sccs
from .oracle import GenParams, brute_force_minimum, random_spec
from .synth import synthesize
from .systems import SynthesisReport, apply_interconnections, compose_full, decode
from .verify import is_structurally_controllable, lower_bound, xu_deficiency

EXIT_OK, EXIT_IO, EXIT_INFEASIBLE, EXIT_NOT_CONTROLLABLE = 0, 1, 2, 3
EXIT_USAGE, EXIT_PARSE = 64, 65

log = logging.getLogger("compctrl")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(text: str, path: Optional[str]):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _json(doc: dict) -> str:
    return cio._dumps({"version": cio.VERSION, **doc})


def _states(gs, n_s: int) -> list[list[int]]:
    return [list(decode(g, n_s)) for g in sorted(gs)]


def cmd_synthesize(args) -> int:
    spec = cio.parse_instance(_read(args.instance))
    try:
        report = synthesize(spec)
    except Infeasible as exc:
        log.info("infeasible: %s", exc)
        _write(cio.emit_report(SynthesisReport.infeasible()), args.output)
        return EXIT_INFEASIBLE
    _write(cio.emit_report(report), args.output)
    if args.figure:
        from .plotting import plot_composite

        plot_composite(spec, report.interconnections, args.figure)
        log.info("figure written to %s", args.figure)
    return EXIT_OK


def cmd_verify(args) -> int:
    spec = cio.parse_instance(_read(args.instance))
    links = cio.parse_links(_read(args.links)) if args.links else frozenset()
    try:
        a = apply_interconnections(spec, links)
    except ValueError as exc:
        raise InstanceError(str(exc)) from exc
    v = is_structurally_controllable(a, spec.b)
    _write(_json({
        "controllable": v.controllable,
        "interconnections": len(links),
        "inaccessible_states": _states(v.inaccessible_states, spec.n_s),
        "dilation_deficiency": v.dilation_deficiency,
    }), args.output)
    return EXIT_OK if v.controllable else EXIT_NOT_CONTROLLABLE


def cmd_analyze(args) -> int:
    spec = cio.parse_instance(_read(args.instance))
    n_s = spec.n_s
    nset = inaccessible_nontop_sccs(spec)
    tmpl = template_sccs(spec.a_s)
    comp = strongly_connected_components(build_digraph(spec))
    full = is_structurally_controllable(compose_full(spec), spec.b).controllable
    _write(_json({
        "n_T": spec.n_T,
        "q": nset.q,
        "inaccessible_root_sccs": [_states(scc, n_s) for scc in nset.sccs],
        "xu_deficiency": xu_deficiency(spec),
        "lower_bound": lower_bound(spec),
        "template_sccs": [sorted(c) for c in tmpl.components],
        "template_root_sccs": sum(tmpl.non_top_linked),
        "composite_sccs": len(comp.components),
        "feasible": full,
    }), args.output)
    return EXIT_OK


def cmd_oracle(args) -> int:
    spec = cio.parse_instance(_read(args.instance))
    found = brute_force_minimum(spec, args.cap)
    doc = {"cap": args.cap, "found": found is not None}
    if found is not None:
        size, links = found
        doc["size"] = size
        doc["interconnections"] = [[list(l.target), list(l.source)] for l in sorted(links)]
    _write(_json(doc), args.output)
    return EXIT_OK


def cmd_gen(args) -> int:
    try:
        p = GenParams(args.k, args.ns, args.m, args.density, args.input_density, args.seed)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc
    _write(cio.emit_instance(random_spec(p)), args.output)
    return EXIT_OK


def cmd_export_dot(args) -> int:
    spec = cio.parse_instance(_read(args.instance))
    highlight = cio.parse_links(_read(args.highlight)) if args.highlight else None
    _write(cio.export_dot(build_digraph(spec), highlight), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="compctrl", description="Minimum interconnections for structurally identical subsystems.")
    p.add_argument("-v", "--verbose", action="store_true", help="diagnostics on stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cmd(name, fn, help, instance=True):
        sp = sub.add_parser(name, help=help)
        if instance:
            sp.add_argument("instance", help="instance JSON, '-' for stdin")
        sp.add_argument("-o", "--output", help="output path (default stdout)")
        sp.set_defaults(func=fn)
        return sp

    sp = cmd("synthesize", cmd_synthesize, "compute a minimum interconnection set")
    sp.add_argument("--figure", metavar="PATH", help="also render the composed pattern to an image file")
    sp = cmd("verify", cmd_verify, "check structural controllability")
    sp.add_argument("--links", help="report or document with an 'interconnections' list")
    cmd("analyze", cmd_analyze, "root SCCs, matching deficiency and lower bound")
    sp = cmd("oracle", cmd_oracle, "exhaustive minimum search (small instances)")
    sp.add_argument("--cap", type=int, required=True, help="largest subset size to try")
    sp = cmd("gen", cmd_gen, "random instance", instance=False)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--ns", type=int, required=True)
    sp.add_argument("--m", type=int, default=1)
    sp.add_argument("--density", type=float, default=0.3)
    sp.add_argument("--input-density", type=float, default=0.2)
    sp.add_argument("--seed", type=int, required=True)
    sp = cmd("export-dot", cmd_export_dot, "Graphviz rendering of the composite digraph")
    sp.add_argument("--highlight", help="report whose interconnections are drawn in red")
    return p


def run(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"compctrl: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InstanceError as exc:
        print(f"compctrl: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"compctrl: {exc}", file=sys.stderr)
        return EXIT_IO


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
