"""JSON instance/report documents and DOT export.

Wire indices are 1-based. An interconnection is written ``[[i, p], [j, q]]``:
target state p of subsystem i, source state q of subsystem j.
"""
from __future__ import annotations

import json
import warnings
from typing import Iterable, Optional

from .errors import InstanceError
from .graphs import EdgeClass, LayeredDigraph, Node
from .systems import (
    CompositeSpec,
    Interconnection,
    SparsityPattern,
    StateId,
    SubsystemTemplate,
    SynthesisReport,
    decode,
    global_index,
)

VERSION = "1"


def _dumps(doc: dict) -> str:
    """One key per line, compact values; byte-stable for identical input."""
    body = ",\n".join(f"  {json.dumps(k)}: {json.dumps(v, separators=(',', ':'))}" for k, v in doc.items())
    return "{\n" + body + "\n}\n"


def _load(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"malformed JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InstanceError("document must be a JSON object")
    if str(doc.get("version")) != VERSION:
        raise InstanceError(f"unsupported or missing version {doc.get('version')!r}, expected {VERSION!r}")
    return doc


def _posint(doc: dict, key: str) -> int:
    v = doc.get(key)
    if isinstance(v, bool) or not isinstance(v, int) or v < 1:
        raise InstanceError(f"field {key!r} must be a positive integer, got {v!r}")
    return v


def _stars(doc: dict, key: str, n_rows: int, n_cols: int) -> frozenset[tuple[int, int]]:
    raw = doc.get(key)
    if not isinstance(raw, list):
        raise InstanceError(f"field {key!r} must be a list of [row, col] pairs")
    seen: set[tuple[int, int]] = set()
    for item in raw:
        if (not isinstance(item, list) or len(item) != 2
                or not all(isinstance(x, int) and not isinstance(x, bool) for x in item)):
            raise InstanceError(f"{key}: entry {item!r} is not an integer [row, col] pair")
        r, c = item
        if not (1 <= r <= n_rows and 1 <= c <= n_cols):
            raise InstanceError(f"{key}: star [{r}, {c}] outside {n_rows}x{n_cols}")
        if (r, c) in seen:
            warnings.warn(f"{key}: duplicate star [{r}, {c}] ignored", stacklevel=3)
        seen.add((r, c))
    return frozenset(seen)


def parse_instance(text: str) -> CompositeSpec:
    doc = _load(text)
    n_s, k, m = _posint(doc, "n_s"), _posint(doc, "k"), _posint(doc, "m")
    a_s = _stars(doc, "a_s", n_s, n_s)
    b = _stars(doc, "b", k * n_s, m)
    return CompositeSpec(k, SubsystemTemplate(n_s, SparsityPattern(n_s, n_s, a_s)), SparsityPattern(k * n_s, m, b))


def emit_instance(spec: CompositeSpec) -> str:
    return _dumps({
        "version": VERSION,
        "n_s": spec.n_s,
        "k": spec.k,
        "m": spec.m,
        "a_s": [list(s) for s in sorted(spec.a_s.stars)],
        "b": [list(s) for s in sorted(spec.b.stars)],
    })


def _link_to_wire(link: Interconnection) -> list:
    return [list(link.target), list(link.source)]


def _link_from_wire(item) -> Interconnection:
    try:
        (i, p), (j, q) = item
        return Interconnection(StateId(int(i), int(p)), StateId(int(j), int(q)))
    except (TypeError, ValueError) as exc:
        raise InstanceError(f"bad interconnection entry {item!r}: {exc}") from exc


def emit_report(report: SynthesisReport) -> str:
    return _dumps({
        "version": VERSION,
        "feasible": report.feasible,
        "verdict": "controllable" if report.feasible else "infeasible",
        "q": report.q,
        "alpha": report.alpha,
        "beta": report.beta,
        "gamma_d": report.gamma_d,
        "lower_bound": report.lower_bound,
        "size": report.size,
        "interconnections": [_link_to_wire(l) for l in sorted(report.interconnections)],
        "matching_witness": [[l, r[0], r[1]] for l, r in
                             sorted(report.matching_witness, key=lambda e: (e[0], "xuN".index(e[1][0]), e[1][1]))],
    })


def parse_report(text: str) -> SynthesisReport:
    doc = _load(text)
    try:
        witness = frozenset((int(l), Node(str(kind), int(idx))) for l, kind, idx in doc.get("matching_witness", []))
        return SynthesisReport(
            q=int(doc["q"]),
            alpha=int(doc["alpha"]),
            beta=int(doc["beta"]),
            interconnections=frozenset(_link_from_wire(x) for x in doc["interconnections"]),
            lower_bound=int(doc["lower_bound"]),
            matching_witness=witness,
            feasible=bool(doc["feasible"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InstanceError(f"malformed report: {exc}") from exc


def parse_links(text: str) -> frozenset[Interconnection]:
    """Interconnections from a report or from any versioned document with an ``interconnections`` list."""
    doc = _load(text)
    raw = doc.get("interconnections")
    if not isinstance(raw, list):
        raise InstanceError("document has no 'interconnections' list")
    return frozenset(_link_from_wire(x) for x in raw)


def _dot_id(node: Node, n_s: int) -> str:
    if node.kind == "u":
        return f"u{node.index}"
    s = decode(node.index, n_s)
    return f"x{s.subsystem}_{s.state}"


def export_dot(g: LayeredDigraph, highlight: Optional[Iterable[Interconnection]] = None) -> str:
    """DOT rendering: one cluster per subsystem, inputs as boxes, interconnections dashed.

    Highlighted interconnections are drawn red and added if the graph lacks them.
    """
    n_s = g.n_s
    hl = {(global_index(l.source, n_s), global_index(l.target, n_s)) for l in (highlight or ())}
    lines = ["digraph composite {", "  rankdir=LR;", "  node [shape=circle, fontsize=10];"]
    for c in g.input_nodes:
        lines.append(f'  u{c} [shape=box, label="u{c}"];')
    for i in range(1, g.k + 1):
        lines.append(f"  subgraph cluster_{i} {{")
        lines.append(f'    label="S{i}";')
        for p in range(1, n_s + 1):
            lines.append(f'    x{i}_{p} [label="x{p}^{i}"];')
        lines.append("  }")
    drawn = set()
    for src, dst, cls in sorted(g.edges):
        a, b = _dot_id(src, n_s), _dot_id(dst, n_s)
        if cls is EdgeClass.I:
            key = (src.index, dst.index)
            drawn.add(key)
            style = "color=red, penwidth=2" if key in hl else "style=dashed, color=gray50"
            lines.append(f"  {a} -> {b} [{style}];")
        elif cls is EdgeClass.U:
            lines.append(f"  {a} -> {b} [color=blue];")
        else:
            lines.append(f"  {a} -> {b};")
    for s, t in sorted(hl - drawn):
        lines.append(f"  {_dot_id(Node('x', s), n_s)} -> {_dot_id(Node('x', t), n_s)} [color=red, penwidth=2];")
    lines.append("}")
    return "\n".join(lines) + "\n"
