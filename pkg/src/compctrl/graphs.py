"""State/input digraphs, strongly connected components and accessibility."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Hashable, Iterable, NamedTuple, Sequence

from .systems import CompositeSpec, Interconnection, SparsityPattern, StateId, decode


class EdgeClass(str, Enum):
    U = "U"
    X = "X"
    N = "N"
    I = "I"


class Node(NamedTuple):
    """``kind`` is ``"x"`` (state, global index), ``"u"`` (input) or ``"N"`` (condensed SCC)."""

    kind: str
    index: int

    def __str__(self):
        return f"{self.kind}{self.index}"


def state_node(g: int) -> Node:
    return Node("x", g)


def input_node(c: int) -> Node:
    return Node("u", c)


@dataclass(frozen=True)
class LayeredDigraph:
    n_s: int
    k: int
    m: int
    edges: frozenset[tuple[Node, Node, EdgeClass]]

    @property
    def n_T(self) -> int:
        return self.n_s * self.k

    @property
    def state_nodes(self) -> list[StateId]:
        return [decode(g, self.n_s) for g in range(1, self.n_T + 1)]

    @property
    def input_nodes(self) -> list[int]:
        return list(range(1, self.m + 1))

    def successors(self) -> dict[Node, list[Node]]:
        succ: dict[Node, list[Node]] = {}
        for src, dst, _ in sorted(self.edges):
            succ.setdefault(src, []).append(dst)
        return succ

    def edges_of(self, cls: EdgeClass) -> list[tuple[Node, Node]]:
        return sorted((s, d) for s, d, c in self.edges if c is cls)


@dataclass(frozen=True)
class SccPartition:
    components: tuple[frozenset[int], ...]
    condensation_edges: frozenset[tuple[int, int]]
    non_top_linked: tuple[bool, ...]

    def component_of(self) -> dict[int, int]:
        return {v: i for i, comp in enumerate(self.components) for v in comp}


@dataclass(frozen=True)
class InaccessibleSccSet:
    """Non-top-linked subsystem SCCs (global state indices) unreachable without interconnections."""

    sccs: tuple[frozenset[int], ...]

    @property
    def q(self) -> int:
        return len(self.sccs)

    def __len__(self):
        return len(self.sccs)

    def membership(self) -> dict[int, int]:
        """Global state index -> 1-based SCC number."""
        return {v: h for h, scc in enumerate(self.sccs, start=1) for v in scc}


def _link_edges(spec: CompositeSpec, links) -> Iterable[tuple[int, int]]:
    """Yield (source g, target g) for the chosen interconnection set."""
    n_s, n_T = spec.n_s, spec.n_T
    if links is None or links == "none":
        return
    if links == "all":
        for t in range(1, n_T + 1):
            for s in range(1, n_T + 1):
                if (t - 1) // n_s != (s - 1) // n_s:
                    yield s, t
        return
    for link in links:
        if not isinstance(link, Interconnection):
            link = Interconnection(*link)
        yield spec.g(link.source), spec.g(link.target)


def build_digraph(spec: CompositeSpec, links="none") -> LayeredDigraph:
    """Composite system digraph; ``links`` is ``"none"``, ``"all"`` or a set of interconnections."""
    n_s = spec.n_s
    edges: set[tuple[Node, Node, EdgeClass]] = set()
    for i in range(spec.k):
        off = n_s * i
        for r, c in spec.a_s.stars:
            edges.add((state_node(off + c), state_node(off + r), EdgeClass.X))
    for r, c in spec.b.stars:
        edges.add((input_node(c), state_node(r), EdgeClass.U))
    for s, t in _link_edges(spec, links):
        edges.add((state_node(s), state_node(t), EdgeClass.I))
    return LayeredDigraph(n_s, spec.k, spec.m, frozenset(edges))


def tarjan(nodes: Sequence[Hashable], successors: Callable[[Hashable], Iterable[Hashable]]) -> list[list]:
    """Strongly connected components, iterative Tarjan (no recursion limit)."""
    index: dict = {}
    low: dict = {}
    on_stack: set = set()
    stack: list = []
    out: list[list] = []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(successors(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(successors(w))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                out.append(comp)
    return out


def scc_partition(n: int, succ: dict[int, list[int]]) -> SccPartition:
    """SCCs of a digraph on states ``1..n`` given integer successor lists."""
    comps = tarjan(range(1, n + 1), lambda v: succ.get(v, ()))
    comps = sorted((frozenset(c) for c in comps), key=min)
    where = {v: i for i, c in enumerate(comps) for v in c}
    cond = {(where[v], where[w]) for v, ws in succ.items() for w in ws if where[v] != where[w]}
    has_in = {j for _, j in cond}
    return SccPartition(tuple(comps), frozenset(cond), tuple(i not in has_in for i in range(len(comps))))


def strongly_connected_components(g: LayeredDigraph) -> SccPartition:
    """SCCs over state nodes (state-to-state edges only), ordered by smallest global index."""
    succ: dict[int, list[int]] = {}
    for src, dst, _ in g.edges:
        if src.kind == "x" and dst.kind == "x":
            succ.setdefault(src.index, []).append(dst.index)
    for ws in succ.values():
        ws.sort()
    return scc_partition(g.n_T, succ)


def reachable(succ: dict, sources: Iterable) -> set:
    seen = set(sources)
    queue = deque(seen)
    while queue:
        v = queue.popleft()
        for w in succ.get(v, ()):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def accessible_globals(g: LayeredDigraph) -> set[int]:
    succ = g.successors()
    inputs = [input_node(c) for c in range(1, g.m + 1)]
    return {v.index for v in reachable(succ, inputs) if v.kind == "x"}


def accessible_states(g: LayeredDigraph) -> frozenset[StateId]:
    return frozenset(decode(v, g.n_s) for v in accessible_globals(g))


def template_sccs(a_s: SparsityPattern) -> SccPartition:
    """SCC partition of one subsystem's state digraph (local indices)."""
    succ: dict[int, list[int]] = {}
    for r, c in sorted(a_s.stars):
        if r != c:
            succ.setdefault(c, []).append(r)
    return scc_partition(a_s.n_rows, succ)


def inaccessible_nontop_sccs(spec: CompositeSpec) -> InaccessibleSccSet:
    local = template_sccs(spec.a_s)
    roots = [c for c, top in zip(local.components, local.non_top_linked) if top]
    acc = accessible_globals(build_digraph(spec, "none"))
    n_s = spec.n_s
    out = []
    for i in range(spec.k):
        for comp in roots:
            glob = frozenset(n_s * i + v for v in comp)
            if not glob & acc:
                out.append(glob)
    return InaccessibleSccSet(tuple(out))
