"""Classed bipartite graphs of the composite system and matchings on them.

Left nodes are the primed copies of the composite states, identified by their
global index. Right nodes are states, inputs and (optionally) condensed SCC
nodes. Interconnection (I) edges form a complete multipartite pattern between
distinct subsystems and are never stored; they are generated on demand.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .errors import Infeasible
from .graphs import EdgeClass, InaccessibleSccSet, Node, input_node, state_node
from .systems import CompositeSpec

COST = {EdgeClass.U: 0, EdgeClass.X: 1, EdgeClass.N: 2, EdgeClass.I: 3}
ALL_CLASSES = frozenset(EdgeClass)
_KIND_ORDER = {"x": 0, "u": 1, "N": 2}


def right_key(node: Node) -> tuple[int, int]:
    return _KIND_ORDER[node.kind], node.index


def pair_class(left: int, right: Node, n_s: int) -> EdgeClass:
    """Class of a bipartite edge as fixed by the composite construction."""
    if right.kind == "u":
        return EdgeClass.U
    if right.kind == "N":
        return EdgeClass.N
    if (left - 1) // n_s == (right.index - 1) // n_s:
        return EdgeClass.X
    return EdgeClass.I


@dataclass(frozen=True)
class ClassedBipartite:
    n_s: int
    k: int
    left: tuple[int, ...]
    right: tuple[Node, ...]
    explicit: frozenset[tuple[int, Node]]

    def subsystem(self, g: int) -> int:
        return (g - 1) // self.n_s + 1

    def edge_class(self, left: int, right: Node) -> Optional[EdgeClass]:
        cls = pair_class(left, right, self.n_s)
        if cls is EdgeClass.I:
            present = left in self._left_set and right in self._right_set
            return cls if present else None
        return cls if (left, right) in self.explicit else None

    @cached_property
    def _left_set(self) -> frozenset[int]:
        return frozenset(self.left)

    @cached_property
    def _right_set(self) -> frozenset[Node]:
        return frozenset(self.right)

    def edge_arrays(self, classes: Iterable[EdgeClass] = ALL_CLASSES):
        """Edges as (left position, right position, cost) integer arrays."""
        classes = frozenset(classes)
        lpos = {v: i for i, v in enumerate(self.left)}
        rpos = {v: j for j, v in enumerate(self.right)}
        rows, cols, costs = [], [], []
        for l, r in self.explicit:
            cls = pair_class(l, r, self.n_s)
            if cls in classes:
                rows.append(lpos[l])
                cols.append(rpos[r])
                costs.append(COST[cls])
        rows = np.asarray(rows, dtype=np.int64)
        cols = np.asarray(cols, dtype=np.int64)
        costs = np.asarray(costs, dtype=np.int64)
        if EdgeClass.I in classes and self.k > 1:
            li, rj = self._i_edge_positions()
            rows = np.concatenate([rows, li])
            cols = np.concatenate([cols, rj])
            costs = np.concatenate([costs, np.full(len(li), COST[EdgeClass.I], dtype=np.int64)])
        return rows, cols, costs

    def _i_edge_positions(self):
        lsub = (np.asarray(self.left, dtype=np.int64) - 1) // self.n_s
        rstate = np.array([j for j, r in enumerate(self.right) if r.kind == "x"], dtype=np.int64)
        rsub = (np.array([self.right[j].index for j in rstate], dtype=np.int64) - 1) // self.n_s
        if len(lsub) == 0 or len(rstate) == 0:
            return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
        li, rk = np.nonzero(lsub[:, None] != rsub[None, :])
        return li, rstate[rk]

    def edges(self, classes: Iterable[EdgeClass] = ALL_CLASSES) -> list[tuple[int, Node, EdgeClass]]:
        rows, cols, _ = self.edge_arrays(classes)
        out = [(self.left[i], self.right[j]) for i, j in zip(rows.tolist(), cols.tolist())]
        out.sort(key=lambda e: (e[0], right_key(e[1])))
        return [(l, r, pair_class(l, r, self.n_s)) for l, r in out]


@dataclass(frozen=True)
class Matching:
    pairs: frozenset[tuple[int, Node]]

    def __post_init__(self):
        pairs = frozenset((int(l), Node(*r)) for l, r in self.pairs)
        lefts = [l for l, _ in pairs]
        rights = [r for _, r in pairs]
        if len(set(lefts)) != len(lefts) or len(set(rights)) != len(rights):
            raise ValueError("matching edges share an endpoint")
        object.__setattr__(self, "pairs", pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def sorted_pairs(self) -> list[tuple[int, Node]]:
        return sorted(self.pairs, key=lambda e: (e[0], right_key(e[1])))

    def left_map(self) -> dict[int, Node]:
        return dict(self.pairs)

    def right_map(self) -> dict[Node, int]:
        return {r: l for l, r in self.pairs}

    def of_class(self, cls: EdgeClass, n_s: int) -> frozenset[tuple[int, Node]]:
        return frozenset(e for e in self.pairs if pair_class(e[0], e[1], n_s) is cls)

    def count(self, cls: EdgeClass, n_s: int) -> int:
        return len(self.of_class(cls, n_s))

    def cost(self, n_s: int) -> int:
        return sum(COST[pair_class(l, r, n_s)] for l, r in self.pairs)

    def is_left_perfect(self, g: ClassedBipartite) -> bool:
        return len(self.pairs) == len(g.left) and all(g.edge_class(l, r) is not None for l, r in self.pairs)


def build_system_bipartite(spec: CompositeSpec, with_scc_nodes: Optional[InaccessibleSccSet] = None) -> ClassedBipartite:
    n_s, n_T = spec.n_s, spec.n_T
    right = [state_node(g) for g in range(1, n_T + 1)] + [input_node(c) for c in range(1, spec.m + 1)]
    explicit: set[tuple[int, Node]] = set()
    for i in range(spec.k):
        off = n_s * i
        for p, q in spec.a_s.stars:
            explicit.add((off + p, state_node(off + q)))
    for r, c in spec.b.stars:
        explicit.add((r, input_node(c)))
    if with_scc_nodes is not None:
        right += [Node("N", h) for h in range(1, with_scc_nodes.q + 1)]
        for v, h in with_scc_nodes.membership().items():
            explicit.add((v, Node("N", h)))
    return ClassedBipartite(n_s, spec.k, tuple(range(1, n_T + 1)), tuple(right), frozenset(explicit))


def max_matching(g: ClassedBipartite, allowed_classes: Iterable[EdgeClass] = ALL_CLASSES) -> Matching:
    """Maximum-cardinality matching using only edges of the allowed classes."""
    rows, cols, _ = g.edge_arrays(allowed_classes)
    if len(rows) == 0:
        return Matching(frozenset())
    graph = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(len(g.left), len(g.right)))
    graph.sum_duplicates()
    graph.sort_indices()
    match = maximum_bipartite_matching(graph, perm_type="column")
    return Matching(frozenset((g.left[i], g.right[j]) for i, j in enumerate(match.tolist()) if j >= 0))


def min_cost_left_perfect_matching(g: ClassedBipartite) -> Matching:
    """Left-saturating matching of minimum total edge cost.

    Raises Infeasible when no matching saturates the left side.
    """
    L, R = len(g.left), len(g.right)
    if L == 0:
        return Matching(frozenset())
    if L > R:
        raise Infeasible(f"{L} left nodes cannot be matched into {R} right nodes")
    rows, cols, costs = g.edge_arrays()
    cost = np.full((L, R), np.inf)
    cost[rows, cols] = costs
    try:
        ri, cj = linear_sum_assignment(cost)
    except ValueError as exc:
        raise Infeasible("no left-perfect matching exists") from exc
    if len(ri) < L or not np.isfinite(cost[ri, cj]).all():
        raise Infeasible("no left-perfect matching exists")
    return Matching(frozenset((g.left[i], g.right[j]) for i, j in zip(ri.tolist(), cj.tolist())))


def difference(g: ClassedBipartite, m: Matching) -> ClassedBipartite:
    """Induced subgraph on the nodes left unmatched by ``m``."""
    used_l = {l for l, _ in m.pairs}
    used_r = {r for _, r in m.pairs}
    return ClassedBipartite(
        g.n_s,
        g.k,
        tuple(v for v in g.left if v not in used_l),
        tuple(v for v in g.right if v not in used_r),
        frozenset((l, r) for l, r in g.explicit if l not in used_l and r not in used_r),
    )
