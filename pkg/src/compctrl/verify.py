"""Structural-controllability verdicts (Lin's criterion) and optimality certificates."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .graphs import EdgeClass, Node, inaccessible_nontop_sccs, input_node, reachable, state_node
from .matching import Matching, build_system_bipartite, max_matching
from .systems import CompositeSpec, SparsityPattern, SynthesisReport, apply_interconnections


@dataclass(frozen=True)
class Verdict:
    """``inaccessible_states`` are 1-based row indices of the checked pattern."""

    controllable: bool
    inaccessible_states: frozenset[int]
    dilation_deficiency: int
    matching_witness: Matching


def is_structurally_controllable(a: SparsityPattern, b: SparsityPattern) -> Verdict:
    if not a.is_square:
        raise ValueError(f"state pattern must be square, got {a.n_rows}x{a.n_cols}")
    if b.n_rows != a.n_rows:
        raise ValueError(f"input pattern has {b.n_rows} rows, state pattern has {a.n_rows}")
    n, m = a.n_rows, b.n_cols

    succ: dict[Node, list[Node]] = {}
    for r, c in a.stars:
        succ.setdefault(state_node(c), []).append(state_node(r))
    for r, c in b.stars:
        succ.setdefault(input_node(c), []).append(state_node(r))
    reached = reachable(succ, [input_node(c) for c in range(1, m + 1)])
    inaccessible = frozenset(g for g in range(1, n + 1) if state_node(g) not in reached)

    # left x'_r -> right x_c (column c-1) or u_c (column n+c-1)
    rows = [r - 1 for r, _ in a.stars] + [r - 1 for r, _ in b.stars]
    cols = [c - 1 for _, c in a.stars] + [n + c - 1 for _, c in b.stars]
    pairs: set[tuple[int, Node]] = set()
    if rows:
        graph = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n + m))
        graph.sum_duplicates()
        graph.sort_indices()
        match = maximum_bipartite_matching(graph, perm_type="column")
        for i, j in enumerate(match.tolist()):
            if j >= 0:
                pairs.add((i + 1, state_node(j + 1) if j < n else input_node(j - n + 1)))
    deficiency = n - len(pairs)
    return Verdict(not inaccessible and deficiency == 0, inaccessible, deficiency, Matching(frozenset(pairs)))


def xu_deficiency(spec: CompositeSpec) -> int:
    """Left nodes of the composite bipartite graph that intra-subsystem and input edges cannot cover."""
    mm = max_matching(build_system_bipartite(spec), {EdgeClass.X, EdgeClass.U})
    return spec.n_T - len(mm)


def lower_bound(spec: CompositeSpec) -> int:
    """Interconnections any feasible solution needs.

    Each added edge enters at most one inaccessible root SCC and grows the
    maximum matching by at most one.
    """
    return max(inaccessible_nontop_sccs(spec).q, xu_deficiency(spec))


def certify(report: SynthesisReport, spec: CompositeSpec) -> bool:
    if not report.feasible:
        return False
    verdict = is_structurally_controllable(apply_interconnections(spec, report.interconnections), spec.b)
    if not verdict.controllable:
        return False
    if report.q != inaccessible_nontop_sccs(spec).q:
        return False
    if report.size != report.q + report.beta:
        return False
    return report.size >= lower_bound(spec)
