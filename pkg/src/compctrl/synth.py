"""Minimum interconnection synthesis for structurally identical subsystems.

Pipeline: an optimum matching on the bipartite graph augmented with condensed
inaccessible root SCCs fixes how many interconnections are forced by the
matching condition alone (beta) versus shared with accessibility (alpha). The
SCC edges are then traded for interconnection edges, the resulting matching is
rewired so those interconnections actually reach their SCCs, and any root SCC
still unreachable gets one extra edge.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .errors import Infeasible, InternalConsistencyError
from .graphs import EdgeClass, InaccessibleSccSet, Node, inaccessible_nontop_sccs, input_node, reachable, state_node
from .matching import (
    ClassedBipartite,
    Matching,
    build_system_bipartite,
    difference,
    max_matching,
    min_cost_left_perfect_matching,
    pair_class,
)
from .systems import CompositeSpec, Interconnection, SynthesisReport, apply_interconnections, decode
from .verify import is_structurally_controllable, lower_bound

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Swap:
    broken: tuple[int, Node]
    made: tuple[int, Node]
    newly_accessible_sccs: tuple[int, ...]


@dataclass
class RewireTrace:
    swaps: list[Swap] = field(default_factory=list)

    def __len__(self):
        return len(self.swaps)


def extract_alpha_beta(mstar: Matching, n_s: int) -> tuple[int, int]:
    return mstar.count(EdgeClass.N, n_s), mstar.count(EdgeClass.I, n_s)


def build_mtilde(mstar: Matching, sysbp: ClassedBipartite) -> Matching:
    """Keep the intra-subsystem and input edges of ``mstar``; complete with interconnection edges only."""
    n_s = sysbp.n_s
    kept = Matching(frozenset(e for e in mstar.pairs if pair_class(*e, n_s) in (EdgeClass.X, EdgeClass.U)))
    rest = difference(sysbp, kept)
    completion = max_matching(rest, {EdgeClass.I})
    if len(completion) != len(rest.left):
        raise InternalConsistencyError(
            f"interconnection-only completion covers {len(completion)} of {len(rest.left)} left nodes")
    return Matching(kept.pairs | completion.pairs)


class _Accessibility:
    """Reachability in the digraph of intra-subsystem edges, input edges and chosen interconnections."""

    def __init__(self, spec: CompositeSpec):
        self.n_s = spec.n_s
        self.base: dict[Node, list[Node]] = {}
        for i in range(spec.k):
            off = spec.n_s * i
            for r, c in spec.a_s.stars:
                self.base.setdefault(state_node(off + c), []).append(state_node(off + r))
        for r, c in spec.b.stars:
            self.base.setdefault(input_node(c), []).append(state_node(r))
        self.inputs = [input_node(c) for c in range(1, spec.m + 1)]

    def __call__(self, interconnections) -> set[int]:
        """``interconnections`` are (source g, target g) pairs."""
        succ = {v: list(ws) for v, ws in self.base.items()}
        for s, t in interconnections:
            succ.setdefault(state_node(s), []).append(state_node(t))
        return {v.index for v in reachable(succ, self.inputs) if v.kind == "x"}


def _matched_links(pairs: dict[int, Node], n_s: int) -> list[tuple[int, int]]:
    """Interconnection edges of a matching as (source g, target g)."""
    return [(r.index, l) for l, r in pairs.items() if pair_class(l, r, n_s) is EdgeClass.I]


def _sub(g: int, n_s: int) -> int:
    return (g - 1) // n_s


def unmatched_accessible(pairs: dict[int, Node], acc: set[int]) -> list[int]:
    matched = {r.index for r in pairs.values() if r.kind == "x"}
    return sorted(g for g in acc if g not in matched)


def rewire_for_accessibility(mtilde: Matching, spec: CompositeSpec, nset: InaccessibleSccSet):
    """Reroute interconnection edges of ``mtilde`` so every root SCC they enter becomes accessible.

    Returns the rewired matching and the swap trace. The number of
    interconnection edges never changes.
    """
    n_s = spec.n_s
    access = _Accessibility(spec)
    member = nset.membership()
    pairs = mtilde.left_map()
    trace = RewireTrace()
    acc = access(_matched_links(pairs, n_s))

    while True:
        pending = sorted(l for l, r in pairs.items()
                         if l in member and l not in acc and pair_class(l, r, n_s) is EdgeClass.I)
        if not pending:
            break
        free = unmatched_accessible(pairs, acc)
        if not free:
            raise InternalConsistencyError("no unmatched accessible state")
        hub = free[0]
        l = pending[0]
        if _sub(l, n_s) != _sub(hub, n_s):
            head = l
        else:
            head = _cycle_entry(pairs, pairs[l].index, n_s)
        broken = (head, pairs[head])
        pairs[head] = state_node(hub)
        before = acc
        acc = access(_matched_links(pairs, n_s))
        if l not in acc:
            raise InternalConsistencyError(f"swap at left node {head} did not reach state {l}")
        newly = tuple(h for h, scc in enumerate(nset.sccs, start=1)
                      if min(scc) in acc and min(scc) not in before)
        trace.swaps.append(Swap(broken, (head, state_node(hub)), newly))
    return Matching(frozenset(pairs.items())), trace


def _cycle_entry(pairs: dict[int, Node], start: int, n_s: int) -> int:
    """Walk the matching cycle backwards from ``start`` to the first edge entering its subsystem.

    Returns the head (left node) of that interconnection edge.
    """
    cur = start
    home = _sub(start, n_s)
    for _ in range(len(pairs) + 1):
        r = pairs[cur]
        if r.kind != "x":
            raise InternalConsistencyError(f"state {start} lies on an input stem, not a cycle")
        if _sub(cur, n_s) == home and _sub(r.index, n_s) != home:
            return cur
        cur = r.index
        if cur == start:
            break
    raise InternalConsistencyError(f"no interconnection edge enters subsystem {home + 1} on the cycle of {start}")


def accessibility_completion(mhat: Matching, spec: CompositeSpec, nset: InaccessibleSccSet) -> set[Interconnection]:
    """One extra interconnection into every root SCC still unreachable after rewiring."""
    n_s = spec.n_s
    access = _Accessibility(spec)
    pairs = mhat.left_map()
    links = _matched_links(pairs, n_s)
    acc = access(links)
    free = unmatched_accessible(pairs, acc)
    hub = free[0] if free else None
    added: set[Interconnection] = set()
    while True:
        todo = [scc for scc in nset.sccs if min(scc) not in acc]
        if not todo:
            return added
        for scc in todo:
            target = min(scc)
            home = _sub(target, n_s)
            if hub is not None and _sub(hub, n_s) != home:
                source = hub
            else:
                source = next((g for g in sorted(acc) if _sub(g, n_s) != home), None)
            if source is not None:
                break
        else:
            raise InternalConsistencyError("no accessible state outside the subsystems of the remaining SCCs")
        added.add(Interconnection(decode(target, n_s), decode(source, n_s)))
        links.append((source, target))
        acc = access(links)


def _links_from_matching(m: Matching, n_s: int) -> set[Interconnection]:
    return {Interconnection(decode(l, n_s), decode(r.index, n_s))
            for l, r in m.pairs if pair_class(l, r, n_s) is EdgeClass.I}


def synthesize(spec: CompositeSpec, *, with_trace: bool = False):
    """Minimum-cardinality interconnection set making the composite structurally controllable.

    Raises Infeasible when no interconnection set works. With ``with_trace``
    the rewiring trace and intermediate matchings are returned as well.
    """
    if not spec.b.stars:
        raise Infeasible("input pattern has no stars; no state is accessible")
    if spec.k == 1:
        verdict = is_structurally_controllable(spec.a_s, spec.b)
        if not verdict.controllable:
            raise Infeasible("single subsystem is not structurally controllable and admits no interconnections")
        report = SynthesisReport(0, 0, 0, frozenset(), 0, verdict.matching_witness.pairs)
        return (report, None) if with_trace else report

    n_s = spec.n_s
    nset = inaccessible_nontop_sccs(spec)
    mstar = min_cost_left_perfect_matching(build_system_bipartite(spec, nset))
    alpha, beta = extract_alpha_beta(mstar, n_s)
    sysbp = build_system_bipartite(spec)
    mtilde = build_mtilde(mstar, sysbp)
    mhat, trace = rewire_for_accessibility(mtilde, spec, nset)
    extra = accessibility_completion(mhat, spec, nset)
    links = _links_from_matching(mhat, n_s) | extra
    log.debug("q=%d alpha=%d beta=%d swaps=%d completion=%d", nset.q, alpha, beta, len(trace), len(extra))

    verdict = is_structurally_controllable(apply_interconnections(spec, links), spec.b)
    if not verdict.controllable:
        raise InternalConsistencyError(
            f"synthesized system fails verification: {len(verdict.inaccessible_states)} inaccessible, "
            f"deficiency {verdict.dilation_deficiency}")
    report = SynthesisReport(nset.q, alpha, beta, frozenset(links), lower_bound(spec), mhat.pairs)
    if not with_trace:
        return report
    return report, SynthesisTrace(nset, mstar, mtilde, mhat, trace, frozenset(extra))


@dataclass(frozen=True)
class SynthesisTrace:
    nset: InaccessibleSccSet
    mstar: Matching
    mtilde: Matching
    mhat: Matching
    rewire: RewireTrace
    completion: frozenset[Interconnection]
