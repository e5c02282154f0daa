"""Exhaustive minimum-interconnection search and random instance generation.

The brute-force search carries its own bitmask implementation of Lin's
criterion so it shares no code with the synthesis pipeline it is used to check.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from .systems import CompositeSpec, Interconnection, SparsityPattern, SubsystemTemplate, decode


@dataclass(frozen=True)
class GenParams:
    k: int
    n_s: int
    m: int = 1
    edge_density: float = 0.3
    input_density: float = 0.2
    seed: int = 0
    # column c may only drive subsystem input_subsystems[c]; each such column gets >= 1 star
    input_subsystems: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        if min(self.k, self.n_s, self.m) < 1:
            raise ValueError("sizes must be >= 1")
        for d in (self.edge_density, self.input_density):
            if not 0.0 <= d <= 1.0:
                raise ValueError(f"density {d} outside [0, 1]")
        if self.input_subsystems is not None:
            if len(self.input_subsystems) != self.m:
                raise ValueError("input_subsystems needs one entry per input column")
            if any(not 1 <= s <= self.k for s in self.input_subsystems):
                raise ValueError("input subsystem index out of range")


def random_spec(p: GenParams) -> CompositeSpec:
    rng = np.random.default_rng(p.seed)
    n_s, n_T = p.n_s, p.k * p.n_s
    a = rng.random((n_s, n_s)) < p.edge_density
    b = rng.random((n_T, p.m)) < p.input_density
    if p.input_subsystems is not None:
        for c, sub in enumerate(p.input_subsystems):
            lo, hi = n_s * (sub - 1), n_s * sub
            keep = b[lo:hi, c].copy()
            b[:, c] = False
            b[lo:hi, c] = keep
            if not keep.any():
                b[lo + int(rng.integers(n_s)), c] = True
    a_stars = frozenset((int(r) + 1, int(c) + 1) for r, c in zip(*np.nonzero(a)))
    b_stars = frozenset((int(r) + 1, int(c) + 1) for r, c in zip(*np.nonzero(b)))
    return CompositeSpec(p.k, SubsystemTemplate(n_s, SparsityPattern(n_s, n_s, a_stars)),
                         SparsityPattern(n_T, p.m, b_stars))


class _BitChecker:
    """Lin's criterion on a composite with a few extra edges, using integer bitmasks."""

    def __init__(self, spec: CompositeSpec):
        n, n_s = spec.n_T, spec.n_s
        self.n = n
        self.out = [0] * n
        self.inn = [0] * n
        for i in range(spec.k):
            off = n_s * i
            for r, c in spec.a_s.stars:
                self.out[off + c - 1] |= 1 << (off + r - 1)
                self.inn[off + r - 1] |= 1 << (off + c - 1)
        self.seed = 0
        for r, c in spec.b.stars:
            self.seed |= 1 << (r - 1)
            self.inn[r - 1] |= 1 << (n + c - 1)
        self.full = (1 << n) - 1

    def __call__(self, edges: Sequence[tuple[int, int]]) -> bool:
        """``edges`` are 0-based (source, target) state pairs."""
        out = self.out[:]
        inn = self.inn[:]
        for s, t in edges:
            out[s] |= 1 << t
            inn[t] |= 1 << s
        reach = self.seed
        frontier = reach
        while frontier:
            new = 0
            x = frontier
            while x:
                low = x & -x
                new |= out[low.bit_length() - 1]
                x ^= low
            frontier = new & ~reach
            reach |= new
        if reach != self.full:
            return False
        owner: dict[int, int] = {}

        def augment(v: int, seen: list[int]) -> bool:
            cand = inn[v] & ~seen[0]
            while cand:
                low = cand & -cand
                cand ^= low
                seen[0] |= low
                w = low.bit_length() - 1
                if w not in owner or augment(owner[w], seen):
                    owner[w] = v
                    return True
            return False

        for v in range(self.n):
            if not augment(v, [0]):
                return False
        return True


def candidate_links(spec: CompositeSpec) -> list[tuple[int, int]]:
    """All possible interconnections as 0-based (target, source), lexicographic."""
    n, n_s = spec.n_T, spec.n_s
    return [(t, s) for t in range(n) for s in range(n) if t // n_s != s // n_s]


def brute_force_minimum(spec: CompositeSpec, cap: int) -> Optional[tuple[int, frozenset[Interconnection]]]:
    """Smallest interconnection set (size <= cap) giving structural controllability, or None.

    Subsets are tried by increasing size, lexicographically within a size;
    the first controllable one is returned.
    """
    check = _BitChecker(spec)
    cands = candidate_links(spec)
    for size in range(cap + 1):
        for subset in combinations(cands, size):
            if check([(s, t) for t, s in subset]):
                links = frozenset(Interconnection(decode(t + 1, spec.n_s), decode(s + 1, spec.n_s)) for t, s in subset)
                return size, links
    return None


def controllable_with(spec: CompositeSpec, links) -> bool:
    """Oracle-side check of one interconnection set."""
    check = _BitChecker(spec)
    return check([(spec.g(l.source) - 1, spec.g(l.target) - 1) for l in links])
