"""Shared instances and corpora for the test suite."""
from __future__ import annotations

import numpy as np

from compctrl import CompositeSpec, GenParams, random_spec

DENSITIES = [round(0.1 * i, 1) for i in range(1, 10)]

# subsystem digraph: x1<->x2, x2<->x3, x4->x2, x2->x5; input into x^1_1
HUB_AS = [(2, 1), (1, 2), (3, 2), (2, 3), (2, 4), (5, 2)]


def hub_spec() -> CompositeSpec:
    return CompositeSpec.build(4, 5, HUB_AS, [(1, 1)])


def t1_spec() -> CompositeSpec:
    """Two copies of the chain x1 -> x2, input into x^1_1."""
    return CompositeSpec.build(2, 2, [(2, 1)], [(1, 1)])


def g(i: int, p: int, n_s: int = 5) -> int:
    return n_s * (i - 1) + p


def feasible_corpus(count: int, *, m: int = 1, k_range=(2, 5), ns_range=(1, 6), seed: int = 0):
    """Random specs with at least one input star (feasible for k >= 2).

    With m=2 the two input columns drive two distinct subsystems.
    """
    rng = np.random.default_rng(seed)
    out = []
    draw = 0
    while len(out) < count:
        draw += 1
        k = int(rng.integers(k_range[0], k_range[1] + 1))
        n_s = int(rng.integers(ns_range[0], ns_range[1] + 1))
        subs = None
        if m == 2:
            subs = tuple(int(s) + 1 for s in rng.choice(k, size=2, replace=False))
        p = GenParams(k, n_s, m, float(rng.choice(DENSITIES)), float(rng.choice(DENSITIES)),
                      seed=int(rng.integers(2**31)), input_subsystems=subs)
        spec = random_spec(p)
        if spec.b.stars:
            out.append(spec)
    return out


def numeric_controllable(a: np.ndarray, b: np.ndarray, tol: float = 1e-8) -> bool:
    """Kalman rank test with a relative singular-value threshold."""
    n = a.shape[0]
    blocks = [b]
    for _ in range(n - 1):
        blocks.append(a @ blocks[-1])
    ctrb = np.hstack(blocks)
    s = np.linalg.svd(ctrb, compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return False
    return int((s > tol * s[0]).sum()) == n


def realize(pattern, rng) -> np.ndarray:
    dense = pattern.to_dense().astype(float)
    return dense * rng.uniform(0.5, 1.5, size=dense.shape)
