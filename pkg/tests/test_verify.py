import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from compctrl import CompositeSpec, Interconnection, SparsityPattern, synthesize
from compctrl.systems import SynthesisReport, apply_interconnections, transpose_system
from compctrl.verify import certify, is_structurally_controllable, lower_bound, xu_deficiency
from helpers import feasible_corpus, hub_spec, numeric_controllable, realize, t1_spec

CANONICAL = [(1, 2), (2, 3), (3, 1), (3, 2), (3, 3)]


def pat(n, m, stars):
    return SparsityPattern(n, m, frozenset(stars))


systems = st.tuples(st.integers(1, 5), st.integers(1, 2)).flatmap(
    lambda t: st.tuples(
        st.frozensets(st.tuples(st.integers(1, t[0]), st.integers(1, t[0]))).map(lambda s: pat(t[0], t[0], s)),
        st.frozensets(st.tuples(st.integers(1, t[0]), st.integers(1, t[1]))).map(lambda s: pat(t[0], t[1], s)),
    ))


def test_verifier_examples():
    assert is_structurally_controllable(pat(1, 1, []), pat(1, 1, [(1, 1)])).controllable
    v = is_structurally_controllable(pat(2, 2, []), pat(2, 1, [(1, 1)]))
    assert not v.controllable and v.dilation_deficiency == 1
    assert v.inaccessible_states == {2}
    assert is_structurally_controllable(pat(3, 3, CANONICAL), pat(3, 1, [(3, 1)])).controllable


def test_verifier_witness_is_left_perfect():
    v = is_structurally_controllable(pat(3, 3, CANONICAL), pat(3, 1, [(3, 1)]))
    assert len(v.matching_witness) == 3


def test_verifier_dimension_checks():
    with pytest.raises(ValueError):
        is_structurally_controllable(pat(2, 3, []), pat(2, 1, []))
    with pytest.raises(ValueError):
        is_structurally_controllable(pat(2, 2, []), pat(3, 1, []))


@settings(max_examples=200, deadline=None)
@given(systems, st.integers(0, 2**32 - 1))
def test_verifier_agrees_with_rank(sys_, seed):
    a, b = sys_
    verdict = is_structurally_controllable(a, b).controllable
    rng = np.random.default_rng(seed)
    for _ in range(3):
        assert numeric_controllable(realize(a, rng), realize(b, rng)) == verdict


@settings(max_examples=100, deadline=None)
@given(systems, st.data())
def test_adding_stars_keeps_controllability(sys_, data):
    a, b = sys_
    n = a.n_rows
    extra = data.draw(st.frozensets(st.tuples(st.integers(1, n), st.integers(1, n))))
    if is_structurally_controllable(a, b).controllable:
        assert is_structurally_controllable(pat(n, n, a.stars | extra), b).controllable


def test_duality_through_transpose():
    # (A, C) observable iff (A^T, C^T) controllable; chain x1 -> x2 -> x3 read at x3
    a = pat(3, 3, [(2, 1), (3, 2)])
    at, bt = transpose_system(a, pat(3, 1, [(1, 1)]))
    assert bt.n_rows == 1 and bt.stars == {(1, 1)}
    assert is_structurally_controllable(at, pat(1, 3, [(1, 3)]).transpose()).controllable
    assert not is_structurally_controllable(at, pat(1, 3, [(1, 1)]).transpose()).controllable


def test_lower_bound_examples():
    assert xu_deficiency(hub_spec()) == 11
    assert lower_bound(hub_spec()) == 11
    cyc = CompositeSpec.build(3, 2, [(1, 2), (2, 1)], [(1, 1)])
    assert xu_deficiency(cyc) == 0 and lower_bound(cyc) == 2
    assert lower_bound(CompositeSpec.build(1, 2, [(2, 1)], [(1, 1)])) == 0


def test_certify_accepts_synthesized():
    for spec in feasible_corpus(60, seed=5):
        assert certify(synthesize(spec), spec)


def test_certify_rejects_tampering():
    spec = hub_spec()
    r = synthesize(spec)
    links = sorted(r.interconnections)
    dropped = SynthesisReport(r.q, r.alpha, r.beta, frozenset(links[1:]), r.lower_bound, r.matching_witness)
    assert not certify(dropped, spec)
    have = set(links)
    extra = next(Interconnection((j, p), (i, q)) for i in range(1, 5) for j in range(1, 5) if i != j
                 for p in range(1, 6) for q in range(1, 6)
                 if Interconnection((j, p), (i, q)) not in have)
    padded = SynthesisReport(r.q, r.alpha, r.beta, r.interconnections | {extra}, r.lower_bound, r.matching_witness)
    assert not certify(padded, spec)
    assert not certify(SynthesisReport.infeasible(), spec)


def test_t1_verdicts():
    spec = t1_spec()
    v = is_structurally_controllable(apply_interconnections(spec, []), spec.b)
    assert not v.controllable and v.inaccessible_states == {3, 4}
