import pytest
from hypothesis import given, strategies as st

from compctrl import CompositeSpec, Interconnection, SparsityPattern, StateId, SubsystemTemplate
from compctrl.systems import apply_interconnections, compose_full, decode, global_index, transpose_system


def patterns(max_n=5):
    @st.composite
    def build(draw):
        r = draw(st.integers(1, max_n))
        c = draw(st.integers(1, max_n))
        stars = draw(st.frozensets(st.tuples(st.integers(1, r), st.integers(1, c)), max_size=r * c))
        return SparsityPattern(r, c, stars)
    return build()


def test_pattern_rejects_out_of_range():
    with pytest.raises(ValueError):
        SparsityPattern(2, 2, frozenset({(3, 1)}))
    with pytest.raises(ValueError):
        SparsityPattern(0, 2)


def test_from_dense_and_back():
    p = SparsityPattern.from_dense([[0, 1], [1, 0], [0, 0]])
    assert p.stars == {(1, 2), (2, 1)}
    assert p.to_dense().tolist() == [[False, True], [True, False], [False, False]]


@given(st.integers(1, 20), st.integers(1, 20), st.data())
def test_global_index_bijection(k, n_s, data):
    i = data.draw(st.integers(1, k))
    p = data.draw(st.integers(1, n_s))
    s = StateId(i, p)
    assert decode(global_index(s, n_s), n_s) == s
    assert 1 <= global_index(s, n_s) <= k * n_s


def test_global_index_is_onto():
    k, n_s = 4, 3
    seen = {global_index(StateId(i, p), n_s) for i in range(1, k + 1) for p in range(1, n_s + 1)}
    assert seen == set(range(1, k * n_s + 1))


def test_b_rows_must_match():
    t = SubsystemTemplate(2, SparsityPattern(2, 2))
    with pytest.raises(ValueError):
        CompositeSpec(2, t, SparsityPattern(3, 1))


def test_template_must_be_square():
    with pytest.raises(ValueError):
        SubsystemTemplate(2, SparsityPattern(2, 3))


def test_interconnection_same_subsystem_rejected():
    with pytest.raises(ValueError):
        Interconnection(StateId(1, 1), StateId(1, 2))
    link = Interconnection((2, 1), (1, 2))
    assert isinstance(link.target, StateId)


def test_compose_full_single_subsystem():
    spec = CompositeSpec.build(1, 2, [(2, 1)], [(1, 1)])
    assert compose_full(spec).stars == {(2, 1)}


def test_compose_full_empty_template():
    spec = CompositeSpec.build(2, 1, [], [(1, 1)])
    assert compose_full(spec).stars == {(1, 2), (2, 1)}


def test_compose_full_chain_k2():
    spec = CompositeSpec.build(2, 2, [(2, 1)], [(1, 1)])
    cross = {(r, c) for r in (1, 2) for c in (3, 4)} | {(r, c) for r in (3, 4) for c in (1, 2)}
    assert compose_full(spec).stars == {(2, 1), (4, 3)} | cross


@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_compose_full_star_count(k, n_s, data):
    a = data.draw(st.frozensets(st.tuples(st.integers(1, n_s), st.integers(1, n_s))))
    spec = CompositeSpec.build(k, n_s, a, [(1, 1)])
    assert len(compose_full(spec)) == k * len(a) + n_s * n_s * k * (k - 1)


def test_apply_interconnections_examples():
    spec = CompositeSpec.build(2, 2, [(2, 1)], [(1, 1)])
    assert apply_interconnections(spec, []).stars == {(2, 1), (4, 3)}
    link = Interconnection(StateId(2, 1), StateId(1, 2))
    assert apply_interconnections(spec, [link]).stars == {(2, 1), (4, 3), (3, 2)}
    assert apply_interconnections(spec, [link, link]) == apply_interconnections(spec, [link])


def test_apply_interconnections_range_check():
    spec = CompositeSpec.build(2, 2, [], [(1, 1)])
    with pytest.raises(ValueError):
        apply_interconnections(spec, [Interconnection(StateId(3, 1), StateId(1, 1))])


@given(st.data())
def test_apply_interconnections_monotone(data):
    spec = CompositeSpec.build(3, 2, [(2, 1)], [(1, 1)])
    states = st.tuples(st.integers(1, 3), st.integers(1, 2))
    pairs = data.draw(st.frozensets(st.tuples(states, states).filter(lambda t: t[0][0] != t[1][0])))
    links = [Interconnection(*p) for p in pairs]
    subset = links[: len(links) // 2]
    assert apply_interconnections(spec, subset).stars <= apply_interconnections(spec, links).stars


def test_transpose_examples():
    a = SparsityPattern(2, 2, frozenset({(2, 1)}))
    assert a.transpose().stars == {(1, 2)}
    a = SparsityPattern(3, 3, frozenset({(1, 2), (3, 3)}))
    b = SparsityPattern(3, 1, frozenset({(2, 1)}))
    at, bt = transpose_system(a, b)
    assert at.stars == {(2, 1), (3, 3)}
    assert (bt.n_rows, bt.n_cols, bt.stars) == (1, 3, {(1, 2)})


def test_transpose_system_dimension_mismatch():
    with pytest.raises(ValueError):
        transpose_system(SparsityPattern(2, 2), SparsityPattern(3, 1))


@given(patterns())
def test_transpose_involution(p):
    assert p.transpose().transpose() == p


def test_local_input_lands_in_first_subsystem():
    t = SubsystemTemplate(2, SparsityPattern(2, 2, frozenset({(2, 1)})))
    spec = CompositeSpec.with_local_input(3, t, SparsityPattern(2, 1, frozenset({(2, 1)})))
    assert spec.b.n_rows == 6 and spec.b.stars == {(2, 1)}
