import pytest
from hypothesis import given, settings, strategies as st

from signcons.gen import GAMMA_GRID, GenParams, InvalidParams, generate
from signcons.io import write_instance
from signcons.solver import check_consistency


def test_observed_count_small_gamma():
    assert sum(1 for s in generate(GenParams(alpha=500, gamma=0.01, seed=1)).obs if s) == 5


def test_single_vertex():
    inst = generate(GenParams(alpha=1, beta=0, gamma=0, seed=0))
    assert inst.names == ("v0",) and inst.inputs == {"v0"} and not inst.obs[0]
    assert check_consistency(inst).consistent


def test_edge_count_total_degree():
    inst = generate(GenParams(alpha=200, beta=2.5, seed=4))
    assert inst.m == 250
    assert 2 * inst.m / inst.n == 2.5


def test_edges_override():
    assert generate(GenParams(alpha=30, edges=17, seed=1)).m == 17


def test_isolated_vertices_are_inputs():
    inst = generate(GenParams(alpha=4, beta=0, gamma=0, seed=1))
    assert inst.m == 0 and inst.inputs == {"v0", "v1", "v2", "v3"}


def test_gamma_grid():
    assert GAMMA_GRID == (0.01, 0.02, 0.033, 0.05, 0.1)
    for g in GAMMA_GRID:
        inst = generate(GenParams(alpha=1000, gamma=g, seed=2))
        assert sum(1 for s in inst.obs if s) == int(g * 1000 + 1e-9)


@pytest.mark.parametrize(
    "params",
    [
        GenParams(alpha=0),
        GenParams(alpha=5, beta=-1),
        GenParams(alpha=5, gamma=1.5),
        GenParams(alpha=5, seed=-1),
        GenParams(alpha=1, beta=2.5),
        GenParams(alpha=3, edges=7),
    ],
)
def test_invalid(params):
    with pytest.raises(InvalidParams):
        generate(params)


@settings(max_examples=80, deadline=None)
@given(
    alpha=st.integers(2, 120),
    beta=st.sampled_from([0.0, 1.0, 1.5, 2.5, 3.0]),
    gamma=st.sampled_from([0.0, 0.01, 0.033, 0.1, 0.3, 1.0]),
    seed=st.integers(0, 2**64 - 1),
)
def test_structure(alpha, beta, gamma, seed):
    p = GenParams(alpha=alpha, beta=beta, gamma=gamma, seed=seed)
    if p.edge_count() > alpha * (alpha - 1):
        return
    inst = generate(p)
    assert inst.n == alpha
    assert inst.m == p.edge_count() == int(beta * alpha / 2 + 0.5)
    pairs = [(s, d) for s, d, _ in inst.edges]
    assert len(set(pairs)) == len(pairs)
    assert all(s != d for s, d in pairs)
    assert all(g in (1, -1) for _, _, g in inst.edges)
    assert sum(1 for s in inst.obs if s) == p.observed_count()
    has_pred = {d for _, d in pairs}
    assert inst.inputs == {inst.names[v] for v in range(alpha) if v not in has_pred}
    assert write_instance(generate(p)) == write_instance(inst)


def test_seeds_differ():
    a = write_instance(generate(GenParams(alpha=50, seed=1)))
    b = write_instance(generate(GenParams(alpha=50, seed=2)))
    assert a != b
