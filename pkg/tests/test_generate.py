import pytest

from periodic_rigidity.characterize import MINIMALLY_RIGID, theorem2_check
from periodic_rigidity.gain_graph import counting_target
from periodic_rigidity.generate import GenConfig, InfeasibleParameters, generate
from periodic_rigidity.graphfile import format_graph_file
from periodic_rigidity.matroid import edge_sparsity_bound


def test_decomposable_is_rigid():
    inst = generate(GenConfig(2, 3, kind="decomposable", seed=7))
    assert inst.graph.m == counting_target(inst.graph) == 10
    assert theorem2_check(inst.graph).verdict == MINIMALLY_RIGID


def test_violating_reports_planted_set():
    inst = generate(GenConfig(2, 3, kind="violating", seed=7))
    g = inst.graph
    assert len(inst.planted) > edge_sparsity_bound(g, inst.planted)
    rep = theorem2_check(g)
    assert rep.verdict != MINIMALLY_RIGID
    assert set(inst.planted) <= set(rep.violation.edges)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_violating_planted_sets_are_breaches(d):
    for seed in range(30):
        n = 2 + seed % 4
        inst = generate(GenConfig(d, n, kind="violating", seed=seed))
        assert len(inst.planted) > edge_sparsity_bound(inst.graph, inst.planted)
        assert inst.graph.m == counting_target(inst.graph)


def test_same_seed_same_bytes():
    for kind in ("random", "decomposable", "violating"):
        a = format_graph_file(generate(GenConfig(3, 4, kind=kind, seed=11)).graph)
        b = format_graph_file(generate(GenConfig(3, 4, kind=kind, seed=11)).graph)
        assert a == b
    assert generate(GenConfig(3, 4, seed=1)) != generate(GenConfig(3, 4, seed=2))


def test_infeasible_parameters():
    with pytest.raises(InfeasibleParameters):
        generate(GenConfig(2, 1, m=5, kind="decomposable"))
    with pytest.raises(InfeasibleParameters):
        generate(GenConfig(2, 1, kind="violating"))
    with pytest.raises(InfeasibleParameters):
        generate(GenConfig(2, 2, kind="nonsense"))
    with pytest.raises(InfeasibleParameters):
        generate(GenConfig(2, 2, m=-1))


def test_random_respects_m_and_box():
    g = generate(GenConfig(3, 5, m=17, seed=3, box=2)).graph
    assert g.m == 17
    assert all(-2 <= x <= 2 for e in g.edges for x in e.gain)
    assert all(any(e.gain) for e in g.edges if e.is_loop)
