import pytest

import cyclefree as cf


def test_graph_basics():
    g = cf.Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    assert (g.n, g.m) == (4, 4)
    assert g.adjacent(3, 0)
    assert g.edges() == [(0, 1), (0, 3), (1, 2), (2, 3)]
    assert g == cf.cycle_graph(4)
    assert cf.gnm(10, 20, 3) == cf.gnm(10, 20, 3)
    with pytest.raises(ValueError):
        cf.Graph(3, [(0, 0)])


def test_cycles():
    k4 = cf.complete_graph(4)
    assert len(cf.enumerate_cycles(k4, 2)) == 3
    assert cf.count_four_cycles(cf.complete_bipartite(3, 3)) == 9
    assert cf.free_count(4, 2) == 54
    r = cf.max_free_subgraph(cf.petersen_graph(), 2)
    assert r["edges"] == 15 and r["exact"]
    with pytest.raises(RuntimeError):
        cf.free_count(12, 2)


def test_supersat_and_containers():
    h = cf.build_supersat(cf.complete_bipartite(3, 3), 2)
    assert len(h["hyperedges"]) == 9 and h["audit_ok"]
    step = cf.container_step(cf.complete_graph(5))
    k5 = cf.complete_graph(5)
    assert step["containers"] and all(k5.contains(c) for c in step["containers"])
    tree = cf.iterate_containers(5, k=0.5)
    assert tree["nodes"] >= len(tree["leaves"]) >= 1
    enc = cf.encode(cf.cycle_graph(5), k=0.5)
    assert enc["sandwich"] and enc["replay_ok"]


def test_constructions_and_kst():
    assert cf.count_matchings(3, 3) == 34
    b = cf.blow_up(cf.cycle_graph(5), 3, [33] * 5)
    assert b.n == 15 and b.m == 15
    assert cf.family_free(b, [3, 6])
    assert len(cf.enumerate_kst(cf.complete_graph(4), 2, 2)) == 6
    assert cf.build_kst(cf.complete_bipartite(3, 3), 2, 2)["pairs"] == 18


def test_sweep():
    r = cf.sweep(2, [8], [0.3, 0.6], 1, 5)
    assert r["monotone"] and r["witness_ok"]
    assert [row["p"] for row in r["rows"]] == [0.3, 0.6]
