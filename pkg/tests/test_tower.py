import itertools
import random

import pytest

from iwagraph.errors import ResourceCap, VoltageNonzeroOnTree
from iwagraph.multigraph import Multigraph, bouquet, is_connected, spanning_tree_count
from iwagraph.series import VoltageAssignment, char_poly_exact
from iwagraph.tower import (derive, is_admissible, kappa_sequence, max_level, normalize_voltage,
                            resource_cap)


def triangle_plus_loop():
    return Multigraph.from_edges(3, [(0, 1), (1, 2), (0, 2), (2, 2)])


def test_derived_graph_shape():
    d = derive(bouquet(2), VoltageAssignment.exact([1, 2], 3), 2)
    assert d.graph.u == 9 and d.graph.edge_count == 18
    assert sorted(d.graph.valency().diagonal().tolist()) == [4] * 9
    assert d.projection(5) == 0


def test_level_zero_is_base():
    g = triangle_plus_loop()
    v = VoltageAssignment.exact([0, 0, 1, 2], 3)
    assert kappa_sequence(g, v, 0)[0][0] == spanning_tree_count(g)


def test_normalization_preserves_char_poly_and_kappas():
    rng = random.Random(2)
    g = triangle_plus_loop()
    for _ in range(10):
        v = VoltageAssignment.exact([rng.randint(-4, 4) for _ in range(4)], 3)
        tree, w = normalize_voltage(g, v)
        assert all(w.values[k].value == 0 for k in tree.edges)
        try:
            a = char_poly_exact(g, v).laurent
        except Exception:
            continue
        assert a == char_poly_exact(g, w).laurent
        assert kappa_sequence(g, v, 2) == kappa_sequence(g, w, 2)


def test_admissibility_equals_connectivity_of_levels():
    """Exhaustive over small voltages: admissible iff levels 1 and 2 are connected."""
    g = triangle_plus_loop()
    for ell in (3, 5):
        for vals in itertools.product(range(0, ell * ell, 2), repeat=2):
            v = VoltageAssignment.exact([0, 0] + list(vals), ell)
            tree, w = normalize_voltage(g, v)
            adm = is_admissible(g, w, tree)
            conn = all(is_connected(derive(g, v, n).graph) for n in (1, 2))
            assert adm == conn


def test_admissibility_needs_zero_on_tree():
    g = triangle_plus_loop()
    tree, _ = normalize_voltage(g, VoltageAssignment.exact([0] * 4, 3))
    bad = [1 if k in tree.edges else 0 for k in range(4)]
    with pytest.raises(VoltageNonzeroOnTree):
        is_admissible(g, VoltageAssignment.exact(bad, 3), tree)


def test_resource_cap(monkeypatch):
    v = VoltageAssignment.exact([1, 2], 3)
    with pytest.raises(ResourceCap):
        kappa_sequence(bouquet(2), v, 4, cap=30)
    monkeypatch.setenv("IWAGRAPH_RESOURCE_CAP", "10")
    assert resource_cap() == 10
    assert max_level(bouquet(2), 3) == 2
    monkeypatch.delenv("IWAGRAPH_RESOURCE_CAP")
    assert max_level(bouquet(2), 3) == 4
    with pytest.raises(ResourceCap):
        kappa_sequence(bouquet(2), VoltageAssignment([1, 2], 3, precision=1), 2)


def test_workers_do_not_change_results():
    v = VoltageAssignment.exact([1, 8, 10], 3)
    assert kappa_sequence(bouquet(3), v, 3, workers=2) == kappa_sequence(bouquet(3), v, 3)
