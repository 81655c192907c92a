import random
from fractions import Fraction

import pytest

from iwagraph.errors import ZeroSeries
from iwagraph.series import VoltageAssignment, char_poly_exact
from iwagraph.two_vertex import (TwoVertexShape, all_shapes, beta2_two_vertex, build_two_vertex,
                                 prob_two_vertex_mu0_lambda1, prob_via_zero_count, qform_two_vertex)
from oracles import count_form_bruteforce


def test_shape_validation_and_graph():
    with pytest.raises(ValueError):
        TwoVertexShape(1, 1, 2, 0, 2)
    s = TwoVertexShape(2, 1, 2, 2, 0)
    g, tree = build_two_vertex(s)
    assert s.t == 4 and g.edge_count == 5 and list(tree.edges) == [2]
    assert s.full_voltage([1, 1, 2, 1]) == [1, 1, 0, 2, 1]


def test_beta2_formula_matches_determinant():
    rng = random.Random(6)
    for s in all_shapes(5):
        g, _ = build_two_vertex(s)
        for _ in range(4):
            alpha = s.full_voltage([rng.randint(-5, 5) for _ in range(s.t)])
            try:
                f = char_poly_exact(g, VoltageAssignment.exact(alpha, 3),
                                    require_nonzero_euler=False).series
            except ZeroSeries:
                assert beta2_two_vertex(s, alpha) == 0
                continue
            assert f[0] == 0 and f[1] == 0
            assert f[2] == beta2_two_vertex(s, alpha)


def test_closed_form_matches_bruteforce_zero_count():
    for s in all_shapes(4):
        for ell in (3, 5, 7):
            q = qform_two_vertex(s, ell)
            n0 = count_form_bruteforce(q.matrix, ell)
            want = 1 - Fraction(n0 - 1, ell ** s.t - 1)
            assert prob_two_vertex_mu0_lambda1(s, ell) == want, (s, ell)
            if q.matrix.any():
                assert prob_via_zero_count(s, ell) == want


def test_pinned_shape_probability():
    s = TwoVertexShape(2, 1, 2, 2, 0)
    p = prob_two_vertex_mu0_lambda1(s, 5)
    assert 0 < p < 1
