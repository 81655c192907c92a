import random
from fractions import Fraction

import pytest

from iwagraph.complete import (beta2_linked_pair, build_complete, complete_density, complete_pairs,
                               kappa_complete, leading_constant, linked_pairs, single_voltage,
                               single_voltage_invariants, single_voltage_laurent, star_voltage,
                               star_voltage_invariants, star_voltage_laurent, theoretical_density,
                               voltage_from_matrix)
from iwagraph.invariants import mu_lambda
from iwagraph.multigraph import spanning_tree_count
from iwagraph.series import char_poly_exact


@pytest.mark.parametrize("u", [3, 4, 5, 6])
def test_cayley(u):
    assert spanning_tree_count(build_complete(u)) == kappa_complete(u)


@pytest.mark.parametrize("u", [3, 4, 5, 6])
@pytest.mark.parametrize("a", [1, 2, 5])
def test_closed_forms_match_determinant(u, a):
    g = build_complete(u)
    single = char_poly_exact(g, voltage_from_matrix(u, single_voltage(u, a), 3),
                             require_nonzero_euler=False)
    assert single.laurent == single_voltage_laurent(u, a)
    star = char_poly_exact(g, voltage_from_matrix(u, star_voltage(u, a), 3),
                           require_nonzero_euler=False)
    assert star.laurent == star_voltage_laurent(u, a)
    for ell in (3, 5, 7):
        if a % ell and u >= 4:
            series = char_poly_exact(g, voltage_from_matrix(u, star_voltage(u, a), ell)).series
            assert mu_lambda(series)[:2] == star_voltage_invariants(u, a, ell)
            series = char_poly_exact(g, voltage_from_matrix(u, single_voltage(u, a), ell)).series
            assert mu_lambda(series)[:2] == single_voltage_invariants(u, a, ell)


def test_leading_constant_and_pairs():
    assert leading_constant(4) == 8
    assert len(complete_pairs(5)) == 10
    sets = linked_pairs(4)
    # each vertex of K_4 joins C(3,2) edge pairs; 4*3 = 12 linked pairs in all
    assert len(sets.chain) + len(sets.other) == 12
    assert ((0, 1), (1, 2)) in sets.chain


def test_linked_pair_formula_small_u():
    rng = random.Random(12)
    for u in range(3, 7):
        for _ in range(15):
            a = {p: rng.randint(-3, 3) for p in complete_pairs(u)}
            chk = beta2_linked_pair(u, a)
            assert chk.verified and not chk.conjectural


def test_density_branches():
    assert theoretical_density(3, 0, 1) == Fraction(1, 3)
    assert theoretical_density(5, 2, 1) == Fraction(4, 125)
    assert theoretical_density(5, 0, 3) == 0
    emp, th = complete_density(3, 0, 1, 1000)
    assert abs(float(emp - th)) < 0.01
    assert complete_density(3, 0, 2, 100)[0] == 0
