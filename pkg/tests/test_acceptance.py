"""Acceptance criteria 1-7 at their stated tolerances.

Each check records a PASS/FAIL part; the terminal summary (or the script entry
point at the bottom) prints one line per criterion. Two sub-checks cannot be
met as stated and are strict xfails, with the cause in the decisions ledger:
the literal t = 500 bound table for ell = 11, 13 and the monotone distance in
the vary-t trend.
"""

import itertools
import math
import random
import time
from decimal import Decimal, getcontext
from fractions import Fraction

import numpy as np
import pytest

from conftest import record
from iwagraph.bouquet import arb_large_voltage, invariants as bouquet_invariants
from iwagraph.complete import beta2_linked_pair, build_complete, complete_density, complete_pairs
from iwagraph.errors import ZeroSeries
from iwagraph.ffq import QuadraticFormFl, count_level_set, count_zeros, diagonalize, warning_lower_bound
from iwagraph.invariants import mu_lambda
from iwagraph.multigraph import bouquet, is_connected
from iwagraph.regression import PINNED, check_example
from iwagraph.series import VoltageAssignment, char_poly_exact, involution_series
from iwagraph.stats import (bouquet_enumerate, closed_form_bouquet, lambda_small_bound,
                            lambda_small_empirical, mu_positive_box, mu_positive_upper_bound,
                            small_t_distribution, vary_t_density)
from iwagraph.tower import derive, is_admissible, normalize_voltage
from iwagraph.two_vertex import TwoVertexShape, all_shapes, build_two_vertex, prob_two_vertex_mu0_lambda1
from oracles import (all_vectors, count_form_bruteforce, count_system_bruteforce, random_polynomial)


# ---------------------------------------------------------------- criterion 1

def test_criterion_1_pinned_examples():
    start = time.time()
    failures = []
    for ex in PINNED:
        failures += [f"{ex.name}: {name} [{d}]" for name, ok, d in check_example(ex) if not ok]
    elapsed = time.time() - start
    ok = not failures and elapsed < 600
    record(1, ok, f"{len(PINNED)} pinned examples, {len(failures)} mismatches, {elapsed:.1f}s")
    assert ok, failures


# ---------------------------------------------------------------- criterion 2

def unit_sum_of_squares(ell, t):
    xs = all_vectors(ell, t)[1:]
    hits = np.count_nonzero((xs * xs).sum(axis=1) % ell)
    return Fraction(int(hits), ell ** t - 1)


def two_vertex_bruteforce(shape, ell):
    """Fraction of nonzero reduced vectors whose beta_2 is a unit, beta_2 taken as
    (sum of the free b's - sum c)^2 - r * (sum of all squares)."""
    xs = all_vectors(ell, shape.t)[1:]
    p, e, g = shape.p, shape.e, shape.g
    lin = xs[:, p:p + e - 1].sum(axis=1) - xs[:, p + e - 1:p + e - 1 + g].sum(axis=1)
    b2 = (lin * lin - shape.r * (xs * xs).sum(axis=1)) % ell
    return Fraction(int(np.count_nonzero(b2)), ell ** shape.t - 1)


def test_criterion_2_closed_forms_vs_enumeration():
    start = time.time()
    bad = []
    for ell in (3, 5, 7, 11, 13):
        for t in range(2, 7):
            cf = closed_form_bouquet(ell, t)
            if not (cf == unit_sum_of_squares(ell, t) == bouquet_enumerate(ell, t).probability(0, 1)):
                bad.append(("bouquet", ell, t))
        for t in (2, 3):
            if t == 3 and ell < 5:
                continue
            rep = bouquet_enumerate(ell, t)
            dist = small_t_distribution(ell, t)
            lams = {r.lam for r in rep.rows if r.count}
            if any(rep.probability(0, lam) != p for lam, p in dist.items()) or not lams <= set(dist):
                bad.append(("small-t", ell, t))
    shapes = [s for s in all_shapes(5) if s.t >= 2]
    for ell in (3, 5, 7):
        for s in shapes:
            if prob_two_vertex_mu0_lambda1(s, ell) != two_vertex_bruteforce(s, ell):
                bad.append(("two-vertex", s, ell))
    elapsed = time.time() - start
    ok = not bad and elapsed < 300
    record(2, ok, f"bouquets 5x5 (ell,t), t=2,3 distributions, {len(shapes)} shapes x 3 primes; "
                  f"{len(bad)} mismatches, {elapsed:.1f}s")
    assert ok, bad


# ---------------------------------------------------------------- criterion 3

PRINTED_TABLE = {  # t = 500, as printed
    3: "0.333333333333333",
    5: "0.04",
    7: "0.00291545189520489",
    11: "6.19347695189800e-6",
    13: "2.01675052471490e-7",
}


def sig15(x: Fraction) -> Decimal:
    getcontext().prec = 60
    d = Decimal(x.numerator) / Decimal(x.denominator)
    return Decimal(f"{d:.14e}")


def last_summand(ell, t):
    """2^n C(t, n) [egf coefficient] / (ell^t - 1) for n = ell * floor(t / ell)."""
    m, n = (ell - 1) // 2, (t // ell) * ell
    egf = [1] + [0] * n
    for _ in range(m):
        nxt = [0] * (n + 1)
        for a in range(n + 1):
            if egf[a]:
                for k in range(0, n - a + 1, ell):
                    nxt[a + k] += math.comb(a + k, k) * egf[a]
        egf = nxt
    return Fraction(2 ** n * math.comb(t, n) * egf[n], ell ** t - 1)


def table_matches(ell, value):
    return sig15(value) == Decimal(PRINTED_TABLE[ell])


@pytest.mark.xfail(strict=True, reason="printed ell = 11, 13 entries omit the last summand; see ledger")
def test_criterion_3_table_literal():
    results = {ell: table_matches(ell, mu_positive_upper_bound(ell, 500)) for ell in PRINTED_TABLE}
    detail = ", ".join(f"ell={ell}:{'ok' if r else 'differs'}" for ell, r in results.items())
    record(3, all(results.values()), f"t=500 table to 15 digits [{detail}]")
    assert all(results.values()), {ell: str(sig15(mu_positive_upper_bound(ell, 500)))
                                   for ell, r in results.items() if not r}


def test_criterion_3_table_diagnosis():
    """The differing entries equal the sum without its final term (frozen diagnosis)."""
    for ell in (11, 13):
        assert not table_matches(ell, mu_positive_upper_bound(ell, 500))
        assert table_matches(ell, mu_positive_upper_bound(ell, 500) - last_summand(ell, 500))
    assert sig15(mu_positive_upper_bound(11, 500)) == Decimal("6.19347695189835e-6")
    assert sig15(mu_positive_upper_bound(13, 500)) == Decimal("2.01675052550581e-7")


def test_criterion_3_bounds_hold():
    bad = []
    for t in range(3, 10):
        if mu_positive_box(3, t) > mu_positive_upper_bound(3, t):
            bad.append(("mu>0", 3, t))
    for ell, t, k in ((5, 3, 2), (7, 7, 2)):
        if lambda_small_empirical(ell, t, k) > lambda_small_bound(ell, t, k):
            bad.append(("lambda small", ell, t, k))
    record(3, not bad, f"empirical <= bound for ell=3, 3<=t<=9 and (5,3,2), (7,7,2): {len(bad)} violations")
    assert not bad


# ---------------------------------------------------------------- criterion 4

D_CHECK = 20


def random_case(rng):
    """(graph, voltage, kind, t) for an admissible random integer voltage."""
    kind = rng.choice(["bouquet", "two-vertex", "complete"])
    ell = rng.choice([3, 5, 7])
    while True:
        if kind == "bouquet":
            t = rng.randint(2, 6)
            g = bouquet(t)
            alpha = [rng.randint(-6, 6) for _ in range(t)]
        elif kind == "two-vertex":
            shape = rng.choice([s for s in all_shapes(5) if s.t >= 2])
            g, _ = build_two_vertex(shape)
            t = shape.t
            alpha = [rng.randint(-4, 4) for _ in range(g.edge_count)]
        else:
            u = rng.randint(4, 6)
            g = build_complete(u)
            t = g.edge_count - u + 1
            alpha = [rng.randint(-2, 2) for _ in range(g.edge_count)]
        v = VoltageAssignment.exact(alpha, ell)
        tree, w = normalize_voltage(g, v)
        if is_admissible(g, w, tree):
            return g, v, kind, t


def structural_violations(g, v, kind, t):
    out = []
    try:
        cp = char_poly_exact(g, v)
    except ZeroSeries:
        return ["f vanishes for an admissible voltage"]
    f = cp.series
    if f[0] != 0 or f[1] != 0:
        out.append("beta0/beta1")
    if cp.laurent != type(cp.laurent)({-k: c for k, c in cp.laurent.terms.items()}):
        out.append("laurent symmetry")
    ft = f.truncate(D_CHECK)
    if ft.compose(involution_series(v.ell, D_CHECK)).coeffs != ft.coeffs:
        out.append("involution")
    mu, lam, _ = mu_lambda(f)
    if lam % 2 == 0:
        out.append("lambda even")
    if kind == "bouquet" and v.ell > t:
        if mu != 0:
            out.append("mu > 0 with ell > t")
        if lam >= 2 * t:
            out.append("lambda >= 2t with ell > t")
    return out


def test_criterion_4_structural_properties():
    rng = random.Random(20240)
    bad = []
    n_cases = 10 ** 4
    for i in range(n_cases):
        g, v, kind, t = random_case(rng)
        for what in structural_violations(g, v, kind, t):
            bad.append((what, kind, v.integers(), v.ell))
    fam_bad = []
    for ell in (3, 5):
        for n1 in (0, 1, 2):
            for n2 in (1, 2):
                got = bouquet_invariants(arb_large_voltage(ell, n1, n2))
                if got != (n1, 2 * ell ** n2 - 1):
                    fam_bad.append((ell, n1, n2, got))
    adm_bad = []
    small = [bouquet(2), build_two_vertex(TwoVertexShape(1, 0, 2, 1, 1))[0]]
    for ell in (3, 5):
        for g in small:
            m = g.edge_count
            if (ell * ell) ** m > 10 ** 4:
                continue
            for vals in itertools.product(range(ell * ell), repeat=m):
                v = VoltageAssignment.exact(vals, ell)
                tree, w = normalize_voltage(g, v)
                conn = all(is_connected(derive(g, v, n).graph) for n in (1, 2))
                if is_admissible(g, w, tree) != conn:
                    adm_bad.append((ell, vals))
    ok = not bad and not fam_bad and not adm_bad
    record(4, ok, f"{n_cases} random cases ({len(bad)} violations), large family "
                  f"({len(fam_bad)} mismatches), admissibility vs connectivity ({len(adm_bad)} mismatches)")
    assert ok, (bad[:5], fam_bad, adm_bad[:5])


# ---------------------------------------------------------------- criterion 5

def random_form(rng, ell):
    n = int(rng.integers(1, 7))
    a = rng.integers(0, ell, size=(n, n))
    return QuadraticFormFl((a + a.T) % ell, ell)


def test_criterion_5_finite_field_oracles():
    rng = np.random.default_rng(5)
    bad, checked, level_checked = [], 0, 0
    while checked < 200:
        ell = int(rng.choice([3, 5, 7]))
        q = random_form(rng, ell)
        if not q.matrix.any():
            continue
        checked += 1
        if count_zeros(q) != count_form_bruteforce(q.matrix, ell):
            bad.append(("zeros", q))
        if q.n % 2 == 0 and diagonalize(q).rank == q.n:
            level_checked += 1
            for b in range(ell):
                if count_level_set(q, b) != count_form_bruteforce(q.matrix, ell, b):
                    bad.append(("level", q, b))
    warn_bad = []
    for _ in range(50):
        ell = int(rng.choice([3, 5]))
        n = int(rng.integers(3, 6))
        k = int(rng.integers(1, 3))
        degrees = [1] * k
        budget = n - 1 - k
        for _ in range(budget):
            degrees[int(rng.integers(0, k))] += 1
        polys = [random_polynomial(rng, n, d, ell) for d in degrees]
        count = count_system_bruteforce(polys, n, ell)
        if count % ell or count < warning_lower_bound(degrees, n, ell):
            warn_bad.append((ell, n, degrees, count))
    ok = not bad and not warn_bad
    record(5, ok, f"200 forms ({level_checked} nondegenerate even), 50 systems; "
                  f"{len(bad) + len(warn_bad)} mismatches")
    assert ok, (bad[:3], warn_bad[:3])


# ---------------------------------------------------------------- criterion 6

def test_criterion_6_linked_pair_gate():
    rng = random.Random(6)
    bad = []
    for _ in range(1000):
        u = rng.randint(3, 7)
        a = {p: rng.randint(-4, 4) for p in complete_pairs(u)}
        chk = beta2_linked_pair(u, a)
        if not chk.verified:
            bad.append((u, a))
    # beyond u = 7 the formula is conjectural: report agreement, never assert it
    report = []
    for u in (8, 9):
        agree = sum(beta2_linked_pair(u, {p: rng.randint(-3, 3) for p in complete_pairs(u)}).verified
                    for _ in range(5))
        report.append(f"u={u}: {agree}/5 agree")
    record(6, not bad, f"1000 matrices, 3<=u<=7: {len(bad)} mismatches; reported only: " + ", ".join(report))
    assert not bad


# ---------------------------------------------------------------- criterion 7

VARY_T_GRID = (20, 60, 200)


def vary_t_distances():
    out = []
    for x in VARY_T_GRID:
        ratio, target = vary_t_density(3, x, 0.4)
        out.append(abs(float(ratio - target)))
    return out


def test_criterion_7_vary_t_within_tolerance():
    dist = vary_t_distances()
    ok = all(d <= 0.15 for d in dist)
    record(7, ok, "vary-t |ratio - 2/3| = " + ", ".join(f"{d:.5f}" for d in dist) + " (all <= 0.15)")
    assert ok


@pytest.mark.xfail(strict=True, reason="distance oscillates with the parity of the largest t; see ledger")
def test_criterion_7_vary_t_monotone():
    dist = vary_t_distances()
    ok = all(b <= a for a, b in zip(dist, dist[1:]))
    record(7, ok, "distance non-increasing over x = 20, 60, 200: " + ("yes" if ok else "no"))
    assert ok, dist


def test_criterion_7_complete_density():
    start = time.time()
    bad = []
    for ell in (3, 5):
        for mu0 in range(0, 5):
            emp, th = complete_density(ell, mu0, 1, 10 ** 6)
            if abs(float(emp - th)) > 1e-3:
                bad.append((ell, mu0, float(emp), float(th)))
        emp, th = complete_density(ell, 0, 3, 10 ** 6)
        if abs(float(emp - th)) > 1e-3:
            bad.append((ell, "lambda=3"))
    elapsed = time.time() - start
    ok = not bad and elapsed < 300
    record(7, ok, f"complete density at x_max=1e6, ell in (3,5), mu in 0..4: {len(bad)} branches off by > 1e-3")
    assert ok, bad


if __name__ == "__main__":
    import sys
    import conftest

    checks = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    for fn in checks:
        try:
            fn()
        except AssertionError:
            pass
    for line in conftest.summary_lines():
        print(line)
    sys.exit(0)
