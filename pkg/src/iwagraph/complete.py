"""Complete graphs K_u: canonical section, closed forms for single and star
voltages, the linked-pair beta_2 formula and the density of (mu, lambda)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import ZeroSeries
from .multigraph import Multigraph
from .padic import val_ell
from .series import LaurentPoly, VoltageAssignment, char_poly_exact

Pair = Tuple[int, int]


def complete_pairs(u: int) -> List[Pair]:
    """Canonical section order e_{i,j}, i < j, lexicographic (0-based)."""
    return list(combinations(range(u), 2))


def build_complete(u: int, order: Optional[Sequence[Pair]] = None) -> Multigraph:
    if u < 2:
        raise ValueError("K_u needs u >= 2")
    pairs = list(order) if order is not None else complete_pairs(u)
    if sorted(tuple(sorted(p)) for p in pairs) != complete_pairs(u):
        raise ValueError("order must list each pair i < j once")
    return Multigraph.from_edges(u, pairs)


def voltage_from_matrix(u: int, a: Dict[Pair, int], ell: int,
                        order: Optional[Sequence[Pair]] = None) -> VoltageAssignment:
    pairs = list(order) if order is not None else complete_pairs(u)
    return VoltageAssignment.exact([a.get(p, 0) for p in pairs], ell)


def kappa_complete(u: int) -> int:
    return u ** (u - 2)


def leading_constant(u: int) -> int:
    """(u-2) u^(u-3), the constant in both closed forms."""
    return (u - 2) * u ** (u - 3)


def single_voltage_laurent(u: int, a: int) -> LaurentPoly:
    """-(u-2)u^(u-3) (x^a - 1)^2 x^(-a) for a_{1,2} = a and every other voltage 0."""
    c = leading_constant(u)
    return LaurentPoly({a: -c, 0: 2 * c, -a: -c}) if a else LaurentPoly()


def star_voltage_laurent(u: int, a: int) -> LaurentPoly:
    """-(u-2)u^(u-3)(x^a + x^-a) + 2(u-2)u^(u-3) for a_{1,j} = a, 2 <= j <= u-1."""
    c = leading_constant(u)
    return LaurentPoly({a: -c, -a: -c}) + 2 * c


def single_voltage(u: int, a: int) -> Dict[Pair, int]:
    return {(0, 1): a}


def star_voltage(u: int, a: int) -> Dict[Pair, int]:
    return {(0, j): a for j in range(1, u - 1)}


def closed_form_invariants(u: int, ell: int) -> Tuple[int, int]:
    """(mu, lambda) = (v_ell((u-2) u^(u-3)), 1), for voltage a prime to ell."""
    return int(val_ell(leading_constant(u), ell)), 1


def single_voltage_invariants(u: int, a: int, ell: int) -> Tuple[int, int]:
    if u < 3 or a % ell == 0:
        raise ValueError("need u >= 3 and ell not dividing a")
    return closed_form_invariants(u, ell)


def star_voltage_invariants(u: int, a: int, ell: int) -> Tuple[int, int]:
    if u < 3 or a % ell == 0:
        raise ValueError("need u >= 3 and ell not dividing a")
    return closed_form_invariants(u, ell)


# ---------------------------------------------------------------- linked pairs

@dataclass(frozen=True)
class LinkedPairSets:
    """Pairs of edges {i,j}, {k,l} (i<j, k<l) sharing exactly one vertex.

    ``chain`` (Pi) holds the pairs ((i,j),(j,l)) with i<j<l, where the shared
    vertex is the larger end of one edge and the smaller end of the other.
    ``other`` holds the rest: shared smaller ends or shared larger ends.
    """

    u: int
    chain: Tuple[Tuple[Pair, Pair], ...]
    other: Tuple[Tuple[Pair, Pair], ...]


def linked_pairs(u: int) -> LinkedPairSets:
    chain, other = [], []
    for e1, e2 in combinations(complete_pairs(u), 2):
        shared = set(e1) & set(e2)
        if len(shared) != 1:
            continue
        (i, j), (k, l) = e1, e2
        if j == k or l == i:
            chain.append((e1, e2) if j == k else (e2, e1))
        else:
            other.append((e1, e2))
    return LinkedPairSets(u, tuple(chain), tuple(other))


def beta2_linked_pair_formula(u: int, a: Dict[Pair, int]) -> int:
    """-(u-2)u^(u-3) sum a_ij^2 + 2 u^(u-3) (sum_{other} a a - sum_{chain} a a)."""
    sets = linked_pairs(u)
    sq = sum(a.get(p, 0) ** 2 for p in complete_pairs(u))
    oth = sum(a.get(x, 0) * a.get(y, 0) for x, y in sets.other)
    ch = sum(a.get(x, 0) * a.get(y, 0) for x, y in sets.chain)
    return -leading_constant(u) * sq + 2 * u ** (u - 3) * (oth - ch)


@dataclass
class LinkedPairCheck:
    formula: int
    exact: int
    verified: bool
    conjectural: bool


def beta2_linked_pair(u: int, a: Dict[Pair, int], ell: int = 3) -> LinkedPairCheck:
    """Evaluate the linked-pair formula and the true beta_2; for u > 7 the
    formula is only conjectural, so a mismatch is reported, not raised."""
    formula = beta2_linked_pair_formula(u, a)
    g = build_complete(u)
    try:
        exact = char_poly_exact(g, voltage_from_matrix(u, a, ell), require_nonzero_euler=False).series[2]
    except ZeroSeries:  # e.g. a coboundary voltage: det M(x) = 0
        exact = 0
    return LinkedPairCheck(formula, exact, formula == exact, u > 7)


# ---------------------------------------------------------------- density

def theoretical_density(ell: int, mu: int, lam: int) -> Fraction:
    if lam != 1:
        return Fraction(0)
    if mu == 0:
        return Fraction(ell - 2, ell)
    return Fraction(ell - 1, ell ** (mu + 1))


def mu_sequence(ell: int, x_max: int) -> np.ndarray:
    """mu_u = v(u-2) + (u-3) v(u) for u = 3..x_max (index u-3)."""
    u = np.arange(3, x_max + 1, dtype=np.int64)

    def vals(n):
        out = np.zeros_like(n)
        m = n.copy()
        mask = (m % ell == 0) & (m != 0)
        while mask.any():
            out[mask] += 1
            m[mask] //= ell
            mask = (m % ell == 0) & (m != 0)
        return out

    return vals(u - 2) + (u - 3) * vals(u)


def complete_density(ell: int, mu0: int, lambda0: int, x_max: int) -> Tuple[Fraction, Fraction]:
    """(#{3 <= u <= x_max : (mu_u, lambda_u) = (mu0, lambda0)} / x_max, theory).

    lambda_u = 1 for every u, for the single and the star assignment alike.
    """
    if lambda0 != 1:
        count = 0
    else:
        count = int(np.count_nonzero(mu_sequence(ell, x_max) == mu0))
    return Fraction(count, x_max), theoretical_density(ell, mu0, lambda0)
