"""Bouquets X_t: power-sum criteria, shifted Chebyshev polynomials, the
large-invariant family and small-lambda classification."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple

from .errors import Inadmissible, RangeError, ZeroEulerCharacteristic
from .multigraph import Multigraph, bouquet
from .padic import val_ell
from .series import VoltageAssignment, char_poly_exact
from .invariants import mu_lambda


@dataclass(frozen=True)
class BouquetVoltage:
    ell: int
    alpha: Tuple[int, ...]

    def __init__(self, ell: int, alpha: Sequence[int], allow_t1: bool = False):
        object.__setattr__(self, "ell", int(ell))
        object.__setattr__(self, "alpha", tuple(int(a) for a in alpha))
        if len(self.alpha) < 1 or (len(self.alpha) < 2 and not allow_t1):
            raise ZeroEulerCharacteristic("a bouquet needs t >= 2 loops")

    @property
    def t(self) -> int:
        return len(self.alpha)

    def is_admissible(self) -> bool:
        return any(a % self.ell for a in self.alpha)

    def graph(self) -> Multigraph:
        return bouquet(self.t)

    def voltage(self) -> VoltageAssignment:
        return VoltageAssignment.exact(self.alpha, self.ell)


def power_sums(bv: BouquetVoltage, i_max: int) -> List[int]:
    """p_i = sum_k alpha_k^(2i) for i = 1..i_max (exact integers)."""
    return [sum(a ** (2 * i) for a in bv.alpha) for i in range(1, i_max + 1)]


def mu_positive_necessary(bv: BouquetVoltage) -> bool:
    """Both necessary conditions for mu > 0: the number of unit coordinates is a
    multiple of ell, and so is every square-class count r_x."""
    ell = bv.ell
    units = [a % ell for a in bv.alpha if a % ell]
    if len(units) % ell:
        return False
    r = Counter(a * a % ell for a in units)
    return all(c % ell == 0 for c in r.values())


def invariants(bv: BouquetVoltage) -> Tuple[int, int]:
    """(mu, lambda) of the exact characteristic polynomial."""
    if not bv.is_admissible():
        raise Inadmissible("every coordinate is divisible by ell")
    mu, lam, _ = mu_lambda(char_poly_exact(bv.graph(), bv.voltage()).series)
    return mu, lam


def mu_exact_integer(bv: BouquetVoltage) -> int:
    return invariants(bv)[0]


def mu_positive_by_counts(bv: BouquetVoltage) -> bool:
    """ell divides the multiplicity of every nonzero value of |alpha|."""
    counts = Counter(abs(a) for a in bv.alpha if a)
    return all(c % bv.ell == 0 for c in counts.values())


class LambdaClass(Enum):
    LAMBDA_EQ_2K_MINUS_1 = "lambda = 2k-1"
    LESS = "lambda < 2k-1"
    UNDETERMINED = "undetermined"


def lambda_classifier_small(bv: BouquetVoltage, k: int) -> LambdaClass:
    """Decide whether (mu, lambda) = (0, 2k-1) from power sums mod ell alone."""
    if k < 1 or 2 * k - 1 >= bv.ell - 1:
        raise RangeError(f"power sums only decide lambda = 2k-1 for 2k-1 < ell-1 (k={k}, ell={bv.ell})")
    sums = [p % bv.ell for p in power_sums(bv, k)]
    if any(sums[:-1]):
        return LambdaClass.LESS
    return LambdaClass.LAMBDA_EQ_2K_MINUS_1 if sums[-1] else LambdaClass.UNDETERMINED


def classify_by_power_sums(alpha: Sequence[int], ell: int) -> Optional[int]:
    """lambda when the first non-vanishing power sum mod ell falls in the range
    where that decides (mu, lambda) = (0, lambda); None otherwise."""
    k = 1
    while 2 * k - 1 < ell - 1:
        if sum(pow(a, 2 * k, ell) for a in alpha) % ell:
            return 2 * k - 1
        k += 1
    return None


def arb_large_voltage(ell: int, n1: int, n2: int) -> BouquetVoltage:
    """ell^(n1+1) loops of voltage 1 and ell^n1 loops of voltage ell^n2;
    expected invariants (n1, 2 ell^n2 - 1)."""
    if n1 < 0 or n2 < 1:
        raise ValueError("need n1 >= 0 and n2 >= 1")
    return BouquetVoltage(ell, [1] * ell ** (n1 + 1) + [ell ** n2] * ell ** n1)


# ---------------------------------------------------------------- Chebyshev

def chebyshev_shifted(a: int, k_max: Optional[int] = None) -> List[int]:
    """Coefficients [d_0, d_1, ..., d_a] of P_a(X) = 2 - 2 T_a(1 - X/2).

    Uses P_{a+1} = 2 P_a - P_{a-1} + X (2 - P_a) with P_0 = 0, P_1 = X.
    """
    a = abs(a)
    prev, cur = [0], [0, 1]
    if a == 0:
        out = prev
    else:
        for _ in range(a - 1):
            nxt = [0] * (len(cur) + 1)
            for i, c in enumerate(cur):
                nxt[i] += 2 * c
                nxt[i + 1] -= c  # -X * P_a
            for i, c in enumerate(prev):
                nxt[i] -= c
            nxt[1] += 2
            prev, cur = cur, nxt
        out = cur
    if k_max is not None:
        out = (out + [0] * (k_max + 1))[: k_max + 1]
    return out


def chebyshev_matrix(b: Sequence[int]) -> List[List[int]]:
    """(d_{b_i}(b_j)): row i holds the X^{b_i} coefficients."""
    polys = {bj: chebyshev_shifted(bj) for bj in b}
    return [[(polys[bj][bi] if bi < len(polys[bj]) else 0) for bj in b] for bi in b]


def chebyshev_invariants(bv: BouquetVoltage) -> Tuple[int, int]:
    """(mu, lambda) via f = sum_k P_{|alpha_k|}(X) with X = -T^2 (1+T)^-1.

    Independent of the determinant route: X^k is T^(2k) times a unit, so mu is
    the least coefficient valuation c_k and lambda = 2 k_min - 1.
    """
    if not bv.is_admissible():
        raise Inadmissible("every coordinate is divisible by ell")
    top = max(abs(a) for a in bv.alpha)
    total = [0] * (top + 1)
    for a in bv.alpha:
        for i, c in enumerate(chebyshev_shifted(a)):
            total[i] += c
    vals = [val_ell(c, bv.ell) for c in total]
    mu = min(vals)
    return int(mu), 2 * vals.index(mu) - 1
