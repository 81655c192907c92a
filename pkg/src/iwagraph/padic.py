"""ell-adic integers as (representative, precision) pairs, valuations and
the quadratic character."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

INFINITY = math.inf


def is_odd_prime(n: int) -> bool:
    if n < 3 or n % 2 == 0:
        return False
    return all(n % d for d in range(3, math.isqrt(n) + 1, 2))


def val_ell(n: int, ell: int):
    """Largest e with ell**e | n; ``math.inf`` for n == 0."""
    n = int(n)
    if n == 0:
        return INFINITY
    n = abs(n)
    e = 0
    while n % ell == 0:
        n //= ell
        e += 1
    return e


def quadratic_character(a: int, ell: int) -> int:
    """Legendre symbol (a / ell) with eta(0) = 0."""
    a %= ell
    if a == 0:
        return 0
    return 1 if pow(a, (ell - 1) // 2, ell) == 1 else -1


@dataclass(frozen=True, eq=False)
class PadicInt:
    """An element of Z_ell known modulo ell**precision (None = exact integer)."""

    value: int
    ell: int
    precision: Optional[int] = None

    def __post_init__(self):
        if self.precision is not None:
            if self.precision <= 0:
                raise ValueError("precision must be positive")
            object.__setattr__(self, "value", self.value % self.ell ** self.precision)

    @property
    def exact(self) -> bool:
        return self.precision is None

    def residue(self, k: int) -> int:
        if self.precision is not None and k > self.precision:
            from .errors import PrecisionExhausted
            raise PrecisionExhausted(f"need {k} digits, have {self.precision}")
        return self.value % self.ell ** k

    def valuation(self):
        if self.precision is None:
            return val_ell(self.value, self.ell)
        v = val_ell(self.value, self.ell)
        # zero mod ell^P is only known to have valuation >= P
        return v if v < self.precision else INFINITY

    def is_unit(self) -> bool:
        return self.value % self.ell != 0

    def is_zero(self) -> bool:
        if self.precision is None:
            return self.value == 0
        return self.value % self.ell ** self.precision == 0

    def __eq__(self, other):
        if not isinstance(other, PadicInt):
            if isinstance(other, int):
                other = PadicInt(other, self.ell)
            else:
                return NotImplemented
        if other.ell != self.ell:
            return False
        precs = [p for p in (self.precision, other.precision) if p is not None]
        if not precs:
            return self.value == other.value
        m = self.ell ** min(precs)
        return (self.value - other.value) % m == 0

    def __hash__(self):
        return hash((self.ell, self.value if self.precision is None else None))

    def __neg__(self):
        return PadicInt(-self.value, self.ell, self.precision)

    def __repr__(self):
        p = "exact" if self.precision is None else f"mod {self.ell}^{self.precision}"
        return f"PadicInt({self.value}, {p})"
