"""The matrix M(x) of a voltage multigraph and its characteristic series
f(T) = det M(1+T).

Integer voltages go through an exact Laurent-polynomial determinant; genuinely
ell-adic voltages (known mod ell^P') go through a truncated power-series
determinant whose coefficients are tracked modulo ell^P.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, factorial
from typing import Dict, List, Optional, Sequence

from .errors import NonIntegerVoltage, PrecisionExhausted, ZeroEulerCharacteristic, ZeroSeries
from .multigraph import Multigraph, bareiss_det
from .padic import PadicInt, val_ell


# ---------------------------------------------------------------- Laurent polys

class LaurentPoly:
    """Integer Laurent polynomial sum c_k x^k, stored as a sparse dict."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[int, int]] = None):
        self.terms = {k: int(c) for k, c in (terms or {}).items() if c != 0}

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "LaurentPoly":
        return cls({exponent: coefficient})

    @classmethod
    def constant(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def low(self) -> int:
        return min(self.terms) if self.terms else 0

    @property
    def high(self) -> int:
        return max(self.terms) if self.terms else 0

    def __add__(self, other):
        other = _as_laurent(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_as_laurent(other))

    def __rsub__(self, other):
        return _as_laurent(other) - self

    def __mul__(self, other):
        other = _as_laurent(other)
        out: Dict[int, int] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                out[k1 + k2] = out.get(k1 + k2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def evaluate(self, x: int) -> int:
        if x == 0 and self.terms and self.low < 0:
            raise ZeroDivisionError("negative exponent at x = 0")
        return sum(c * x ** k for k, c in self.terms.items())

    def shift(self, s: int) -> "LaurentPoly":
        return LaurentPoly({k + s: c for k, c in self.terms.items()})

    def in_T(self) -> List[int]:
        """Coefficients of the polynomial p(T) = self(1+T); requires low >= 0."""
        if self.low < 0:
            raise ValueError("clear negative exponents first")
        deg = self.high
        out = [0] * (deg + 1)
        for k, c in self.terms.items():
            for n in range(k + 1):
                out[n] += c * comb(k, n)
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{self.terms[k]}*x^{k}" for k in sorted(self.terms))


def _as_laurent(v) -> LaurentPoly:
    return v if isinstance(v, LaurentPoly) else LaurentPoly.constant(int(v))


# ---------------------------------------------------------------- power series

@dataclass
class TruncatedSeries:
    """sum beta_n T^n for n <= degree_cap.

    ``precision`` None means the coefficients are exact integers; otherwise they
    are meaningful modulo ell**precision. ``exact_degree`` is set when the
    series is a unit multiple of a polynomial of that degree (integer path), in
    which case the window already shows the full distinguished polynomial.
    """

    ell: int
    coeffs: List[int]
    precision: Optional[int] = None
    exact_degree: Optional[int] = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.coeffs = [int(c) for c in self.coeffs]
        if self.precision is not None:
            if self.precision <= 0:
                raise PrecisionExhausted("coefficient precision exhausted")
            m = self.ell ** self.precision
            self.coeffs = [c % m for c in self.coeffs]

    @property
    def degree_cap(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> int:
        return self.coeffs[n] if n < len(self.coeffs) else 0

    def _combine_prec(self, other) -> Optional[int]:
        ps = [p for p in (self.precision, other.precision) if p is not None]
        return min(ps) if ps else None

    def _coerce(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return other
        return TruncatedSeries(self.ell, [int(other)] + [0] * self.degree_cap)

    def __add__(self, other):
        other = self._coerce(other)
        d = min(self.degree_cap, other.degree_cap)
        return TruncatedSeries(self.ell, [self[i] + other[i] for i in range(d + 1)],
                               self._combine_prec(other))

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.ell, [-c for c in self.coeffs], self.precision)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        d = min(self.degree_cap, other.degree_cap)
        a, b = self.coeffs, other.coeffs
        out = [0] * (d + 1)
        for i in range(d + 1):
            ai = a[i]
            if ai:
                for j in range(d + 1 - i):
                    out[i + j] += ai * b[j]
        return TruncatedSeries(self.ell, out, self._combine_prec(other))

    __rmul__ = __mul__

    def truncate(self, d: int) -> "TruncatedSeries":
        return TruncatedSeries(self.ell, self.coeffs[: d + 1], self.precision)

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """self(inner(T)) for inner with zero constant term (Horner)."""
        if inner[0] != 0:
            raise ValueError("inner series must have zero constant term")
        d = min(self.degree_cap, inner.degree_cap)
        acc = TruncatedSeries(self.ell, [self[d]] + [0] * d, self.precision)
        for k in range(d - 1, -1, -1):
            acc = acc * inner + self[k]
        return acc

    def equals_mod_precision(self, other: "TruncatedSeries") -> bool:
        d = min(self.degree_cap, other.degree_cap)
        p = self._combine_prec(other)
        m = self.ell ** p if p is not None else None
        for i in range(d + 1):
            diff = self[i] - other[i]
            if (diff % m if m else diff) != 0:
                return False
        return True

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __repr__(self):
        terms = [f"{c}T^{i}" for i, c in enumerate(self.coeffs) if c]
        tail = "" if self.precision is None else f" (mod {self.ell}^{self.precision})"
        return "TruncatedSeries(" + (" + ".join(terms) or "0") + tail + ")"


def binomial_series(a: PadicInt, degree_cap: int) -> TruncatedSeries:
    """(1+T)^a truncated at T^degree_cap.

    For a known modulo ell^P' the coefficient C(a, n) is determined modulo
    ell^(P' - v(n!)), so the output precision is P' - v(D!).
    """
    coeffs = [1]
    c = 1
    for n in range(1, degree_cap + 1):
        c = c * (a.value - n + 1) // n  # C(a,n) stays integral at every step
        coeffs.append(c)
    if a.precision is None:
        return TruncatedSeries(a.ell, coeffs)
    p = a.precision - val_ell(factorial(degree_cap), a.ell)
    if p <= 0:
        raise PrecisionExhausted(
            f"precision {a.precision} cannot support degree {degree_cap}")
    return TruncatedSeries(a.ell, coeffs, p)


# ---------------------------------------------------------------- voltages

class VoltageAssignment:
    """Values alpha(s) for the section of a graph, in graph edge order."""

    def __init__(self, values: Sequence, ell: int, precision: Optional[int] = None):
        self.ell = int(ell)
        vals = []
        for v in values:
            if isinstance(v, PadicInt):
                vals.append(v)
            else:
                vals.append(PadicInt(int(v), self.ell, precision))
        self.values = tuple(vals)

    @classmethod
    def exact(cls, values: Sequence[int], ell: int) -> "VoltageAssignment":
        return cls([int(v) for v in values], ell)

    @property
    def is_exact(self) -> bool:
        return all(v.exact for v in self.values)

    @property
    def precision(self) -> Optional[int]:
        ps = [v.precision for v in self.values if v.precision is not None]
        return min(ps) if ps else None

    def integers(self) -> List[int]:
        return [v.value for v in self.values]

    def __len__(self):
        return len(self.values)

    def __repr__(self):
        return f"VoltageAssignment({self.integers()}, ell={self.ell}, precision={self.precision})"


def _check(g: Multigraph, v: VoltageAssignment):
    if len(v) != g.edge_count:
        raise ValueError(f"{len(v)} voltages for {g.edge_count} edges")


def voltage_matrix(g: Multigraph, v: VoltageAssignment) -> List[List[LaurentPoly]]:
    """M(x) = D - sum over section edges of x^{alpha} at (o,t) and x^{-alpha} at (t,o)."""
    _check(g, v)
    if not v.is_exact:
        raise NonIntegerVoltage("exact path needs integer voltages; use char_series_truncated")
    u = g.u
    deg = g.valency().diagonal()
    m = [[LaurentPoly.constant(int(deg[i])) if i == j else LaurentPoly() for j in range(u)]
         for i in range(u)]
    for (o, t), a in zip(g.undirected_edges(), v.integers()):
        m[o][t] = m[o][t] - LaurentPoly.monomial(a)
        m[t][o] = m[t][o] - LaurentPoly.monomial(-a)
    return m


# ---------------------------------------------------------------- exact path

@dataclass
class CharPoly:
    """Exact characteristic data for integer voltages.

    ``laurent`` is det M(x); ``poly`` holds the coefficients of
    P(T) = (1+T)^B det M(1+T) with B the row clearance; ``series`` is the true
    f(T) = P(T)(1+T)^(-B) expanded to its degree cap.
    """

    laurent: LaurentPoly
    clearance: int
    poly: List[int]
    series: TruncatedSeries


def _newton_to_monomial(values: List[int]) -> List[int]:
    """Integer polynomial of degree < len(values) through (k, values[k]), k = 0, 1, ..."""
    diffs, cur = [], list(values)
    while cur:
        diffs.append(cur[0])
        cur = [cur[i + 1] - cur[i] for i in range(len(cur) - 1)]
    out = [0] * len(values)
    falling = [1]  # x(x-1)...(x-j+1)
    for j, dj in enumerate(diffs):
        q, r = divmod(dj, factorial(j))
        if r:
            raise ArithmeticError("interpolated polynomial is not integral")
        for i, c in enumerate(falling):
            out[i] += q * c
        falling = [0] + falling
        for i in range(len(falling) - 1):
            falling[i] -= j * falling[i + 1]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def laurent_det(m: List[List[LaurentPoly]]) -> LaurentPoly:
    """det of a Laurent-polynomial matrix by evaluation and interpolation."""
    u = len(m)
    if u == 1:
        return m[0][0]
    shifts = []
    degs = 0
    for row in m:
        lows = [e.low for e in row if not e.is_zero()]
        highs = [e.high for e in row if not e.is_zero()]
        if not lows:
            return LaurentPoly()
        b = max(0, -min(lows))
        shifts.append(b)
        degs += max(highs) + b
    cleared = [[e.shift(b) for e in row] for row, b in zip(m, shifts)]
    values = [bareiss_det([[e.evaluate(x) for e in row] for row in cleared])
              for x in range(degs + 1)]
    coeffs = _newton_to_monomial(values)
    big_b = sum(shifts)
    return LaurentPoly({k - big_b: c for k, c in enumerate(coeffs)})


def default_degree(v: VoltageAssignment) -> int:
    return max(2 * sum(abs(a) for a in v.integers()) + 2, 8)


def char_poly_exact(g: Multigraph, v: VoltageAssignment, degree_cap: Optional[int] = None,
                    require_nonzero_euler: bool = True) -> CharPoly:
    _check(g, v)
    if require_nonzero_euler and g.euler_characteristic() == 0:
        raise ZeroEulerCharacteristic("chi(X) = 0 is excluded")
    m = voltage_matrix(g, v)
    det = laurent_det(m)
    if det.is_zero():
        raise ZeroSeries("det M(x) vanishes identically")
    clearance = 0
    for row in m:
        lows = [e.low for e in row if not e.is_zero()]
        clearance += max(0, -min(lows)) if lows else 0
    poly_x = det.shift(clearance)
    if poly_x.low < 0:  # cannot happen: row clearance dominates every term
        raise ArithmeticError("clearance too small")
    poly = poly_x.in_T()
    d = max(default_degree(v), len(poly) - 1) if degree_cap is None else degree_cap
    unit = binomial_series(PadicInt(-clearance, v.ell), d)
    padded = TruncatedSeries(v.ell, (poly + [0] * (d + 1))[: d + 1])
    f = padded * unit
    f.exact_degree = len(poly) - 1
    f.meta = {"clearance": clearance}
    return CharPoly(det, clearance, poly, f)


# ---------------------------------------------------------------- truncated path

def bird_det(a: list, one):
    """Division-free determinant over a commutative ring (Bird's algorithm)."""
    n = len(a)
    if n == 1:
        return a[0][0]
    zero = one - one
    x = a
    for _ in range(n - 1):
        suffix = [zero] * (n + 1)
        for i in range(n - 1, -1, -1):
            suffix[i] = suffix[i + 1] + x[i][i]
        mu = [[(-suffix[i + 1] if i == j else (x[i][j] if j > i else zero)) for j in range(n)]
              for i in range(n)]
        x = [[_dot([mu[i][k] for k in range(i, n)], [a[k][j] for k in range(i, n)], zero)
              for j in range(n)] for i in range(n)]
    return x[0][0] if n % 2 == 1 else -x[0][0]


def _dot(xs, ys, zero):
    acc = zero
    for p, q in zip(xs, ys):
        acc = acc + p * q
    return acc


def series_matrix(g: Multigraph, v: VoltageAssignment, degree_cap: int) -> list:
    _check(g, v)
    u = g.u
    deg = g.valency().diagonal()
    const = lambda c: TruncatedSeries(v.ell, [c] + [0] * degree_cap)
    m = [[const(int(deg[i]) if i == j else 0) for j in range(u)] for i in range(u)]
    for (o, t), a in zip(g.undirected_edges(), v.values):
        m[o][t] = m[o][t] - binomial_series(a, degree_cap)
        m[t][o] = m[t][o] - binomial_series(-a, degree_cap)
    return m


def char_series_truncated(g: Multigraph, v: VoltageAssignment, degree_cap: int,
                          precision: Optional[int] = None,
                          require_nonzero_euler: bool = True) -> TruncatedSeries:
    """f(T) mod T^(D+1), coefficients mod ell^P (P = min entry precision, or the
    caller's ``precision`` if smaller)."""
    if require_nonzero_euler and g.euler_characteristic() == 0:
        raise ZeroEulerCharacteristic("chi(X) = 0 is excluded")
    m = series_matrix(g, v, degree_cap)
    one = TruncatedSeries(v.ell, [1] + [0] * degree_cap)
    det = bird_det(m, one)
    p = det.precision
    if precision is not None:
        p = precision if p is None else min(p, precision)
    out = TruncatedSeries(v.ell, det.coeffs, p)
    out.meta = {"path": "truncated"}
    return out


def involution_series(ell: int, degree_cap: int) -> TruncatedSeries:
    """T' = (1+T)^(-1) - 1, the substitution under which every f(T) is invariant."""
    s = binomial_series(PadicInt(-1, ell), degree_cap)
    return s - 1


def bouquet_series(alpha: Sequence[int], ell: int, degree_cap: int) -> TruncatedSeries:
    """sum_k 2 - (1+T)^a_k - (1+T)^(-a_k), term by term."""
    total = TruncatedSeries(ell, [0] * (degree_cap + 1))
    for a in alpha:
        total = total + (2 - binomial_series(PadicInt(a, ell), degree_cap)
                         - binomial_series(PadicInt(-a, ell), degree_cap))
    return total
