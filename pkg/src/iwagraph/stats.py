"""Distribution engine: exhaustive enumeration, Monte Carlo sampling, closed
forms and bounds for the probability that a tower has given (mu, lambda)."""

from __future__ import annotations

import csv
import io
import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .bouquet import BouquetVoltage, classify_by_power_sums, invariants as bouquet_invariants
from .bouquet import mu_positive_by_counts, mu_positive_necessary
from .complete import complete_density
from .errors import EnumerationCap, HypothesisViolated, RangeError
from .padic import val_ell
from .two_vertex import TwoVertexShape, beta2_two_vertex, prob_two_vertex_mu0_lambda1

DEFAULT_ENUMERATION_CAP = 10 ** 8
CSV_COLUMNS = ["family", "ell", "params", "mu", "lambda", "count", "total",
               "empirical_num", "empirical_den", "theoretical_num", "theoretical_den",
               "bound_num", "bound_den", "seed"]


@dataclass
class StatRow:
    mu: object
    lam: object
    count: int
    theoretical: Optional[Fraction] = None
    bound: Optional[Fraction] = None


@dataclass
class StatReport:
    family: str
    ell: int
    params: str
    total: int
    rows: List[StatRow] = field(default_factory=list)
    seed: Optional[int] = None
    intervals: Dict[Tuple, Tuple[float, float]] = field(default_factory=dict)

    def probability(self, mu, lam) -> Fraction:
        return Fraction(sum(r.count for r in self.rows if r.mu == mu and r.lam == lam), self.total)

    def tally(self) -> Dict[Tuple, int]:
        return {(r.mu, r.lam): r.count for r in self.rows}

    def check(self):
        assert sum(r.count for r in self.rows) == self.total, "tallies must sum to the total"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in self.rows:
            emp = Fraction(r.count, self.total) if self.total else Fraction(0)
            th = r.theoretical
            bd = r.bound
            w.writerow([self.family, self.ell, self.params, r.mu, r.lam, r.count, self.total,
                        emp.numerator, emp.denominator,
                        "" if th is None else th.numerator, "" if th is None else th.denominator,
                        "" if bd is None else bd.numerator, "" if bd is None else bd.denominator,
                        "" if self.seed is None else self.seed])
        return buf.getvalue()


def _row_order(key):
    mu, lam = key
    return (str(mu), lam if isinstance(lam, int) else 10 ** 9, str(lam))


def _multinomial(counts: Sequence[int]) -> int:
    out, n = 1, 0
    for c in counts:
        n += c
        out *= math.comb(n, c)
    return out


def _multisets(base: int, t: int):
    """(representative tuple, number of ordered tuples it stands for)."""
    for combo in combinations_with_replacement(range(base), t):
        yield combo, _multinomial(list(Counter(combo).values()))


# ---------------------------------------------------------------- bouquets

def closed_form_bouquet(ell: int, t: int) -> Fraction:
    """Prob(mu = 0, lambda = 1) = 1 - g(ell, t)/(ell^t - 1)."""
    if t % 2 == 0:
        sign = -1 if (t * (ell - 1) // 4) % 2 else 1
        g = ell ** (t - 1) + sign * (ell - 1) * ell ** (t // 2 - 1) - 1
    else:
        g = ell ** (t - 1) - 1
    return 1 - Fraction(g, ell ** t - 1)


def small_t_distribution(ell: int, t: int) -> Dict[int, Fraction]:
    """lambda -> probability (with mu = 0) for t = 2 and t = 3 (ell >= 5)."""
    if t == 2:
        if ell % 4 == 3:
            return {1: Fraction(1)}
        return {1: Fraction(ell - 1, ell + 1), 3: Fraction(2, ell + 1)}
    if t == 3:
        if ell < 5:
            raise HypothesisViolated("the t = 3 distribution needs ell >= 5")
        den = ell * ell + ell + 1
        if ell % 3 == 2:
            return {1: Fraction(ell * ell, den), 3: Fraction(ell + 1, den)}
        return {1: Fraction(ell * ell, den), 3: Fraction(ell - 7, den), 5: Fraction(8, den)}
    raise HypothesisViolated("closed-form distributions exist for t = 2, 3 only")


def mu_positive_upper_bound(ell: int, t: int) -> Fraction:
    """sum_i 2^(i ell) C(t, i ell) sum_{a_1+..+a_m = i} (i ell)!/prod (a_j ell)!  / (ell^t - 1),
    m = (ell-1)/2; the inner sum is an EGF coefficient, computed by convolution."""
    m = (ell - 1) // 2
    top = (t // ell) * ell
    # egf[n] = number of words of length n over m letters, each letter used a multiple of ell times
    egf = [1] + [0] * top
    for _ in range(m):
        nxt = [0] * (top + 1)
        for n in range(top + 1):
            if egf[n]:
                for k in range(0, top - n + 1, ell):
                    nxt[n + k] += math.comb(n + k, k) * egf[n]
        egf = nxt
    num = sum(2 ** (i * ell) * math.comb(t, i * ell) * egf[i * ell] for i in range(1, t // ell + 1))
    return Fraction(num, ell ** t - 1)


def lambda_small_bound(ell: int, t: int, k: int) -> Fraction:
    """(1 - ell^-t)^-1 (1 - ell^-(k(k-1))) bounding Prob(mu = 0, lambda < 2k-1)."""
    if not (k > 1 and 2 * k - 1 < ell and k * (k - 1) < t):
        raise HypothesisViolated(f"need k > 1, 2k-1 < ell, k(k-1) < t (got ell={ell}, t={t}, k={k})")
    return (1 / (1 - Fraction(1, ell ** t))) * (1 - Fraction(1, ell ** (k * (k - 1))))


def _classify_bouquet(alpha: Sequence[int], ell: int, depth: int):
    """(mu, lambda, certified) for one representative lifted to [0, ell^depth)."""
    lam = classify_by_power_sums(alpha, ell)
    if lam is not None:
        return 0, lam, True
    mu, lam = bouquet_invariants(BouquetVoltage(ell, alpha))
    certified = mu == 0 and depth >= 1 + val_ell(math.factorial(lam + 1), ell)
    return mu, lam, certified


def bouquet_enumerate(ell: int, t: int, depth: int = 1, cap: int = DEFAULT_ENUMERATION_CAP,
                      theory: bool = True) -> StatReport:
    """Tally (mu, lambda) over every class in (Z/ell^depth)^t not inside (ell Z)^t.

    Classes whose invariants are not determined at this depth go to the row
    ('?', '?').
    """
    if t < 2:
        raise HypothesisViolated("bouquets need t >= 2")
    base = ell ** depth
    if base ** t > cap:
        raise EnumerationCap(f"{base}^{t} classes exceed the cap {cap}")
    tally: Counter = Counter()
    for combo, weight in _multisets(base, t):
        if all(a % ell == 0 for a in combo):
            continue
        mu, lam, ok = _classify_bouquet(combo, ell, depth)
        tally[(mu, lam) if ok else ("?", "?")] += weight
    total = base ** t - (base // ell) ** t
    report = StatReport("bouquet", ell, f"t={t};depth={depth}", total)
    known: Dict[int, Fraction] = {}
    if theory:
        try:
            known = small_t_distribution(ell, t)
        except HypothesisViolated:
            known = {}
        known.setdefault(1, closed_form_bouquet(ell, t))
    for key in sorted(tally, key=_row_order):
        th = known.get(key[1]) if key[0] == 0 else None
        report.rows.append(StatRow(key[0], key[1], tally[key], th))
    if theory and (0, 1) not in tally:
        report.rows.append(StatRow(0, 1, 0, known[1]))
    report.check()
    return report


def mu_positive_fraction_classes(ell: int, t: int) -> Fraction:
    """Fraction of nonzero classes mod ell passing the necessary test for mu > 0."""
    hits = 0
    for combo, weight in _multisets(ell, t):
        if any(combo) and mu_positive_necessary(BouquetVoltage(ell, combo, allow_t1=True)):
            hits += weight
    return Fraction(hits, ell ** t - 1)


def mu_positive_box(ell: int, t: int, depth: int = 2, cap: int = DEFAULT_ENUMERATION_CAP) -> Fraction:
    """Prob(mu > 0) over integer vectors in [0, ell^depth)^t not all divisible by ell,
    by the exact multiplicity criterion (ell divides every count of equal |alpha|)."""
    base = ell ** depth
    if base ** t > cap * 100:
        raise EnumerationCap(f"{base}^{t} vectors exceed the cap")
    hits = 0
    for combo, weight in _multisets(base, t):
        if all(a % ell == 0 for a in combo):
            continue
        if mu_positive_by_counts(BouquetVoltage(ell, combo, allow_t1=True)):
            hits += weight
    return Fraction(hits, base ** t - (base // ell) ** t)


def lambda_small_empirical(ell: int, t: int, k: int) -> Fraction:
    """Exact Prob(mu = 0, lambda < 2k-1) over the nonzero classes mod ell."""
    hits = 0
    for combo, weight in _multisets(ell, t):
        if not any(combo):
            continue
        lam = classify_by_power_sums(combo, ell)
        if lam is not None and lam < 2 * k - 1:
            hits += weight
    return Fraction(hits, ell ** t - 1)


# ---------------------------------------------------------------- vary t

def _t_max(x: int, delta: float) -> int:
    t = int(math.floor(x ** delta))
    while (t + 1) ** (1 / delta) <= x:  # guard against rounding below an exact power
        t += 1
    while t > 0 and t ** (1 / delta) > x * (1 + 1e-12):
        t -= 1
    return t


def class_count(x: int, r: int, ell: int) -> int:
    """#{a in [-x, x] : a = r mod ell} for 0 <= r < ell."""
    return (x - r) // ell + (x + r) // ell + 1


def vary_t_counts(ell: int, x: int, delta: float, cap: int = DEFAULT_ENUMERATION_CAP):
    """(#T_{<=x}(0,1,ell), #A_{<=x}(ell)) summed over 2 <= t <= x^delta."""
    if not 0 < delta < 1:
        raise RangeError("delta must lie in (0, 1)")
    t_max = _t_max(x, delta)
    if t_max < 2:
        raise RangeError(f"x^delta = {x ** delta:.3f} leaves no t >= 2")
    if ell ** t_max > cap:
        raise EnumerationCap(f"{ell}^{t_max} classes exceed the cap {cap}")
    counts = [class_count(x, r, ell) for r in range(ell)]
    sq = [0] * ell  # number of a in [-x, x] with a^2 = s mod ell
    for r, c in enumerate(counts):
        sq[r * r % ell] += c
    full = 2 * x + 1
    dist = [1] + [0] * (ell - 1)  # distribution of sum of squares mod ell
    good = admissible = 0
    for t in range(1, t_max + 1):
        new = [0] * ell
        for s, c in enumerate(dist):
            if c:
                for q, w in enumerate(sq):
                    new[(s + q) % ell] += c * w
        dist = new
        if t >= 2:
            good += full ** t - dist[0]
            admissible += full ** t - (2 * (x // ell) + 1) ** t
    return good, admissible, t_max


def vary_t_density(ell: int, x: int, delta: float, cap: int = DEFAULT_ENUMERATION_CAP):
    """(exact ratio #T/#A, target 1 - 1/ell)."""
    good, adm, _ = vary_t_counts(ell, x, delta, cap)
    return Fraction(good, adm), 1 - Fraction(1, ell)


# ---------------------------------------------------------------- two vertices

def _all_vectors(ell: int, t: int) -> np.ndarray:
    grids = np.meshgrid(*[np.arange(ell)] * t, indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1).astype(np.int64)


def two_vertex_enumerate(shape: TwoVertexShape, ell: int, cap: int = DEFAULT_ENUMERATION_CAP) -> StatReport:
    """Tally whether beta_2 is a unit over (Z/ell)^t minus 0, evaluating the
    beta_2 formula on each reduced voltage vector."""
    t = shape.t
    if ell ** t > cap:
        raise EnumerationCap(f"{ell}^{t} classes exceed the cap {cap}")
    xs = _all_vectors(ell, t)[1:]  # row 0 is the zero vector
    p, e, g = shape.p, shape.e, shape.g
    lin = xs[:, p:p + e - 1].sum(axis=1) - xs[:, p + e - 1:p + e - 1 + g].sum(axis=1)
    b2 = (lin * lin - shape.r * (xs * xs).sum(axis=1)) % ell
    unit = int(np.count_nonzero(b2))
    total = ell ** t - 1
    report = StatReport("two-vertex", ell,
                        f"p={shape.p};q={shape.q};r={shape.r};e={shape.e};g={shape.g}", total)
    report.rows.append(StatRow(0, 1, unit, prob_two_vertex_mu0_lambda1(shape, ell)))
    report.rows.append(StatRow("other", "other", total - unit))
    report.check()
    return report


# ---------------------------------------------------------------- complete graphs

def complete_report(ell: int, mu0: int, lambda0: int, x_max: int, assignment: str = "star") -> StatReport:
    emp, th = complete_density(ell, mu0, lambda0, x_max)
    report = StatReport("complete-" + assignment, ell, f"max_u={x_max}", x_max)
    report.rows.append(StatRow(mu0, lambda0, int(emp * x_max), th))
    report.rows.append(StatRow("other", "other", x_max - report.rows[0].count))
    report.check()
    return report


# ---------------------------------------------------------------- Monte Carlo

def wilson_interval(k: int, n: int, z: float = 1.959963984540054) -> Tuple[float, float]:
    if n == 0:
        return (0.0, 1.0)
    p = k / n
    den = 1 + z * z / n
    centre = (p + z * z / (2 * n)) / den
    half = z * math.sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / den
    return (max(0.0, centre - half), min(1.0, centre + half))


MC_CHUNKS = 16


def _chunk_sizes(samples: int) -> List[int]:
    q, r = divmod(samples, MC_CHUNKS)
    return [q + (1 if i < r else 0) for i in range(MC_CHUNKS)]


def _run_chunks(fn: Callable[[np.random.Generator, int], Counter], samples: int, seed: int,
                threads: int) -> Counter:
    """Chunks get fixed child seeds, so tallies do not depend on the thread count."""
    children = np.random.SeedSequence(seed).spawn(MC_CHUNKS)
    jobs = [(np.random.default_rng(s), n) for s, n in zip(children, _chunk_sizes(samples))]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda j: fn(*j), jobs))
    else:
        parts = [fn(*j) for j in jobs]
    total: Counter = Counter()
    for part in parts:
        total.update(part)
    return total


def _sample_admissible(rng: np.random.Generator, n: int, t: int, ell: int, depth: int) -> np.ndarray:
    out = np.empty((0, t), dtype=np.int64)
    while len(out) < n:
        draw = rng.integers(0, ell ** depth, size=(n - len(out), t), dtype=np.int64)
        keep = (draw % ell != 0).any(axis=1)
        out = np.concatenate([out, draw[keep]])
    return out


def monte_carlo_bouquet(ell: int, t: int, samples: int, seed: int, depth: int = 2,
                        threads: int = 1) -> StatReport:
    def work(rng, n):
        tally: Counter = Counter()
        if n == 0:
            return tally
        xs = _sample_admissible(rng, n, t, ell, depth)
        for row in xs.tolist():
            mu, lam, ok = _classify_bouquet(row, ell, depth)
            tally[(mu, lam)] += 1  # the sample itself is an integer voltage, so this is exact
        return tally

    tally = _run_chunks(work, samples, seed, threads)
    report = StatReport("bouquet-mc", ell, f"t={t};depth={depth}", samples, seed=seed)
    for key in sorted(tally, key=_row_order):
        th = closed_form_bouquet(ell, t) if key == (0, 1) else None
        report.rows.append(StatRow(key[0], key[1], tally[key], th))
        report.intervals[key] = wilson_interval(tally[key], samples)
    report.check()
    return report


def monte_carlo_two_vertex(shape: TwoVertexShape, ell: int, samples: int, seed: int,
                           depth: int = 1, threads: int = 1) -> StatReport:
    def work(rng, n):
        tally: Counter = Counter()
        if n == 0:
            return tally
        xs = _sample_admissible(rng, n, shape.t, ell, depth)
        for row in xs.tolist():
            b2 = beta2_two_vertex(shape, shape.full_voltage(row))
            tally[(0, 1) if b2 % ell else ("other", "other")] += 1
        return tally

    tally = _run_chunks(work, samples, seed, threads)
    report = StatReport("two-vertex-mc", ell,
                        f"p={shape.p};q={shape.q};r={shape.r};e={shape.e};g={shape.g}", samples, seed=seed)
    for key in sorted(tally, key=_row_order):
        th = prob_two_vertex_mu0_lambda1(shape, ell) if key == (0, 1) else None
        report.rows.append(StatRow(key[0], key[1], tally[key], th))
        report.intervals[key] = wilson_interval(tally[key], samples)
    report.check()
    return report
