"""mu and lambda from the characteristic series, nu from tree counts, and the
end-to-end pipeline that cross-checks the two."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .errors import (Inadmissible, NotStabilized, PrecisionExhausted, UncertifiedMu,
                     ZeroEulerCharacteristic, ZeroSeries, DisconnectedGraph)
from .multigraph import Multigraph, is_connected
from .padic import val_ell
from .series import (TruncatedSeries, VoltageAssignment, char_poly_exact, char_series_truncated)
from .tower import is_admissible, kappa_sequence, max_level, normalize_voltage


@dataclass(frozen=True)
class Certificate:
    """How (mu, lambda) were established.

    ``exact``: the window contains the whole polynomial part of f.
    ``prefix``: read off a truncated series; ``certified`` is True when a unit
    coefficient was seen (so mu = 0) or after tree-count cross-validation.
    """

    kind: str
    certified: bool = True
    precision: Optional[int] = None
    degree: Optional[int] = None
    note: str = ""

    def as_dict(self) -> dict:
        d = {"kind": self.kind, "certified": self.certified}
        if self.precision is not None:
            d["precision"] = self.precision
        if self.degree is not None:
            d["degree"] = self.degree
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class IwasawaInvariants:
    mu: int
    lam: int
    certificate: Certificate
    nu: Optional[int] = None
    n0: Optional[int] = None
    series: Optional[TruncatedSeries] = None
    kappas: List[Tuple[int, int]] = field(default_factory=list)

    def as_dict(self, prefix_len: int = 8) -> dict:
        coeffs = self.series.coeffs[: prefix_len + 1] if self.series is not None else []
        return {"mu": self.mu, "lambda": self.lam, "nu": self.nu, "n0": self.n0,
                "certificate": self.certificate.as_dict(),
                "series_prefix": [str(c) for c in coeffs]}


def mu_lambda(series: TruncatedSeries, allow_uncertified: bool = False) -> Tuple[int, int, Certificate]:
    """(mu, lambda, certificate) from the Weierstrass data of f.

    mu is the least coefficient valuation, lambda + 1 the first index reaching it.
    """
    ell = series.ell
    cap = series.degree_cap
    if series.precision is None:
        if series.is_zero():
            raise ZeroSeries("characteristic series is zero")
        vals = [val_ell(c, ell) for c in series.coeffs]
        mu = min(vals)
        lam = vals.index(mu) - 1
        if series.exact_degree is not None and series.exact_degree <= cap:
            return int(mu), lam, Certificate("exact", True, None, cap)
        if mu == 0:
            return 0, lam, Certificate("prefix", True, None, cap, "unit coefficient in window")
        cert = Certificate("prefix", False, None, cap, "mu > 0 candidate from a finite window")
    else:
        p = series.precision
        vals = [min(val_ell(c, ell), p) for c in series.coeffs]
        mu = min(vals)
        if mu >= p:
            raise PrecisionExhausted(f"all coefficients vanish mod {ell}^{p}")
        lam = vals.index(mu) - 1
        if mu == 0:
            return 0, lam, Certificate("prefix", True, p, cap, "unit coefficient in window")
        cert = Certificate("prefix", False, p, cap, "mu > 0 candidate from a finite window")
    if not allow_uncertified:
        raise UncertifiedMu(f"mu = {mu} candidate needs tree-count cross-validation")
    return int(mu), lam, cert


def nu_sequence(mu: int, lam: int, ords: Sequence[int], ell: int) -> List[int]:
    return [o - mu * ell ** n - lam * n for n, o in enumerate(ords)]


def nu_fit(mu: int, lam: int, ords: Sequence[int], ell: int, min_tail: int = 3) -> Tuple[int, int]:
    """(nu, n0): nu_n = ord(kappa_n) - mu ell^n - lambda n is constant from n0 on.

    n0 >= 1 is the least level from which nu_n is constant through the last
    computed level, provided that tail covers at least ``min_tail`` levels.
    """
    nus = nu_sequence(mu, lam, ords, ell)
    last = len(nus) - 1
    n0 = last
    while n0 > 1 and nus[n0 - 1] == nus[last]:
        n0 -= 1
    if last - n0 + 1 < min_tail or any(isinstance(x, float) for x in nus):
        raise NotStabilized(f"nu_n = {nus} has no constant tail of length {min_tail}")
    return nus[last], n0


def compute_invariants(g: Multigraph, v: VoltageAssignment, levels: Optional[int] = None,
                       degree_cap: Optional[int] = None, cross_validate: bool = False,
                       cap: Optional[int] = None, workers: int = 1,
                       min_tail: int = 3) -> IwasawaInvariants:
    """Full pipeline: validate, normalize, series, mu/lambda, tower, nu."""
    if g.euler_characteristic() == 0:
        raise ZeroEulerCharacteristic("chi(X) = 0 is excluded")
    if not is_connected(g):
        raise DisconnectedGraph("graph is not connected")
    tree, w = normalize_voltage(g, v)
    if not is_admissible(g, w, tree):
        raise Inadmissible("no off-tree voltage is an ell-adic unit, so the tower is disconnected")

    if v.is_exact:
        series = char_poly_exact(g, v, degree_cap).series
    else:
        d = degree_cap if degree_cap is not None else 8
        series = char_series_truncated(g, v, d)
    mu, lam, cert = mu_lambda(series, allow_uncertified=True)
    if not cert.certified and not cross_validate:
        raise UncertifiedMu(f"mu = {mu} candidate needs --cross-validate")

    if levels is None:
        levels = max_level(g, v.ell, cap)
        if v.precision is not None:
            levels = min(levels, v.precision)
    result = IwasawaInvariants(mu, lam, cert, series=series)
    if levels <= 0:
        return result
    result.kappas = kappa_sequence(g, w, levels, cap, workers)
    try:
        result.nu, result.n0 = nu_fit(mu, lam, [o for _, o in result.kappas], v.ell, min_tail)
    except NotStabilized:
        if not cert.certified:
            raise UncertifiedMu("tree counts do not confirm the mu candidate")
        return result
    if not cert.certified:
        result.certificate = Certificate(cert.kind, True, cert.precision, cert.degree,
                                         "mu confirmed by tree counts")
    return result
