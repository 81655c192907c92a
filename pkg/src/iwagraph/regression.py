"""Pinned worked examples: graphs, voltages and the reference numbers they
must reproduce. Used by ``iwagraph verify`` and the test suite."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

from .multigraph import Multigraph, bouquet
from .series import VoltageAssignment


@dataclass(frozen=True)
class PinnedExample:
    name: str
    graph: Multigraph
    voltage: VoltageAssignment
    prefix: Tuple[int, ...]          # beta_0, beta_1, ...
    mu: int
    lam: int
    kappas: Tuple[int, ...]          # kappa_0, kappa_1, ...
    nu: int
    n0: int


def _k4_pinned_order() -> Multigraph:
    # s1 = e14, s2 = e13, s3 = e24, s4 = e12, s5 = e23, s6 = e34
    return Multigraph.from_edges(4, [(0, 3), (0, 2), (1, 3), (0, 1), (1, 2), (2, 3)])


def two_vertex_example_graph() -> Multigraph:
    # two loops at v1, edges v1->v2 (b1, b2), one loop at v2
    return Multigraph.from_edges(2, [(0, 0), (0, 0), (0, 1), (0, 1), (1, 1)])


PINNED: List[PinnedExample] = [
    PinnedExample(
        "bouquet ell=3 alpha=(1,8,10)", bouquet(3), VoltageAssignment.exact([1, 8, 10], 3),
        (0, 0, -165, 165, -1326), 0, 17,
        (1, 3 ** 3, 3 ** 10, 2 ** 18 * 3 ** 27,
         2 ** 18 * 3 ** 44 * 163 ** 2 * 487 ** 2 * 37907 ** 2 * 799471 ** 2),
        -24, 2),
    PinnedExample(
        "two-vertex (2,1,2,2,0) ell=5", two_vertex_example_graph(),
        VoltageAssignment.exact([1, 1, 0, 2, 1], 5),
        (0, 0, -10, 10, -9), 0, 3,
        (2, 2 * 5 ** 3 * 31 ** 2, 2 * 5 ** 6 * 31 ** 2 * 5351 ** 2 * 2157401 ** 2),
        0, 1),
    PinnedExample(
        "K4 star ell=3", _k4_pinned_order(), VoltageAssignment.exact([0, 1, 0, 1, 0, 0], 3),
        (0, 0, -8, 8, -8), 0, 1,
        (2 ** 4, 2 ** 10 * 3, 2 ** 28 * 3 ** 2, 2 ** 82 * 3 ** 3),
        0, 1),
    PinnedExample(
        "K4 alpha=(1,2,4) ell=3", _k4_pinned_order(), VoltageAssignment.exact([1, 2, 4, 0, 0, 0], 3),
        (0, 0, -120, 120, -252, 384, -578), 0, 5,
        (2 ** 4, 2 ** 8 * 3 ** 3, 2 ** 8 * 3 ** 8 * 11 ** 6,
         2 ** 8 * 3 ** 13 * 11 ** 6 * 13931 ** 2 * 19996201 ** 2),
        -2, 1),
]


def check_example(ex: PinnedExample) -> List[Tuple[str, bool, str]]:
    """Run one pinned example; returns (check name, ok, detail) triples."""
    from .invariants import compute_invariants, mu_lambda
    from .series import char_poly_exact
    from .tower import kappa_sequence
    from .padic import val_ell

    out = []
    series = char_poly_exact(ex.graph, ex.voltage).series
    got = tuple(series.coeffs[: len(ex.prefix)])
    out.append(("series prefix", got == ex.prefix, f"{list(got)}"))
    mu, lam, cert = mu_lambda(series)
    out.append(("mu, lambda", (mu, lam) == (ex.mu, ex.lam), f"mu={mu} lambda={lam} ({cert.kind})"))
    ks = kappa_sequence(ex.graph, ex.voltage, len(ex.kappas) - 1)
    for n, ((k, _), want) in enumerate(zip(ks, ex.kappas)):
        out.append((f"kappa_{n}", k == want, str(k) if k != want else "exact"))
    ords = [val_ell(k, ex.voltage.ell) for k in ex.kappas]
    law = all(o == ex.mu * ex.voltage.ell ** n + ex.lam * n + ex.nu
              for n, o in enumerate(ords) if n >= ex.n0)
    out.append(("growth law", law, f"ord = {ords}"))
    res = compute_invariants(ex.graph, ex.voltage)
    out.append(("pipeline nu, n0", (res.nu, res.n0) == (ex.nu, ex.n0),
                f"nu={res.nu} n0={res.n0} over levels 0..{len(res.kappas) - 1}"))
    return out
