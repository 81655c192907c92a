"""Derived covers X_n = X(Z/ell^n, S, alpha mod ell^n), admissibility and
spanning-tree counts along the tower."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Tuple

from .errors import ResourceCap, VoltageNonzeroOnTree
from .multigraph import Multigraph, SpanningTree, bfs_spanning_tree, spanning_tree_count
from .padic import PadicInt, val_ell
from .series import VoltageAssignment

DEFAULT_RESOURCE_CAP = 1200


def resource_cap() -> int:
    raw = os.environ.get("IWAGRAPH_RESOURCE_CAP")
    return int(raw) if raw else DEFAULT_RESOURCE_CAP


class DerivedGraph:
    """Level-n cover; vertex (v_i, sigma) has index i * ell^n + sigma."""

    def __init__(self, base: Multigraph, voltage: VoltageAssignment, n: int):
        if n < 0:
            raise ValueError("level must be non-negative")
        self.base = base
        self.level = n
        self.ell = voltage.ell
        m = self.ell ** n
        self.order = m
        edges = []
        for (o, t), a in zip(base.undirected_edges(), voltage.values):
            shift = a.residue(n) if n else 0
            for s in range(m):
                edges.append((o * m + s, t * m + (s + shift) % m))
        self.graph = Multigraph.from_edges(base.u * m, edges)

    def projection(self, vertex: int) -> int:
        return vertex // self.order


def derive(g: Multigraph, v: VoltageAssignment, n: int) -> DerivedGraph:
    return DerivedGraph(g, v, n)


def vanishes_on_tree(g: Multigraph, v: VoltageAssignment, tree: SpanningTree) -> bool:
    return all(v.values[k].is_zero() for k in tree.edges)


def is_admissible(g: Multigraph, v: VoltageAssignment, tree: Optional[SpanningTree] = None) -> bool:
    """Some off-tree voltage is an ell-adic unit (voltage must vanish on the tree)."""
    if tree is None:
        tree = bfs_spanning_tree(g)
    bad = [k for k in tree.edges if not v.values[k].is_zero()]
    if bad:
        raise VoltageNonzeroOnTree(f"voltage is nonzero on tree edges {[k + 1 for k in bad]}")
    return any(v.values[k].is_unit() for k in range(len(v)) if k not in tree)


def normalize_voltage(g: Multigraph, v: VoltageAssignment,
                      tree: Optional[SpanningTree] = None) -> Tuple[SpanningTree, VoltageAssignment]:
    """Cohomologous voltage vanishing on ``tree`` (BFS tree by default).

    alpha'(s) = alpha(s) + phi(o(s)) - phi(t(s)) with phi built along the tree;
    the derived graphs are isomorphic and det M(x) is unchanged.
    """
    if tree is None:
        tree = bfs_spanning_tree(g)
    und = g.undirected_edges()
    phi = [None] * g.u
    phi[0] = 0
    pending = list(tree.edges)
    while pending:
        rest = []
        for k in pending:
            o, t = und[k]
            a = v.values[k].value
            if phi[o] is not None and phi[t] is None:
                phi[t] = phi[o] + a
            elif phi[t] is not None and phi[o] is None:
                phi[o] = phi[t] - a
            elif phi[o] is None:
                rest.append(k)
        pending = rest
    vals = []
    for k, ((o, t), a) in enumerate(zip(und, v.values)):
        vals.append(PadicInt(a.value + phi[o] - phi[t], v.ell, a.precision))
    return tree, VoltageAssignment(vals, v.ell)


def _kappa(args):
    g, v, n = args
    return spanning_tree_count(derive(g, v, n).graph)


def kappa_sequence(g: Multigraph, v: VoltageAssignment, n_max: int, cap: Optional[int] = None,
                   workers: int = 1) -> List[Tuple[int, int]]:
    """[(kappa_n, ord_ell kappa_n)] for n = 0..n_max, each from the cover itself."""
    cap = resource_cap() if cap is None else cap
    for n in range(n_max + 1):
        size = g.u * v.ell ** n
        if size > cap:
            raise ResourceCap(f"level {n} has {size} vertices (cap {cap})")
        if v.precision is not None and n > v.precision:
            raise ResourceCap(f"level {n} needs voltages mod {v.ell}^{n}, known to {v.precision}")
    jobs = [(g, v, n) for n in range(n_max + 1)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            kappas = list(pool.map(_kappa, jobs))
    else:
        kappas = [_kappa(j) for j in jobs]
    return [(k, val_ell(k, v.ell)) for k in kappas]


def max_level(g: Multigraph, ell: int, cap: Optional[int] = None, ceiling: int = 4) -> int:
    """Largest n <= ceiling whose cover fits under the vertex cap."""
    cap = resource_cap() if cap is None else cap
    n = 0
    while n < ceiling and g.u * ell ** (n + 1) <= cap:
        n += 1
    return n
