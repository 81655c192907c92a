"""Finite multigraphs stored as directed edges with a fixed-point-free
inversion, plus Laplacians and exact spanning-tree counts."""

from __future__ import annotations

from collections import deque
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from .errors import DisconnectedGraph


def bareiss_det(matrix) -> int:
    """Exact determinant of a square integer matrix (fraction-free elimination)."""
    m = [[int(x) for x in row] for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = m[k][k]
        rowk = m[k]
        for i in range(k + 1, n):
            ri = m[i]
            a = ri[k]
            if a == 0:
                if pk != prev:
                    for j in range(k + 1, n):
                        ri[j] = ri[j] * pk // prev
            else:
                for j in range(k + 1, n):
                    ri[j] = (ri[j] * pk - a * rowk[j]) // prev
        prev = pk
    return sign * m[n - 1][n - 1]


class Multigraph:
    """Directed edges e with origin o(e), terminus t(e) and inversion inv(e).

    Use :meth:`from_edges` for the usual case; undirected edge k becomes the
    directed pair (2k, 2k+1) with 2k oriented as given, so the list order is
    also the section order.
    """

    def __init__(self, vertex_count: int, origin: Sequence[int], terminus: Sequence[int],
                 inversion: Sequence[int]):
        if vertex_count < 1:
            raise ValueError("need at least one vertex")
        if not (len(origin) == len(terminus) == len(inversion)):
            raise ValueError("edge arrays differ in length")
        self.u = int(vertex_count)
        self.origin = tuple(int(x) for x in origin)
        self.terminus = tuple(int(x) for x in terminus)
        self.inversion = tuple(int(x) for x in inversion)
        m = len(self.origin)
        for e in range(m):
            f = self.inversion[e]
            if not 0 <= f < m or f == e or self.inversion[f] != e:
                raise ValueError(f"inversion is not a fixed-point-free involution at edge {e}")
            if self.origin[f] != self.terminus[e] or self.terminus[f] != self.origin[e]:
                raise ValueError(f"edge {e} and its inverse are not compatible")
            if not (0 <= self.origin[e] < self.u and 0 <= self.terminus[e] < self.u):
                raise ValueError(f"edge {e} has an endpoint out of range")

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[Tuple[int, int]]) -> "Multigraph":
        origin, terminus, inversion = [], [], []
        for k, (a, b) in enumerate(edges):
            origin += [a, b]
            terminus += [b, a]
            inversion += [2 * k + 1, 2 * k]
        return cls(vertex_count, origin, terminus, inversion)

    # --- basic counts ---
    @property
    def directed_edge_count(self) -> int:
        return len(self.origin)

    @property
    def edge_count(self) -> int:
        return len(self.origin) // 2

    def section(self) -> List[int]:
        """One directed representative per undirected class, lowest id first."""
        seen, out = set(), []
        for e in range(self.directed_edge_count):
            if e not in seen:
                out.append(e)
                seen.add(e)
                seen.add(self.inversion[e])
        return out

    def undirected_edges(self) -> List[Tuple[int, int]]:
        return [(self.origin[e], self.terminus[e]) for e in self.section()]

    def multiplicity(self, i: int, j: int) -> int:
        """Number of undirected edges joining v_i and v_j."""
        return sum(1 for a, b in self.undirected_edges() if {a, b} == {i, j})

    # --- matrices ---
    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.u, self.u), dtype=np.int64)
        for o, t in zip(self.origin, self.terminus):
            a[o, t] += 1  # a loop is seen from both of its directions, so it counts twice
        return a

    def valency(self) -> np.ndarray:
        d = np.zeros(self.u, dtype=np.int64)
        for o in self.origin:
            d[o] += 1
        return np.diag(d)

    def laplacian(self) -> np.ndarray:
        return self.valency() - self.adjacency()

    def euler_characteristic(self) -> int:
        return self.u - self.edge_count

    def neighbours(self) -> List[List[Tuple[int, int]]]:
        """Per vertex, the (edge class index, other endpoint) pairs in section order."""
        adj: List[List[Tuple[int, int]]] = [[] for _ in range(self.u)]
        for k, (a, b) in enumerate(self.undirected_edges()):
            adj[a].append((k, b))
            if a != b:
                adj[b].append((k, a))
        return adj

    def __repr__(self):
        return f"Multigraph(u={self.u}, edges={self.undirected_edges()})"


def laplacian(g: Multigraph) -> np.ndarray:
    return g.laplacian()


def euler_characteristic(g: Multigraph) -> int:
    return g.euler_characteristic()


def is_connected(g: Multigraph) -> bool:
    adj = g.neighbours()
    seen = [False] * g.u
    seen[0] = True
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for _, w in adj[v]:
            if not seen[w]:
                seen[w] = True
                queue.append(w)
    return all(seen)


def spanning_tree_count(g: Multigraph, deleted: int = 0) -> int:
    """kappa(g) as the cofactor of the Laplacian at ``deleted``."""
    if not is_connected(g):
        raise DisconnectedGraph("graph is not connected")
    if g.u == 1:
        return 1
    q = g.laplacian()
    keep = [i for i in range(g.u) if i != deleted]
    return bareiss_det(q[np.ix_(keep, keep)].tolist())


class SpanningTree:
    """Undirected edge classes (indices into the section) forming a spanning tree."""

    def __init__(self, g: Multigraph, edges: Iterable[int]):
        self.edges = tuple(sorted(set(edges)))
        und = g.undirected_edges()
        if len(self.edges) != g.u - 1:
            raise ValueError("a spanning tree has u-1 edges")
        parent = list(range(g.u))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for k in self.edges:
            a, b = und[k]
            ra, rb = find(a), find(b)
            if ra == rb:
                raise ValueError("edge set contains a cycle")
            parent[ra] = rb

    def __contains__(self, k: int) -> bool:
        return k in self.edges

    def __repr__(self):
        return f"SpanningTree({list(self.edges)})"


def bfs_spanning_tree(g: Multigraph, root: int = 0) -> SpanningTree:
    """First BFS tree from ``root``, scanning edges in section order."""
    if not is_connected(g):
        raise DisconnectedGraph("graph is not connected")
    adj = g.neighbours()
    seen = [False] * g.u
    seen[root] = True
    queue = deque([root])
    chosen = []
    while queue:
        v = queue.popleft()
        for k, w in adj[v]:
            if not seen[w]:
                seen[w] = True
                chosen.append(k)
                queue.append(w)
    return SpanningTree(g, chosen)


def bouquet(t: int) -> Multigraph:
    return Multigraph.from_edges(1, [(0, 0)] * t)


def disjoint_union(*graphs: Multigraph) -> Multigraph:
    edges, shift = [], 0
    for h in graphs:
        edges += [(a + shift, b + shift) for a, b in h.undirected_edges()]
        shift += h.u
    return Multigraph.from_edges(shift, edges)


def from_json_dict(data: dict) -> Multigraph:
    """Parse ``{"vertices": u, "edges": [{"from": i, "to": j}, ...]}`` (1-based)."""
    u = int(data["vertices"])
    edges = []
    for item in data["edges"]:
        a, b = int(item["from"]) - 1, int(item["to"]) - 1
        edges.append((a, b))
    return Multigraph.from_edges(u, edges)


def to_json_dict(g: Multigraph) -> dict:
    return {"vertices": g.u,
            "edges": [{"from": a + 1, "to": b + 1} for a, b in g.undirected_edges()]}
