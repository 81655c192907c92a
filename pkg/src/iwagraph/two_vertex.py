"""Two-vertex multigraphs X_{p,q,r}^{e,g}: construction, beta_2, the quadratic
form that governs it, and the probability of (mu, lambda) = (0, 1)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np

from .ffq import QuadraticFormFl, count_zeros, diagonalize
from .multigraph import Multigraph, SpanningTree
from .padic import quadratic_character


@dataclass(frozen=True)
class TwoVertexShape:
    """p loops at v1, q loops at v2, r joining edges: e oriented v1->v2 and
    g oriented v2->v1 in the section."""

    p: int
    q: int
    r: int
    e: int
    g: int

    def __post_init__(self):
        if min(self.p, self.q, self.g) < 0 or self.e < 1 or self.e + self.g != self.r:
            raise ValueError(f"invalid shape {self}")

    @property
    def t(self) -> int:
        return self.p + self.q + self.r - 1

    @property
    def tree_edge(self) -> int:
        return self.p  # first b-edge in section order

    def split(self, alpha: Sequence[int]):
        """(a, b, c, d) blocks of a full section vector."""
        p, e, g = self.p, self.e, self.g
        return (list(alpha[:p]), list(alpha[p:p + e]), list(alpha[p + e:p + e + g]),
                list(alpha[p + e + g:]))

    def full_voltage(self, reduced: Sequence[int]) -> List[int]:
        """Insert b_1 = 0 into a length-t vector."""
        reduced = list(reduced)
        return reduced[:self.p] + [0] + reduced[self.p:]


def build_two_vertex(shape: TwoVertexShape) -> Tuple[Multigraph, SpanningTree]:
    edges = ([(0, 0)] * shape.p + [(0, 1)] * shape.e + [(1, 0)] * shape.g
             + [(1, 1)] * shape.q)
    g = Multigraph.from_edges(2, edges)
    return g, SpanningTree(g, [shape.tree_edge])


def beta2_two_vertex(shape: TwoVertexShape, alpha: Sequence[int]) -> int:
    """(sum_{i>=2} b_i - sum c_j)^2 - r (sum of squares of all off-tree voltages)."""
    a, b, c, d = shape.split(alpha)
    if b[0] != 0:
        raise ValueError("b_1 must be normalized to 0")
    lin = sum(b[1:]) - sum(c)
    squares = sum(x * x for x in a + b[1:] + c + d)
    return lin * lin - shape.r * squares


def form_vector(shape: TwoVertexShape) -> np.ndarray:
    """Coefficient vector s of the linear part, in reduced (x, y, z, w) order."""
    return np.array([0] * shape.p + [1] * (shape.e - 1) + [-1] * shape.g + [0] * shape.q,
                    dtype=np.int64)


def qform_two_vertex(shape: TwoVertexShape, ell: int) -> QuadraticFormFl:
    """Q = (sum y - sum z)^2 - r (sum x^2 + y^2 + z^2 + w^2) over F_ell."""
    s = form_vector(shape)
    return QuadraticFormFl(np.outer(s, s) - shape.r * np.eye(shape.t, dtype=np.int64), ell)


def eta_two_vertex(shape: TwoVertexShape, ell: int) -> int:
    """eta((-1)^(rank/2) reduced-discriminant), or 0 when the rank is odd."""
    d = diagonalize(qform_two_vertex(shape, ell))
    if d.rank % 2:
        return 0
    return quadratic_character((-1) ** (d.rank // 2), ell) * d.disc_class


def prob_two_vertex_mu0_lambda1(shape: TwoVertexShape, ell: int) -> Fraction:
    """Closed form: degenerate case or odd t gives 1 - (ell^(t-1) - 1)/(ell^t - 1);
    otherwise 1 - (ell^(t-1) + eta (ell-1) ell^(t/2-1) - 1)/(ell^t - 1)."""
    t = shape.t
    total = ell ** t - 1
    if shape.r % ell == 0 or t % 2 == 1:
        return 1 - Fraction(ell ** (t - 1) - 1, total)
    eta = eta_two_vertex(shape, ell)
    return 1 - Fraction(ell ** (t - 1) + eta * (ell - 1) * ell ** (t // 2 - 1) - 1, total)


def prob_via_zero_count(shape: TwoVertexShape, ell: int) -> Fraction:
    """1 - (N(Q=0) - 1)/(ell^t - 1), using the general zero count."""
    n0 = count_zeros(qform_two_vertex(shape, ell))
    return 1 - Fraction(n0 - 1, ell ** shape.t - 1)


def all_shapes(t_max: int) -> List[TwoVertexShape]:
    """Every shape with 1 <= t <= t_max."""
    out = []
    for r in range(1, t_max + 2):
        for e in range(1, r + 1):
            for p in range(0, t_max + 2 - r):
                for q in range(0, t_max + 2 - r - p):
                    s = TwoVertexShape(p, q, r, e, r - e)
                    if 1 <= s.t <= t_max:
                        out.append(s)
    return out
