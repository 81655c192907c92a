"""Quadratic forms over F_ell (ell odd): congruence diagonalization, rank,
reduced discriminant and closed-form solution counts."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from .errors import DegenerateForm, DegreeTooLarge, OddDimension, ZeroForm
from .padic import quadratic_character


class QuadraticFormFl:
    """Q(x) = sum_{i,j} a_ij x_i x_j with a symmetric matrix over F_ell."""

    def __init__(self, matrix, ell: int):
        a = np.array(matrix, dtype=np.int64) % ell
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("matrix must be square")
        if not np.array_equal(a, a.T):
            raise ValueError("matrix must be symmetric")
        self.ell = int(ell)
        self.matrix = a

    @classmethod
    def diagonal(cls, entries: Sequence[int], ell: int) -> "QuadraticFormFl":
        return cls(np.diag(np.array(entries, dtype=np.int64)), ell)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def __call__(self, x) -> int:
        x = np.asarray(x, dtype=np.int64) % self.ell
        return int(x @ self.matrix @ x) % self.ell

    def evaluate_many(self, xs: np.ndarray) -> np.ndarray:
        """Values on the rows of ``xs`` (shape (N, n)), reduced mod ell."""
        xs = np.asarray(xs, dtype=np.int64) % self.ell
        return np.einsum("ki,ij,kj->k", xs, self.matrix, xs) % self.ell

    def congruent(self, p) -> "QuadraticFormFl":
        """The form x -> Q(Px), i.e. matrix P^T A P."""
        p = np.asarray(p, dtype=np.int64) % self.ell
        return QuadraticFormFl((p.T @ self.matrix @ p) % self.ell, self.ell)

    def __repr__(self):
        return f"QuadraticFormFl(ell={self.ell}, matrix={self.matrix.tolist()})"


@dataclass(frozen=True)
class Diagonalization:
    entries: List[int]
    rank: int
    disc_class: int  # eta of the reduced discriminant; +1 for the zero form

    @property
    def reduced_discriminant_eta(self) -> int:
        return self.disc_class


def diagonalize(q: QuadraticFormFl) -> Diagonalization:
    ell = q.ell
    a = [[int(x) for x in row] for row in q.matrix]
    n = q.n

    def add_to(i, j):  # substitute x_i -> x_i + x_j
        for c in range(n):
            a[i][c] = (a[i][c] + a[j][c]) % ell
        for r in range(n):
            a[r][i] = (a[r][i] + a[r][j]) % ell

    def swap(i, j):
        a[i], a[j] = a[j], a[i]
        for row in a:
            row[i], row[j] = row[j], row[i]

    entries = []
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][i]), None)
        if piv is None:
            off = next(((i, j) for i in range(k, n) for j in range(k, n) if i != j and a[i][j]), None)
            if off is None:
                entries += [0] * (n - k)
                break
            add_to(*off)
            piv = off[0]
        swap(k, piv)
        p = a[k][k]
        inv = pow(p, -1, ell)
        for r in range(k + 1, n):
            f = a[r][k] * inv % ell
            if f:
                for c in range(n):
                    a[r][c] = (a[r][c] - f * a[k][c]) % ell
                for c in range(n):
                    a[c][r] = (a[c][r] - f * a[c][k]) % ell
        entries.append(p)
    nonzero = [e for e in entries if e]
    disc = 1
    for e in nonzero:
        disc = disc * e % ell
    return Diagonalization(entries, len(nonzero), quadratic_character(disc, ell))


def rank(q: QuadraticFormFl) -> int:
    return diagonalize(q).rank


def count_zeros(q: QuadraticFormFl) -> int:
    """N(Q = 0) over F_ell^n."""
    d = diagonalize(q)
    ell, n, r = q.ell, q.n, d.rank
    if r == 0:
        raise ZeroForm("the zero form has no meaningful zero count here")
    if r % 2:
        return ell ** (n - 1)
    eta = quadratic_character((-1) ** (r // 2), ell) * d.disc_class
    return ell ** (n - 1) + (ell - 1) * ell ** (n - r // 2 - 1) * eta


def count_level_set(q: QuadraticFormFl, b: int) -> int:
    """N(Q = b) for a nondegenerate form in an even number of variables."""
    ell, n = q.ell, q.n
    if n % 2:
        raise OddDimension("closed form needs an even number of variables")
    d = diagonalize(q)
    if d.rank < n:
        raise DegenerateForm("closed form needs a nondegenerate form")
    v = ell - 1 if b % ell == 0 else -1
    eta = quadratic_character((-1) ** (n // 2), ell) * d.disc_class
    return ell ** (n - 1) + v * ell ** ((n - 2) // 2) * eta


def warning_lower_bound(degrees: Sequence[int], n: int, ell: int) -> int:
    """ell^(n - d): lower bound for a system with a common zero and total degree d < n."""
    d = sum(degrees)
    if d >= n:
        raise DegreeTooLarge(f"total degree {d} must be below the variable count {n}")
    return ell ** (n - d)
