"""Smith normal form over the integers by sparse elimination.

Pivots are chosen with the smallest absolute value and, among units, the
smallest Markowitz product ``(row_len - 1) * (col_len - 1)`` to limit fill-in.
All arithmetic uses Python integers, so entries never overflow.
"""

from __future__ import annotations

from math import gcd
from typing import Sequence, Union

from .matrix import SparseMatrix

MatrixLike = Union[SparseMatrix, Sequence[Sequence[int]]]


def _as_sparse(m: MatrixLike) -> SparseMatrix:
    if isinstance(m, SparseMatrix):
        return m
    return SparseMatrix.from_dense(m)


class _Eliminator:
    def __init__(self, m: SparseMatrix):
        self.rows: dict[int, dict[int, int]] = m.rows()
        self.cols: dict[int, set[int]] = {}
        for (i, j) in m.entries:
            self.cols.setdefault(j, set()).add(i)
        self.diagonal: list[int] = []

    # -- row and column operations ------------------------------------------

    def _set(self, i, j, v):
        row = self.rows.setdefault(i, {})
        if v:
            row[j] = v
            self.cols.setdefault(j, set()).add(i)
        else:
            row.pop(j, None)
            col = self.cols.get(j)
            if col is not None:
                col.discard(i)
                if not col:
                    del self.cols[j]
            if not row:
                del self.rows[i]

    def add_row(self, dst: int, src: int, factor: int) -> None:
        """row[dst] += factor * row[src]"""
        for j, v in list(self.rows[src].items()):
            self._set(dst, j, self.rows.get(dst, {}).get(j, 0) + factor * v)

    def add_col(self, dst: int, src: int, factor: int) -> None:
        """col[dst] += factor * col[src]"""
        for i in list(self.cols[src]):
            v = self.rows[i][src]
            self._set(i, dst, self.rows[i].get(dst, 0) + factor * v)

    def remove(self, i: int, j: int) -> None:
        for jj in list(self.rows.get(i, {})):
            self._set(i, jj, 0)
        for ii in list(self.cols.get(j, ())):
            self._set(ii, j, 0)

    # -- pivoting ------------------------------------------------------------

    def pick_pivot(self) -> tuple[int, int]:
        best = None
        best_key = None
        for i, row in self.rows.items():
            rl = len(row)
            for j, v in row.items():
                key = (abs(v), (rl - 1) * (len(self.cols[j]) - 1))
                if best_key is None or key < best_key:
                    best, best_key = (i, j), key
                    if key == (1, 0):
                        return best
        return best

    def reduce_pivot(self, i: int, j: int) -> bool:
        """Clear row ``i`` and column ``j`` around the pivot.

        Returns False when a remainder smaller than the pivot appeared, in
        which case the caller re-picks the pivot.
        """
        p = self.rows[i][j]
        for ii in list(self.cols[j]):
            if ii == i:
                continue
            v = self.rows[ii][j]
            self.add_row(ii, i, -(v // p))
            if self.rows.get(ii, {}).get(j, 0):
                return False
        for jj in list(self.rows[i]):
            if jj == j:
                continue
            v = self.rows[i][jj]
            self.add_col(jj, j, -(v // p))
            if self.rows[i].get(jj, 0):
                return False
        return True

    def run(self) -> list[int]:
        while self.rows:
            i, j = self.pick_pivot()
            while not self.reduce_pivot(i, j):
                i, j = self.pick_pivot_near(i, j)
            self.diagonal.append(abs(self.rows[i][j]))
            self.remove(i, j)
        return self.diagonal

    def pick_pivot_near(self, i: int, j: int) -> tuple[int, int]:
        cand = [(abs(v), ii, j) for ii in self.cols.get(j, ()) for v in [self.rows[ii][j]]]
        cand += [(abs(v), i, jj) for jj, v in self.rows.get(i, {}).items()]
        _, a, b = min(cand)
        return a, b


def invariant_factors_from_diagonal(diagonal: Sequence[int]) -> list[int]:
    """Turn any nonzero diagonal form into the divisibility chain ``d1 | d2 | ...``."""
    units = [d for d in diagonal if abs(d) == 1]
    rest = sorted(abs(d) for d in diagonal if abs(d) > 1)
    for a in range(len(rest)):
        for b in range(a + 1, len(rest)):
            g = gcd(rest[a], rest[b])
            rest[a], rest[b] = g, rest[a] * rest[b] // g
    out = [1] * len(units) + [d for d in rest if d == 1] + [d for d in rest if d > 1]
    return out


def smith_normal_form(m: MatrixLike) -> tuple[list[int], int]:
    """Nonzero invariant factors and rank of an integer matrix."""
    sparse = _as_sparse(m)
    factors = invariant_factors_from_diagonal(_Eliminator(sparse).run())
    return factors, len(factors)


def rank_mod2(m: MatrixLike) -> int:
    """Rank over GF(2), by bitset elimination (independent of the SNF code)."""
    sparse = _as_sparse(m)
    rows: dict[int, int] = {}
    for (i, j), v in sparse.entries.items():
        if v % 2:
            rows[i] = rows.get(i, 0) ^ (1 << j)
    basis: dict[int, int] = {}
    for r in rows.values():
        while r:
            top = r.bit_length() - 1
            if top in basis:
                r ^= basis[top]
            else:
                basis[top] = r
                break
    return len(basis)

