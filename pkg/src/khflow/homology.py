"""Integral homology of bigraded complexes and the graded Euler characteristic."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .errors import ComplexError
from .khcomplex import BigradedComplex, d_squared_failures, differential
from .laurent import LaurentPolynomial, q_plus_q_inverse
from .matrix import SparseMatrix
from .pd import LinkDiagram
from .snf import smith_normal_form


@dataclass(frozen=True)
class HomologyGroup:
    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return bool(self.free_rank or self.torsion)

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts += [f"Z/{t}" for t in self.torsion]
        return "+".join(parts) or "0"


@dataclass
class HomologyTable:
    entries: dict[tuple[int, int], HomologyGroup] = field(default_factory=dict)

    def __getitem__(self, ij: tuple[int, int]) -> HomologyGroup:
        return self.entries.get(ij, HomologyGroup())

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomologyTable):
            return NotImplemented
        return self.nonzero() == other.nonzero()

    def nonzero(self) -> dict[tuple[int, int], HomologyGroup]:
        return {k: v for k, v in sorted(self.entries.items()) if v}

    def free_rank(self, i: int, j: int) -> int:
        return self[i, j].free_rank

    def torsion(self, i: int, j: int) -> tuple[int, ...]:
        return self[i, j].torsion

    def torsion_factors(self) -> list[tuple[int, int, int]]:
        return [(i, j, t) for (i, j), g in self.nonzero().items() for t in g.torsion]

    def total_free_rank(self) -> int:
        return sum(g.free_rank for g in self.entries.values())

    def is_zero(self) -> bool:
        return not self.nonzero()

    def free_ranks(self) -> dict[tuple[int, int], int]:
        return {k: g.free_rank for k, g in self.nonzero().items() if g.free_rank}


def _snf_job(m: SparseMatrix):
    return smith_normal_form(m)


def homology(c: BigradedComplex, workers: int = 1) -> HomologyTable:
    """Free ranks and invariant factors in every bidegree.

    ``workers > 1`` spreads the Smith normal forms over a process pool; the
    result does not depend on the number of workers.
    """
    bad = d_squared_failures(c)
    if bad:
        raise ComplexError(f"differential does not square to zero at (i, j) = {bad[0]}")
    step = c.direction
    jobs = [(j, i, m) for j, b in c.blocks.items() for i, m in sorted(b.maps.items()) if not m.is_zero()]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_snf_job, [m for _, _, m in jobs], chunksize=1))
    else:
        results = [_snf_job(m) for _, _, m in jobs]
    snf = {(j, i): r for (j, i, _), r in zip(jobs, results)}

    table = HomologyTable()
    for j, b in c.blocks.items():
        for i, basis in sorted(b.bases.items()):
            dim = len(basis)
            if not dim:
                continue
            _, rank_out = snf.get((j, i), ([], 0))
            factors_in, rank_in = snf.get((j, i - step), ([], 0))
            free = dim - rank_out - rank_in
            torsion = tuple(f for f in factors_in if f > 1)
            group = HomologyGroup(free, torsion)
            if group:
                table.entries[(i, j)] = group
    return table


def graded_euler(h: HomologyTable) -> LaurentPolynomial:
    """``sum (-1)^i q^j rank H^{i,j}``"""
    return LaurentPolynomial.from_terms(
        (j, (-1) ** (i % 2) * g.free_rank) for (i, j), g in h.entries.items()
    )


def chain_euler(c: BigradedComplex) -> LaurentPolynomial:
    """Euler characteristic computed on chains rather than on homology."""
    return LaurentPolynomial.from_terms(
        (j, (-1) ** (i % 2) * len(basis)) for j, b in c.blocks.items() for i, basis in b.bases.items()
    )


def khovanov_homology(d: LinkDiagram, cap: int | None = None, workers: int = 1) -> HomologyTable:
    return homology(differential(d, cap), workers)


def jones(d: LinkDiagram, cap: int | None = None, workers: int = 1) -> LaurentPolynomial:
    """Jones polynomial as the Euler characteristic divided by ``q + 1/q``."""
    return graded_euler(khovanov_homology(d, cap, workers)).exact_div(q_plus_q_inverse())
