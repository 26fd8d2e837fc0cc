"""The bigraded Khovanov chain complex of a link diagram."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Hashable, Sequence

from .cube import (
    MINUS,
    PLUS,
    LabeledConfiguration,
    ResolutionConfiguration,
    labelings,
    merge_rule,
    resolve,
    split_rule,
)
from .errors import BitError, ResourceError
from .matrix import SparseMatrix
from .pd import LinkDiagram

DEFAULT_CAP = 16


@dataclass(frozen=True)
class LabeledGenerator:
    gen: LabeledConfiguration
    gr_h: int
    gr_q: int

    @property
    def key(self) -> str:
        return str(self.gen)


@dataclass
class Block:
    """One quantum grading: ordered bases per homological degree, and the maps.

    ``maps[i]`` sends degree ``i`` to degree ``i + direction`` of the owning
    complex, with columns indexing the source basis.
    """

    bases: dict[int, list[Hashable]] = field(default_factory=dict)
    maps: dict[int, SparseMatrix] = field(default_factory=dict)

    def dim(self, i: int) -> int:
        return len(self.bases.get(i, ()))

    def matrix(self, i: int, direction: int) -> SparseMatrix:
        m = self.maps.get(i)
        if m is None:
            m = SparseMatrix(self.dim(i + direction), self.dim(i))
        return m


@dataclass
class BigradedComplex:
    """Free complex split into quantum-grading blocks.

    ``direction`` is +1 for a cochain complex (the Khovanov convention) and
    -1 for a chain complex such as a Floer complex.  Ungraded complexes keep a
    single block under quantum grading 0.
    """

    blocks: dict[int, Block]
    direction: int = 1
    generators: dict[Hashable, LabeledGenerator] = field(default_factory=dict)
    graded: bool = True

    def degrees(self) -> list[tuple[int, int]]:
        return sorted((i, j) for j, b in self.blocks.items() for i, basis in b.bases.items() if basis)

    def rank(self) -> int:
        return sum(len(basis) for b in self.blocks.values() for basis in b.bases.values())


def check_cap(d: LinkDiagram, cap: int | None) -> None:
    cap = DEFAULT_CAP if cap is None else cap
    if len(d.crossings) > cap:
        raise ResourceError(f"{len(d.crossings)} crossings exceeds the cube cap of {cap}")


def gradings(d: LinkDiagram, g: LabeledConfiguration) -> tuple[int, int]:
    weight = sum(g.vertex)
    plus = sum(1 for x in g.labels if x is PLUS)
    minus = len(g.labels) - plus
    gr_h = -d.n_minus + weight
    gr_q = d.n_plus - 2 * d.n_minus + weight + plus - minus
    return gr_h, gr_q


def vertices(n: int):
    return itertools.product((0, 1), repeat=n)


def generators(d: LinkDiagram, cap: int | None = None) -> list[LabeledGenerator]:
    """All labeled resolution configurations, ordered by vertex then label vector."""
    check_cap(d, cap)
    out = []
    for u in vertices(len(d.crossings)):
        for g in labelings(resolve(d, u)):
            out.append(LabeledGenerator(g, *gradings(d, g)))
    return out


def s0_sign(u: Sequence[int], v: Sequence[int]) -> int:
    """Sign of the cube edge ``v -> u`` where ``u`` has one more 1 than ``v``."""
    u, v = tuple(u), tuple(v)
    if len(u) != len(v):
        raise BitError("vertices of different length")
    diff = [k for k in range(len(u)) if u[k] != v[k]]
    if len(diff) != 1 or u[diff[0]] != 1:
        raise BitError(f"{v} -> {u} is not a cube edge")
    return -1 if sum(v[: diff[0]]) % 2 else 1


def _edge_entries(cv: ResolutionConfiguration, cu: ResolutionConfiguration, i: int):
    """Yield ``(y, x)`` label-vector pairs with ``(cv, y) < (cu, x)``."""
    arc = next(a for a in cv.arcs if a.crossing == i)
    ids_v, ids_u = cv.circle_ids, cu.circle_ids
    shared = [c for c in ids_v if c not in arc.circles]
    born = [c for c in ids_u if c not in shared]
    pos_v = {c: k for k, c in enumerate(ids_v)}
    pos_u = {c: k for k, c in enumerate(ids_u)}
    shared_pairs = [(pos_v[c], pos_u[c]) for c in shared]
    parts = [pos_v[c] for c in arc.circles]
    born_pos = [pos_u[c] for c in born]
    for y in itertools.product((PLUS, MINUS), repeat=len(ids_v)):
        if len(parts) == 2:
            options = [(lab,) for lab in merge_rule(y[parts[0]], y[parts[1]])]
        else:
            options = split_rule(y[parts[0]])
        for opt in options:
            x = [None] * len(ids_u)
            for a, b in shared_pairs:
                x[b] = y[a]
            for b, lab in zip(born_pos, opt):
                x[b] = lab
            yield y, tuple(x)


def differential(d: LinkDiagram, cap: int | None = None) -> BigradedComplex:
    check_cap(d, cap)
    n = len(d.crossings)
    configs = {u: resolve(d, u) for u in vertices(n)}
    gens: dict[str, LabeledGenerator] = {}
    where: dict[tuple, tuple[int, int, int]] = {}
    blocks: dict[int, Block] = {}
    for u, conf in configs.items():
        for g in labelings(conf):
            gen = LabeledGenerator(g, *gradings(d, g))
            gens[gen.key] = gen
            basis = blocks.setdefault(gen.gr_q, Block()).bases.setdefault(gen.gr_h, [])
            where[(u, g.labels)] = (gen.gr_q, gen.gr_h, len(basis))
            basis.append(gen.key)

    triplets: dict[tuple[int, int], list] = {}
    for v, cv in configs.items():
        for i in range(n):
            if v[i]:
                continue
            u = v[:i] + (1,) + v[i + 1:]
            sign = s0_sign(u, v)
            for y, x in _edge_entries(cv, configs[u], i):
                j, h, col = where[(v, y)]
                j2, h2, row = where[(u, x)]
                assert j2 == j and h2 == h + 1, "differential must preserve gr_q and raise gr_h"
                triplets.setdefault((j, h), []).append((row, col, sign))

    for (j, h), trips in triplets.items():
        b = blocks[j]
        b.maps[h] = SparseMatrix.from_triplets(b.dim(h + 1), b.dim(h), trips)
    return BigradedComplex(dict(sorted(blocks.items())), 1, gens)


def d_squared_check(c: BigradedComplex) -> bool:
    """True iff every composite of consecutive maps vanishes."""
    return not d_squared_failures(c)


def d_squared_failures(c: BigradedComplex) -> list[tuple[int, int]]:
    bad = []
    step = c.direction
    for j, b in c.blocks.items():
        for i, m in b.maps.items():
            nxt = b.maps.get(i + step)
            if nxt is None or m.is_zero():
                continue
            if not (nxt @ m).is_zero():
                bad.append((i, j))
    return sorted(bad)
