"""Decorated resolution configurations and the Khovanov flow-category skeleton."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .cube import (
    LabeledConfiguration,
    ResolutionConfiguration,
    cover_targets,
    labelings,
    resolve,
    restrict_arcs,
)
from .errors import DimensionError, ModuliIndexError
from .flow import FlowCategorySkeleton
from .khcomplex import check_cap, differential, s0_sign, vertices
from .pd import LinkDiagram


@dataclass(frozen=True)
class DecoratedConfiguration:
    """A triple ``(D, x, y)``: ``y`` labels ``D``, ``x`` labels the surgered ``s(D)``."""

    config: ResolutionConfiguration
    x: tuple
    y: tuple

    @property
    def index(self) -> int:
        return self.config.index

    @property
    def top(self) -> ResolutionConfiguration:
        return self.config.surger(self.config.arc_crossings)

    @property
    def source(self) -> LabeledConfiguration:
        return LabeledConfiguration(self.config, self.y)

    @property
    def target(self) -> LabeledConfiguration:
        return LabeledConfiguration(self.top, self.x)

    def __str__(self) -> str:
        arcs = ",".join(str(i) for i in self.config.arc_crossings)
        return f"{self.source} -[{arcs}]-> {self.target}"


def _reachable(start: LabeledConfiguration, steps: int) -> set[LabeledConfiguration]:
    frontier = {start}
    for _ in range(steps):
        frontier = {
            t for g in frontier for i in g.config.arc_crossings for t in cover_targets(g, i)
        }
    return frontier


def decorated_configs(d: LinkDiagram, u: Sequence[int], k: int) -> list[DecoratedConfiguration]:
    """Every ``(D, x, y)`` with ``D`` spanned by ``k`` of the arcs of the configuration at ``u``."""
    base = resolve(d, u)
    if k < 0 or k > base.index:
        raise DimensionError(f"index {k} needs between 0 and {base.index} arcs at {base.vertex}")
    out = []
    for subset in itertools.combinations(base.arc_crossings, k):
        conf = restrict_arcs(base, subset)
        for src in labelings(conf):
            for tgt in sorted(_reachable(src, k), key=lambda t: t.labels):
                out.append(DecoratedConfiguration(conf, tgt.labels, src.labels))
    return out


def all_decorated(d: LinkDiagram, k: int, cap: int | None = None) -> Iterator[DecoratedConfiguration]:
    check_cap(d, cap)
    for u in vertices(len(d.crossings)):
        if len(u) - sum(u) >= k:
            yield from decorated_configs(d, u, k)


@dataclass(frozen=True)
class BoundaryPoint:
    """A broken flow ``(D, y) < (E, z) < (s(D), x)`` through surgery first at ``via``."""

    intermediate: LabeledConfiguration
    via: int
    first_sign: int
    second_sign: int

    @property
    def sign(self) -> int:
        return self.first_sign * self.second_sign


def interval_boundary(dc: DecoratedConfiguration) -> list[BoundaryPoint]:
    """Boundary points of the 1-dimensional moduli space of an index-2 configuration."""
    if dc.index != 2:
        raise ModuliIndexError(f"interval boundary needs index 2, got {dc.index}")
    src, tgt = dc.source, dc.target
    u = src.vertex
    points = []
    for i in src.config.arc_crossings:
        (j,) = [a for a in src.config.arc_crossings if a != i]
        for mid in cover_targets(src, i):
            if tgt in cover_targets(mid, j):
                points.append(BoundaryPoint(mid, i, s0_sign(mid.vertex, u), s0_sign(tgt.vertex, mid.vertex)))
    return points


def khovanov_skeleton(d: LinkDiagram, cap: int | None = None) -> FlowCategorySkeleton:
    """Objects are generators with index ``gr_h``; 0-dimensional moduli come from the differential.

    Morphisms run from the target of the differential to its source, so the
    index drops by one along every flow.
    """
    c = differential(d, cap)
    index = {key: g.gr_h for key, g in c.generators.items()}
    moduli = {}
    for block in c.blocks.values():
        for h, m in block.maps.items():
            src, dst = block.bases[h], block.bases[h + 1]
            for (row, col), v in m.entries.items():
                moduli[(dst[row], src[col])] = (1 if v > 0 else -1,) * abs(v)
    return FlowCategorySkeleton(index, moduli, name="khovanov")
