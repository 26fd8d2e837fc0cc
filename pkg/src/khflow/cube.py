"""Resolution configurations over the cube of smoothings.

Every configuration here is anchored to a :class:`~khflow.pd.LinkDiagram` and
a cube vertex ``u``: circles are the cycles of strand arcs left after
smoothing each crossing according to ``u``, and arcs sit at (a subset of) the
0-resolved crossings.  Surgery along an arc flips its bit and retraces.
"""

from __future__ import annotations

import enum
import functools
import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BitError, DiagramMismatch, DimensionError
from .pd import LinkDiagram


class Label(enum.IntEnum):
    PLUS = 0
    MINUS = 1

    def __str__(self) -> str:
        return "+" if self is Label.PLUS else "-"


PLUS, MINUS = Label.PLUS, Label.MINUS


class EdgeKind(enum.Enum):
    MERGE = "merge"
    SPLIT = "split"


@dataclass(frozen=True)
class Circle:
    id: int
    edges: frozenset


@dataclass(frozen=True)
class Arc:
    crossing: int
    circles: tuple[int, ...]


@dataclass(frozen=True)
class CubeEdge:
    kind: EdgeKind
    before: tuple[int, ...]
    after: tuple[int, ...]


@dataclass(frozen=True)
class ResolutionConfiguration:
    diagram: LinkDiagram
    vertex: tuple[int, ...]
    circles: tuple[Circle, ...]
    arcs: tuple[Arc, ...]

    @property
    def index(self) -> int:
        return len(self.arcs)

    @property
    def circle_ids(self) -> tuple[int, ...]:
        return tuple(c.id for c in self.circles)

    @property
    def arc_crossings(self) -> tuple[int, ...]:
        return tuple(a.crossing for a in self.arcs)

    def surger(self, crossings: Iterable[int]) -> "ResolutionConfiguration":
        """Surgery along the arcs at ``crossings``; the other arcs are kept."""
        chosen = set(crossings)
        missing = chosen - set(self.arc_crossings)
        if missing:
            raise BitError(f"no arc at crossing(s) {sorted(missing)}")
        v = list(self.vertex)
        for i in chosen:
            v[i] = 1
        keep = [i for i in self.arc_crossings if i not in chosen]
        return restrict_arcs(resolve(self.diagram, v), keep)


@dataclass(frozen=True)
class LabeledConfiguration:
    config: ResolutionConfiguration
    labels: tuple[Label, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.config.circles):
            raise DimensionError("need exactly one label per circle")

    @property
    def vertex(self) -> tuple[int, ...]:
        return self.config.vertex

    @property
    def labels_by_id(self) -> dict[int, Label]:
        return dict(zip(self.config.circle_ids, self.labels))

    def __str__(self) -> str:
        u = "".join(map(str, self.vertex))
        return u + "|" + "".join(str(x) for x in self.labels)


# --------------------------------------------------------------------------

def _check_vertex(d: LinkDiagram, u: Sequence[int]) -> tuple[int, ...]:
    u = tuple(int(b) for b in u)
    if len(u) != len(d.crossings):
        raise DimensionError(f"vertex has length {len(u)}, diagram has {len(d.crossings)} crossings")
    if any(b not in (0, 1) for b in u):
        raise BitError(f"vertex coordinates must be 0 or 1: {u}")
    return u


def circle_partition(d: LinkDiagram, u: Sequence[int]) -> dict[int, int]:
    """Map each strand arc to the id (smallest arc) of its circle at vertex ``u``."""
    parent: dict[int, int] = {}

    def find(e):
        root = e
        while parent.setdefault(root, root) != root:
            root = parent[root]
        while parent[e] != root:
            parent[e], e = root, parent[e]
        return root

    for c, bit in zip(d.crossings, u):
        for p, q in c.smoothing(bit):
            rp, rq = find(p), find(q)
            if rp != rq:
                if rp < rq:
                    parent[rq] = rp
                else:
                    parent[rp] = rq
    return {e: find(e) for e in parent}


def resolve(d: LinkDiagram, u: Sequence[int]) -> ResolutionConfiguration:
    return _resolve(d, _check_vertex(d, u))


# configurations are immutable, so repeated surgery can share them
@functools.lru_cache(maxsize=1 << 16)
def _resolve(d: LinkDiagram, u: tuple[int, ...]) -> ResolutionConfiguration:
    owner = circle_partition(d, u)
    groups: dict[int, set] = {}
    for e, cid in owner.items():
        groups.setdefault(cid, set()).add(e)
    # crossingless components get ids -1, -2, ...
    circles = [Circle(-k, frozenset()) for k in range(d.unknots, 0, -1)]
    circles += [Circle(cid, frozenset(es)) for cid, es in sorted(groups.items())]
    arcs = []
    for i, (c, bit) in enumerate(zip(d.crossings, u)):
        if bit == 0:
            (p, _), (r, _) = c.smoothing(0)
            arcs.append(Arc(i, tuple(sorted({owner[p], owner[r]}))))
    return ResolutionConfiguration(d, u, tuple(circles), tuple(arcs))


def restrict_arcs(c: ResolutionConfiguration, crossings: Iterable[int]) -> ResolutionConfiguration:
    """The same circles with only the arcs at ``crossings``."""
    keep = set(crossings)
    missing = keep - set(c.arc_crossings)
    if missing:
        raise BitError(f"no arc at crossing(s) {sorted(missing)}")
    return ResolutionConfiguration(
        c.diagram, c.vertex, c.circles, tuple(a for a in c.arcs if a.crossing in keep)
    )


def edge_type(d: LinkDiagram, u: Sequence[int], i: int) -> CubeEdge:
    """Classify the cube edge from ``u`` in direction ``i`` as a merge or a split."""
    u = _check_vertex(d, u)
    if not 0 <= i < len(u):
        raise DimensionError(f"crossing index {i} out of range")
    if u[i] != 0:
        raise BitError(f"coordinate {i} of {u} is already 1")
    v = u[:i] + (1,) + u[i + 1:]
    before_map = circle_partition(d, u)
    after_map = circle_partition(d, v)
    c = d.crossings[i]
    (p, _), (r, _) = c.smoothing(0)
    before = tuple(sorted({before_map[p], before_map[r]}))
    (p1, _), (r1, _) = c.smoothing(1)
    after = tuple(sorted({after_map[p1], after_map[r1]}))
    if len(before) == 2 and len(after) == 1:
        return CubeEdge(EdgeKind.MERGE, before, after)
    if len(before) == 1 and len(after) == 2:
        return CubeEdge(EdgeKind.SPLIT, before, after)
    raise AssertionError(f"cube edge {u} -> {v} neither merges nor splits")


def surgery(d: LinkDiagram, u: Sequence[int], arcs: Iterable[int]) -> ResolutionConfiguration:
    """``s_A(D_L(u))``: resolve with every bit in ``arcs`` switched to 1."""
    u = _check_vertex(d, u)
    v = list(u)
    for i in arcs:
        if not 0 <= i < len(u):
            raise DimensionError(f"crossing index {i} out of range")
        if u[i] != 0:
            raise BitError(f"crossing {i} is 1-resolved at {u}; there is no arc to surger")
        v[i] = 1
    return resolve(d, v)


def maximal_surgery(c: ResolutionConfiguration) -> ResolutionConfiguration:
    return c.surger(c.arc_crossings)


def core(c: ResolutionConfiguration) -> ResolutionConfiguration:
    touched = {z for a in c.arcs for z in a.circles}
    return ResolutionConfiguration(
        c.diagram, c.vertex, tuple(z for z in c.circles if z.id in touched), c.arcs
    )


def is_basic(c: ResolutionConfiguration) -> bool:
    return core(c) == c


# --------------------------------------------------------------------------
# labels and the partial order

def labelings(c: ResolutionConfiguration) -> list[LabeledConfiguration]:
    """All labelings in canonical order (label vectors lexicographic, x+ first)."""
    return [
        LabeledConfiguration(c, labels)
        for labels in itertools.product((PLUS, MINUS), repeat=len(c.circles))
    ]


def merge_rule(a: Label, b: Label) -> list[Label]:
    if a is PLUS and b is PLUS:
        return [PLUS]
    if a is MINUS and b is MINUS:
        return []
    return [MINUS]


def split_rule(a: Label) -> list[tuple[Label, Label]]:
    if a is PLUS:
        return [(PLUS, MINUS), (MINUS, PLUS)]
    return [(MINUS, MINUS)]


def _flipped_coordinate(u, v):
    diff = [k for k, (a, b) in enumerate(zip(u, v)) if a != b]
    if len(diff) == 1 and u[diff[0]] == 0:
        return diff[0]
    return None


def covers(e: LabeledConfiguration, dd: LabeledConfiguration) -> bool:
    """True iff ``dd`` is obtained from ``e`` by one surgery allowed by the label rule."""
    if e.config.diagram != dd.config.diagram:
        raise DiagramMismatch("configurations come from different diagrams")
    i = _flipped_coordinate(e.vertex, dd.vertex)
    if i is None or i not in e.config.arc_crossings:
        return False
    old = dict(zip(e.config.circles, e.labels))
    new = dict(zip(dd.config.circles, dd.labels))
    shared = old.keys() & new.keys()
    if any(old[z] != new[z] for z in shared):
        return False
    gone = sorted((z for z in old if z not in shared), key=lambda z: z.id)
    born = sorted((z for z in new if z not in shared), key=lambda z: z.id)
    if len(gone) == 2 and len(born) == 1:
        return [new[born[0]]] == merge_rule(old[gone[0]], old[gone[1]])
    if len(gone) == 1 and len(born) == 2:
        return (new[born[0]], new[born[1]]) in split_rule(old[gone[0]])
    return False


def cover_targets(e: LabeledConfiguration, i: int) -> list[LabeledConfiguration]:
    """Every labeled configuration covering ``e`` through surgery at crossing ``i``."""
    target = e.config.surger([i])
    old = dict(zip(e.config.circles, e.labels))
    after_ids = target.circle_ids
    shared = [z for z in target.circles if z in old]
    gone = sorted((z for z in e.config.circles if z not in set(target.circles)), key=lambda z: z.id)
    born = [z for z in target.circles if z not in old]
    fixed = {z.id: old[z] for z in shared}
    if len(gone) == 2:
        options = [(lab,) for lab in merge_rule(old[gone[0]], old[gone[1]])]
    else:
        options = split_rule(old[gone[0]])
    out = []
    for opt in options:
        labels = dict(fixed)
        labels.update({z.id: lab for z, lab in zip(born, opt)})
        out.append(LabeledConfiguration(target, tuple(labels[k] for k in after_ids)))
    return out
