"""Planar-diagram (PD) codes for oriented links.

Convention: each crossing ``X(a,b,c,d)`` lists its four incident strand arcs
counterclockwise, starting from the arc on which the under-strand enters.  The
under-strand therefore runs ``a -> c`` and the over-strand joins ``b`` and
``d``.  A crossing is positive when the over-strand runs ``d -> b``.

Grammar (see README for the full description)::

    pd    := ["PD" open] term* [close]
    term  := "X" open int "," int "," int "," int close
           | "U"                     crossingless unknot component
           | "O" open int "," int close
                                     arc e flows into crossing k (1-based)
    open  := "(" | "["      close := ")" | "]"

Terms are separated by whitespace and/or commas.  Lines whose first
non-blank character is ``%`` are comments.

Orientation comes from the under-strand data whenever a component passes
under at least once.  A component that only ever passes over is oriented by
an ``O`` term if present, otherwise by strand-number succession
(``i -> i+1``), and on a tie so that its first crossing in textual order is
positive.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import PDSyntaxError, TopologyError

# Slot pairs joined by each smoothing of X(a,b,c,d).  The 0-resolution is the
# Kauffman A-smoothing.
SMOOTHINGS = {
    0: ((0, 1), (2, 3)),
    1: ((0, 3), (1, 2)),
}


@dataclass(frozen=True)
class Crossing:
    id: int
    incident: tuple[int, int, int, int]

    def smoothing(self, bit: int) -> tuple[tuple[int, int], tuple[int, int]]:
        """Strand-arc pairs joined by the ``bit``-resolution of this crossing."""
        (p, q), (r, s) = SMOOTHINGS[bit]
        x = self.incident
        return (x[p], x[q]), (x[r], x[s])


@dataclass(frozen=True)
class LinkDiagram:
    crossings: tuple[Crossing, ...]
    signs: tuple[int, ...]
    unknots: int = 0
    n_components: int = field(default=0, compare=False)

    def __len__(self) -> int:
        return len(self.crossings)

    @property
    def strand_count(self) -> int:
        return len({e for c in self.crossings for e in c.incident})

    @property
    def n_plus(self) -> int:
        return sum(1 for s in self.signs if s > 0)

    @property
    def n_minus(self) -> int:
        return sum(1 for s in self.signs if s < 0)

    @property
    def writhe(self) -> int:
        return sum(self.signs)

    def __str__(self) -> str:
        return serialize(self)


# --------------------------------------------------------------------------
# tokenizer

def _int(name: str) -> str:
    return r"\s*(?P<%s>\d+)\s*" % name


_TOKEN = re.compile(
    r"(?P<ws>[\s,]+)"
    r"|(?P<X>X\s*[(\[]" + ",".join(_int(f"x{i}") for i in range(4)) + r"[)\]])"
    r"|(?P<O>O\s*[(\[]" + _int("oe") + "," + _int("ok") + r"[)\]])"
    r"|(?P<U>U)(?![A-Za-z0-9_])"
)
_WRAPPER = re.compile(r"^\s*PD\s*[(\[](.*)[)\]]\s*$", re.S)


def _strip_comments(text: str) -> str:
    return "\n".join(
        "" if line.lstrip().startswith("%") else line for line in text.splitlines()
    )


def _tokenize(text: str):
    text = _strip_comments(text)
    m = _WRAPPER.match(text)
    if m:
        text = m.group(1)
    crossings, overrides, unknots = [], [], 0
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            snippet = text[pos:pos + 20].split("\n")[0]
            raise PDSyntaxError(f"unexpected input at offset {pos}: {snippet!r}")
        kind = m.lastgroup
        if kind == "X":
            nums = tuple(int(v) for v in m.group("x0", "x1", "x2", "x3"))
            if min(nums) < 1:
                raise PDSyntaxError(f"strand ids must be positive: {m.group(0)!r}")
            crossings.append(nums)
        elif kind == "O":
            e, k = int(m.group("oe")), int(m.group("ok"))
            overrides.append((e, k))
        elif kind == "U":
            unknots += 1
        pos = m.end()
    return crossings, overrides, unknots


# --------------------------------------------------------------------------
# orientation

def _dart_partners(crossings: Sequence[tuple[int, ...]]):
    occurrences: dict[int, list[tuple[int, int]]] = {}
    for x, quad in enumerate(crossings):
        for s, e in enumerate(quad):
            occurrences.setdefault(e, []).append((x, s))
    bad = sorted(e for e, occ in occurrences.items() if len(occ) != 2)
    if bad:
        detail = ", ".join(f"strand {e} appears {len(occurrences[e])} time(s)" for e in bad)
        raise TopologyError(f"{detail}; every strand must appear exactly twice")
    partner = {}
    for a, b in occurrences.values():
        partner[a] = b
        partner[b] = a
    return partner


def _trace_components(crossings, partner):
    """Arrival darts of every strand component, in traversal order."""
    seen = set()
    comps = []
    for x in range(len(crossings)):
        for s in range(4):
            start = (x, s)
            if start in seen:
                continue
            arrivals = []
            d = start
            while True:
                arrivals.append(d)
                out = (d[0], (d[1] + 2) % 4)
                seen.add(d)
                seen.add(out)
                d = partner[out]
                if d == start:
                    break
            comps.append(arrivals)
    return comps


def _reverse(arrivals):
    return [(x, (s + 2) % 4) for x, s in reversed(arrivals)]


def _succession_score(crossings, arrivals) -> int:
    labels = [crossings[x][s] for x, s in arrivals]
    return sum(1 for i in range(len(labels)) if labels[(i + 1) % len(labels)] == labels[i] + 1)


def _orient(crossings, partner, overrides):
    comps = _trace_components(crossings, partner)
    by_dart = {}
    for ci, arr in enumerate(comps):
        for d in arr:
            by_dart[d] = (ci, True)
        for d in _reverse(arr):
            by_dart[d] = (ci, False)

    forced: dict[int, bool] = {}
    for e, k in overrides:
        if not 1 <= k <= len(crossings):
            raise TopologyError(f"O({e},{k}): no crossing number {k}")
        slots = [s for s, lab in enumerate(crossings[k - 1]) if lab == e]
        if len(slots) != 1:
            raise TopologyError(f"O({e},{k}): arc {e} must meet crossing {k} exactly once")
        ci, forward = by_dart[(k - 1, slots[0])]
        if forced.get(ci, forward) != forward:
            raise TopologyError(f"O({e},{k}) contradicts another orientation override")
        forced[ci] = forward

    oriented = []
    for ci, arr in enumerate(comps):
        good = sum(1 for x, s in arr if s == 0)
        bad = sum(1 for x, s in arr if s == 2)
        if good and bad:
            raise TopologyError(
                "inconsistent orientation: the under-strand data disagree along a component"
            )
        if good or bad:
            forward = bool(good)
            if ci in forced and forced[ci] != forward:
                raise TopologyError("orientation override contradicts the under-strand data")
        elif ci in forced:
            forward = forced[ci]
        else:
            fwd = _succession_score(crossings, arr)
            rev = _succession_score(crossings, _reverse(arr))
            if fwd != rev:
                forward = fwd > rev
            else:
                first = min(arr)
                forward = first[1] == 3
        oriented.append(arr if forward else _reverse(arr))
    return oriented


def _signs_from_orientation(n: int, oriented) -> tuple[int, ...]:
    signs = [0] * n
    for arr in oriented:
        for x, s in arr:
            if s == 3:
                signs[x] = 1
            elif s == 1:
                signs[x] = -1
    return tuple(signs)


def _face_count(crossings, partner) -> int:
    seen = set()
    faces = 0
    for x in range(len(crossings)):
        for s in range(4):
            if (x, s) in seen:
                continue
            faces += 1
            d = (x, s)
            while d not in seen:
                seen.add(d)
                y, t = partner[d]
                d = (y, (t + 1) % 4)
    return faces


def _graph_components(crossings, partner) -> int:
    parent = list(range(len(crossings)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for (x, _), (y, _) in partner.items():
        parent[find(x)] = find(y)
    return len({find(i) for i in range(len(crossings))})


def _check_planar(crossings, partner) -> None:
    if not crossings:
        return
    n = len(crossings)
    faces = _face_count(crossings, partner)
    comps = _graph_components(crossings, partner)
    if faces != n + 2 * comps:
        raise TopologyError(
            f"PD code is not planar: {faces} faces, expected {n + 2 * comps} "
            f"for {n} crossings in {comps} connected piece(s)"
        )


def _build(quads, overrides=(), unknots: int = 0) -> LinkDiagram:
    quads = [tuple(q) for q in quads]
    partner = _dart_partners(quads)
    oriented = _orient(quads, partner, overrides)
    _check_planar(quads, partner)
    return LinkDiagram(
        crossings=tuple(Crossing(i, q) for i, q in enumerate(quads)),
        signs=_signs_from_orientation(len(quads), oriented),
        unknots=unknots,
        n_components=len(oriented) + unknots,
    )


# --------------------------------------------------------------------------
# public API

def parse_pd(text: str) -> LinkDiagram:
    """Parse and validate a PD code.

    Raises :class:`PDSyntaxError` on malformed input and :class:`TopologyError`
    when the code is well formed but is not an oriented planar link diagram.
    """
    quads, overrides, unknots = _tokenize(text)
    if not quads and overrides:
        raise TopologyError("orientation override given for a diagram without crossings")
    return _build(quads, overrides, unknots)


def from_crossings(quads: Iterable[Sequence[int]], unknots: int = 0) -> LinkDiagram:
    return _build(list(quads), (), unknots)


def serialize(d: LinkDiagram) -> str:
    """Inverse of :func:`parse_pd`: ``parse_pd(serialize(d)) == d``."""
    terms = ["X(%d,%d,%d,%d)" % c.incident for c in d.crossings]
    terms += ["U"] * d.unknots
    if d.crossings:
        quads = [c.incident for c in d.crossings]
        partner = _dart_partners(quads)
        for arr in _trace_components(quads, partner):
            if any(s in (0, 2) for _, s in arr):
                continue
            x = min(x for x, _ in arr)
            slot = 3 if d.signs[x] > 0 else 1
            terms.append("O(%d,%d)" % (quads[x][slot], x + 1))
    return " ".join(terms)


def mirror(d: LinkDiagram) -> LinkDiagram:
    """Switch every crossing; an involution exchanging ``n_plus`` and ``n_minus``."""
    crossings = []
    for c, s in zip(d.crossings, d.signs):
        a, b, cc, dd = c.incident
        # the old over-strand becomes the under-strand; start from where it enters
        quad = (dd, a, b, cc) if s > 0 else (b, cc, dd, a)
        crossings.append(Crossing(c.id, quad))
    return LinkDiagram(
        crossings=tuple(crossings),
        signs=tuple(-s for s in d.signs),
        unknots=d.unknots,
        n_components=d.n_components,
    )


def permute_crossings(d: LinkDiagram, order: Sequence[int]) -> LinkDiagram:
    """Reorder crossings so that new crossing ``i`` is old crossing ``order[i]``."""
    if sorted(order) != list(range(len(d))):
        raise ValueError("order must be a permutation of the crossing indices")
    return LinkDiagram(
        crossings=tuple(Crossing(i, d.crossings[j].incident) for i, j in enumerate(order)),
        signs=tuple(d.signs[j] for j in order),
        unknots=d.unknots,
        n_components=d.n_components,
    )
