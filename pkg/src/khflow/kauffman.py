"""Brute-force oracles: circle tracing and the Kauffman bracket state sum.

Nothing here touches the union-find resolution code or the chain complex,
so agreement between the two routes is a genuine check.

Variable conventions: the bracket lives in ``A`` with loop value
``-A^2 - A^-2``.  The Jones polynomial is reported in ``q`` through
``A^2 = -q^-1`` (equivalently ``t^(1/2) = -q``), which is the substitution
under which ``(q + 1/q) V`` equals the graded Euler characteristic of
Khovanov homology.  In this convention the right-handed trefoil has
``V = q^2 + q^6 - q^8``.
"""

from __future__ import annotations

import itertools
from collections import Counter

from .errors import DivisibilityError
from .khcomplex import check_cap
from .laurent import LaurentPolynomial
from .pd import SMOOTHINGS, LinkDiagram


def trace_circles(d: LinkDiagram, u) -> list[frozenset]:
    """Circles of the resolution ``u`` found by walking along the strands.

    Crossingless components are returned as empty sets.
    """
    quads = [c.incident for c in d.crossings]
    ends: dict[int, list] = {}
    for x, quad in enumerate(quads):
        for s, e in enumerate(quad):
            ends.setdefault(e, []).append((x, s))
    turn = {}
    for x, quad in enumerate(quads):
        for a, b in SMOOTHINGS[u[x]]:
            turn[(x, a)] = (x, b)
            turn[(x, b)] = (x, a)

    visited = set()
    circles = []
    for start in sorted(turn):
        if start in visited:
            continue
        edges = set()
        dart = start
        while dart not in visited:
            visited.add(dart)
            exit_dart = turn[dart]
            visited.add(exit_dart)
            e = quads[exit_dart[0]][exit_dart[1]]
            edges.add(e)
            a, b = ends[e]
            dart = b if a == exit_dart else a
        circles.append(frozenset(edges))
    circles += [frozenset()] * d.unknots
    return circles


def state_census(d: LinkDiagram, cap: int | None = None) -> Counter:
    """Count states by ``(number of 1-smoothings, number of circles)``."""
    check_cap(d, cap)
    census: Counter = Counter()
    for u in itertools.product((0, 1), repeat=len(d.crossings)):
        census[(sum(u), len(trace_circles(d, u)))] += 1
    return census


def kauffman_bracket(d: LinkDiagram, cap: int | None = None) -> LaurentPolynomial:
    n = len(d.crossings)
    loop = LaurentPolynomial({2: -1, -2: -1}, "A")
    total = LaurentPolynomial({}, "A")
    for (ones, circles), count in state_census(d, cap).items():
        if circles == 0:
            raise DivisibilityError("the empty diagram has no Kauffman bracket")
        weight = LaurentPolynomial({(n - ones) - ones: count}, "A")
        total = total + weight * loop ** (circles - 1)
    return total


def kauffman_jones(d: LinkDiagram, cap: int | None = None) -> LaurentPolynomial:
    """Jones polynomial from the writhe-normalised bracket, in the ``q`` convention."""
    f = kauffman_bracket(d, cap) * LaurentPolynomial({-3 * d.writhe: (-1) ** (d.writhe % 2)}, "A")
    in_a_squared = f.divide_exponents(2)
    # A^2 = -q^-1
    return LaurentPolynomial(
        {-m: c * (-1) ** (m % 2) for m, c in in_a_squared.coefficients.items()}, "q"
    )
