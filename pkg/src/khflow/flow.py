"""Combinatorial skeletons of framed flow categories.

A skeleton records objects with an integer index, and for every pair of
objects whose indices differ by one, the signed points of the 0-dimensional
moduli space between them.  Higher moduli spaces are represented only by
their stratifications: the stratum of ``Mor(a, b)`` indexed by a chain
``a = a_1 > a_2 > ... > a_k = b`` is the product of the open moduli of
consecutive elements, and has codimension ``k - 2``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping

from .errors import AxiomViolation, ComplexError, ResourceError
from .khcomplex import BigradedComplex, Block, d_squared_failures, s0_sign
from .matrix import SparseMatrix

DEFAULT_CUBE_CAP = 10

Chain = tuple


def _sorted(objs: Iterable[Hashable]) -> list:
    objs = list(objs)
    try:
        return sorted(objs)
    except TypeError:
        return sorted(objs, key=repr)


@dataclass
class FlowCategorySkeleton:
    index: dict[Hashable, int]
    moduli: dict[tuple[Hashable, Hashable], tuple[int, ...]]
    name: str = ""
    _below: dict = field(default_factory=dict, init=False, repr=False, compare=False)
    _between: dict = field(default_factory=dict, init=False, repr=False, compare=False)
    _chains: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        for (a, b), pts in self.moduli.items():
            if a not in self.index or b not in self.index:
                raise ValueError(f"moduli space {a!r} -> {b!r} refers to an unknown object")
            if self.index[a] - self.index[b] != 1:
                raise ValueError(f"0-dimensional moduli need index difference 1, got {a!r} -> {b!r}")
            if any(p not in (1, -1) for p in pts):
                raise ValueError("moduli points carry a sign of +1 or -1")
        self._succ: dict[Hashable, list] = {}
        for (a, b), pts in self.moduli.items():
            if pts:
                self._succ.setdefault(a, []).append(b)

    @classmethod
    def from_counts(cls, index: Mapping, counts: Mapping[tuple, int], name: str = "") -> "FlowCategorySkeleton":
        moduli = {k: (1 if v > 0 else -1,) * abs(v) for k, v in counts.items()}
        return cls(dict(index), moduli, name)

    @property
    def objects(self) -> list:
        return _sorted(self.index)

    @property
    def signed_counts(self) -> dict[tuple, int]:
        return {k: sum(v) for k, v in self.moduli.items()}

    def count(self, a, b) -> int:
        return sum(self.moduli.get((a, b), ()))

    def relative_dim(self, a, b) -> int:
        """``k(a, b) = mu(a) - mu(b) - 1``"""
        return self.index[a] - self.index[b] - 1

    def below(self, a) -> frozenset:
        """Objects ``b`` with ``a > b``."""
        got = self._below.get(a)
        if got is None:
            acc = set()
            for b in self._succ.get(a, ()):
                acc.add(b)
                acc |= self.below(b)
            got = self._below[a] = frozenset(acc)
        return got

    def greater(self, a, b) -> bool:
        return b in self.below(a)

    def between(self, a, b) -> list:
        key = (a, b)
        got = self._between.get(key)
        if got is None:
            got = self._between[key] = [w for w in self.below(a) if b in self.below(w)]
        return got

    def strata(self, a, b) -> list[Chain]:
        """Every chain ``a > ... > b``; empty unless ``a > b``."""
        key = (a, b)
        got = self._chains.get(key)
        if got is None:
            if not self.greater(a, b):
                got = []
            else:
                got = [(a, b)]
                for w in _sorted(self.between(a, b)):
                    got += [(a,) + rest for rest in self.strata(w, b)]
            self._chains[key] = got
        return got

    def stratum_dim(self, chain: Chain) -> int:
        return self.relative_dim(chain[0], chain[-1]) - (len(chain) - 2)

    def compose(self, left: Chain, right: Chain) -> Chain:
        if left[-1] != right[0]:
            raise ValueError("chains are not composable")
        return left + right[1:]

    def pairs(self, min_gap: int = 1) -> list[tuple]:
        out = []
        for a in self.objects:
            for b in _sorted(self.below(a)):
                if self.index[a] - self.index[b] >= min_gap:
                    out.append((a, b))
        return out


# --------------------------------------------------------------------------
# the cube

def cube_flow_category(n: int, cap: int = DEFAULT_CUBE_CAP) -> FlowCategorySkeleton:
    """Flow category of ``f_n = f_1(x_1) + ... + f_1(x_n)``: objects ``{0,1}^n``."""
    if n < 1:
        raise ValueError("the cube needs n >= 1")
    if n > cap:
        raise ResourceError(f"cube dimension {n} exceeds the cap of {cap}")
    index = {u: sum(u) for u in itertools.product((0, 1), repeat=n)}
    moduli = {}
    for u in index:
        for i in range(n):
            if u[i]:
                v = u[:i] + (0,) + u[i + 1:]
                moduli[(u, v)] = (s0_sign(u, v),)
    return FlowCategorySkeleton(index, moduli, name=f"C({n})")


# --------------------------------------------------------------------------
# face posets

@dataclass
class FacePoset:
    """Strata of the compactified moduli space between ``source`` and ``target``.

    A stratum lies in the closure of another iff its chain contains the
    other's chain.  Each codimension-1 stratum ``(a, w, b)`` is assigned to
    face ``mu(w) - mu(b)``.
    """

    skeleton: FlowCategorySkeleton
    source: Hashable
    target: Hashable
    elements: list[Chain]
    face_labels: dict[Chain, int]

    @property
    def k(self) -> int:
        return self.skeleton.relative_dim(self.source, self.target)

    def codim(self, chain: Chain) -> int:
        return len(chain) - 2

    def leq(self, c1: Chain, c2: Chain) -> bool:
        """``c1`` lies in the closure of ``c2``."""
        return set(c2) <= set(c1)

    def by_codim(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for c in self.elements:
            out[self.codim(c)] = out.get(self.codim(c), 0) + 1
        return dict(sorted(out.items()))

    def euler_characteristic(self) -> int:
        return sum((-1) ** (self.k - self.codim(c)) for c in self.elements)

    def without(self, chain: Chain) -> "FacePoset":
        return FacePoset(
            self.skeleton,
            self.source,
            self.target,
            [c for c in self.elements if c != chain],
            {c: i for c, i in self.face_labels.items() if c != chain},
        )


def face_poset(fc: FlowCategorySkeleton, a, b) -> FacePoset:
    elements = list(fc.strata(a, b))
    labels = {c: fc.index[c[1]] - fc.index[b] for c in elements if len(c) == 3}
    return FacePoset(fc, a, b, elements, labels)


@dataclass
class FaceReport:
    source: Hashable
    target: Hashable
    k: int
    strata_by_codim: dict[int, int]
    euler_characteristic: int
    checks: list[str]


def verify_face_axioms(fp: FacePoset) -> FaceReport:
    """Check the combinatorial corner-structure axioms; raise on the first failure."""
    fc = fp.skeleton
    a, b = fp.source, fp.target
    k = fp.k
    elements = set(fp.elements)
    if len(elements) != len(fp.elements):
        dup = next(c for c in fp.elements if fp.elements.count(c) > 1)
        raise AxiomViolation("stratum listed twice: decomposition is not unique", dup)
    if (a, b) not in elements:
        raise AxiomViolation("top stratum missing", (a, b))

    for c in fp.elements:
        if c[0] != a or c[-1] != b:
            raise AxiomViolation("stratum does not join source to target", c)
        for x, y in zip(c, c[1:]):
            if not fc.greater(x, y):
                raise AxiomViolation("consecutive chain elements are not ordered", c)

    # closure: every broken refinement of a stratum is again a stratum
    for c in fp.elements:
        for t, (x, y) in enumerate(zip(c, c[1:])):
            for w in fc.between(x, y):
                refined = c[: t + 1] + (w,) + c[t + 1:]
                if refined not in elements:
                    raise AxiomViolation(f"boundary stratum {refined!r} missing", c)

    for c, label in fp.face_labels.items():
        if len(c) != 3 or not 1 <= label <= k:
            raise AxiomViolation(f"face label {label} out of range 1..{k}", c)

    # (1) a codimension-d stratum lies in exactly d faces, with distinct labels
    for c in fp.elements:
        d = fp.codim(c)
        faces = [(a, w, b) for w in c[1:-1] if (a, w, b) in elements]
        labels = {fp.face_labels.get(f) for f in faces}
        if len(faces) != d or len(labels) != d or None in labels:
            raise AxiomViolation(f"codimension-{d} stratum lies in {len(labels - {None})} labelled faces", c)

    # (2) the labelled faces cover the boundary
    for c in fp.elements:
        if fp.codim(c) >= 1 and not any(fp.face_labels.get((a, w, b)) for w in c[1:-1]):
            raise AxiomViolation("boundary stratum lies in no face", c)

    # (3) the intersection of two faces is a face of both: it is covered by
    # codimension-2 strata
    grade = {w: fc.index[w] - fc.index[b] for c in fp.elements for w in c}
    for c in fp.elements:
        breaks = {grade[w]: w for w in c[1:-1]}
        for i, j in itertools.combinations(sorted(breaks), 2):
            corner = (a, breaks[j], breaks[i], b)
            if corner not in elements:
                raise AxiomViolation(f"faces {i} and {j} meet outside a codimension-2 stratum", c)

    return FaceReport(
        a, b, k, fp.by_codim(), fp.euler_characteristic(),
        ["unique decomposition", "closure", "corner count", "face cover", "face intersections"],
    )


# --------------------------------------------------------------------------
# the Floer complex

def floer_complex(fc: FlowCategorySkeleton) -> BigradedComplex:
    """Chain complex generated by the objects, with ``d[a] = sum #Mor(a, b) [b]``."""
    block = Block()
    for obj in fc.objects:
        block.bases.setdefault(fc.index[obj], []).append(obj)
    block.bases = dict(sorted(block.bases.items()))
    pos = {obj: p for basis in block.bases.values() for p, obj in enumerate(basis)}
    for mu in block.bases:
        if mu - 1 not in block.bases:
            continue
        m = SparseMatrix(len(block.bases[mu - 1]), len(block.bases[mu]))
        for (a, b), pts in fc.moduli.items():
            if fc.index[a] == mu and pts:
                m.add(pos[b], pos[a], sum(pts))
        block.maps[mu] = m
    c = BigradedComplex({0: block}, direction=-1, graded=False)
    bad = d_squared_failures(c)
    if bad:
        raise ComplexError(f"signed counts are incoherent: d^2 != 0 out of index {bad[0][0]}")
    return c


@dataclass
class BrokenFlow:
    middle: Hashable
    first: int
    second: int

    @property
    def points(self) -> int:
        return abs(self.first) * abs(self.second)

    @property
    def contribution(self) -> int:
        return self.first * self.second


@dataclass
class PairBalance:
    source: Hashable
    target: Hashable
    broken: list[BrokenFlow]
    boundary_points: int
    total: int

    @property
    def balanced(self) -> bool:
        return self.total == 0

    @property
    def even(self) -> bool:
        return self.boundary_points % 2 == 0


@dataclass
class BoundaryReport:
    pairs: list[PairBalance]

    @property
    def unbalanced(self) -> list[PairBalance]:
        return [p for p in self.pairs if not p.balanced]

    @property
    def ok(self) -> bool:
        return not self.unbalanced


def d_squared_from_boundary(fc: FlowCategorySkeleton) -> BoundaryReport:
    """Signed count of broken flows for every index-2 pair.

    Each broken flow ``a -> b -> c`` is a boundary point of the 1-dimensional
    moduli space ``Mor(a, c)``; with coherent framings the points cancel in
    pairs.
    """
    pairs = []
    for a in fc.objects:
        seconds: dict = {}
        for b in _sorted(fc._succ.get(a, ())):
            for c in fc._succ.get(b, ()):
                seconds.setdefault(c, []).append(b)
        for c in _sorted(seconds):
            broken = []
            points = 0
            for b in _sorted(seconds[c]):
                p1, p2 = fc.moduli[(a, b)], fc.moduli[(b, c)]
                broken.append(BrokenFlow(b, sum(p1), sum(p2)))
                points += len(p1) * len(p2)
            total = sum(bf.contribution for bf in broken)
            pairs.append(PairBalance(a, c, broken, points, total))
    return BoundaryReport(pairs)


def maximal_chain_count(n: int) -> int:
    return math.factorial(n)
