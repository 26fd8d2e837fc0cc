import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.functions.combinatorial.numbers import stirling

from khflow import corpus
from khflow.decorated import khovanov_skeleton
from khflow.errors import AxiomViolation, ComplexError, ResourceError
from khflow.flow import (
    FlowCategorySkeleton,
    cube_flow_category,
    d_squared_from_boundary,
    face_poset,
    floer_complex,
    verify_face_axioms,
)
from khflow.homology import homology
from khflow.jsonio import skeleton_from_json, skeleton_json


def ones(n):
    return (1,) * n


def zeros(n):
    return (0,) * n


def test_objects_and_counts():
    fc = cube_flow_category(3)
    assert len(fc.objects) == 8
    assert all(fc.index[u] == sum(u) for u in fc.objects)
    assert len(fc.moduli) == 12
    assert fc.count((1, 1, 0), (0, 1, 0)) == 1
    assert fc.count((1, 1, 0), (1, 0, 0)) == -1


def test_cap():
    with pytest.raises(ResourceError):
        cube_flow_category(11)
    with pytest.raises(ValueError):
        cube_flow_category(0)


def test_single_point_and_interval():
    p = face_poset(cube_flow_category(1), (1,), (0,))
    assert p.elements == [((1,), (0,))] and p.k == 0
    fp = face_poset(cube_flow_category(2), ones(2), zeros(2))
    boundary = [c for c in fp.elements if fp.codim(c) == 1]
    assert len(boundary) == 2 and len(set(boundary)) == 2
    assert fp.euler_characteristic() == 1


def test_hexagon():
    fp = face_poset(cube_flow_category(3), ones(3), zeros(3))
    assert fp.by_codim() == {0: 1, 1: 6, 2: 6}
    report = verify_face_axioms(fp)
    assert report.euler_characteristic == 1
    for vertex in (c for c in fp.elements if fp.codim(c) == 2):
        assert sum(1 for e in fp.elements if fp.codim(e) == 1 and fp.leq(vertex, e)) == 2
    assert sorted(set(fp.face_labels.values())) == [1, 2]


@pytest.mark.parametrize("n", range(1, 7))
def test_strata_counts_are_ordered_set_partitions(n):
    fp = face_poset(cube_flow_category(n), ones(n), zeros(n))
    expected = {d: math.factorial(d + 1) * int(stirling(n, d + 1)) for d in range(n)}
    assert fp.by_codim() == expected
    assert expected[n - 1] == math.factorial(n)
    assert fp.euler_characteristic() == 1


def test_every_moduli_space_of_small_cubes():
    for n in range(1, 6):
        fc = cube_flow_category(n)
        for a, b in fc.pairs():
            r = verify_face_axioms(face_poset(fc, a, b))
            # M(u, v) is a copy of the top moduli space of a smaller cube
            k = sum(a) - sum(b)
            assert r.strata_by_codim == face_poset(cube_flow_category(k), ones(k), zeros(k)).by_codim()


def test_deleted_chain_is_caught():
    fp = face_poset(cube_flow_category(3), ones(3), zeros(3))
    for victim in fp.elements:
        with pytest.raises(AxiomViolation) as info:
            verify_face_axioms(fp.without(victim))
        assert info.value.stratum is not None


def test_duplicate_and_mislabelled_strata_are_caught():
    fp = face_poset(cube_flow_category(3), ones(3), zeros(3))
    fp.elements.append(fp.elements[-1])
    with pytest.raises(AxiomViolation, match="unique"):
        verify_face_axioms(fp)
    fp = face_poset(cube_flow_category(3), ones(3), zeros(3))
    edge = next(iter(fp.face_labels))
    fp.face_labels[edge] = 3 - fp.face_labels[edge]
    with pytest.raises(AxiomViolation):
        verify_face_axioms(fp)


def test_wrong_endpoint_is_caught():
    fp = face_poset(cube_flow_category(2), ones(2), zeros(2))
    fp.elements.append(((1, 1), (0, 1)))
    with pytest.raises(AxiomViolation):
        verify_face_axioms(fp)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_composition_closure(data):
    n = data.draw(st.integers(2, 5))
    fc = cube_flow_category(n)
    a = data.draw(st.sampled_from(fc.objects))
    below = sorted(fc.below(a))
    if not below:
        return
    b = data.draw(st.sampled_from(below))
    further = sorted(fc.below(b))
    if not further:
        return
    c = data.draw(st.sampled_from(further))
    ab = data.draw(st.sampled_from(fc.strata(a, b)))
    bc = data.draw(st.sampled_from(fc.strata(b, c)))
    assert fc.compose(ab, bc) in fc.strata(a, c)
    assert fc.stratum_dim(fc.compose(ab, bc)) >= 0


def test_order_is_the_cube_order():
    fc = cube_flow_category(3)
    for u, v in itertools.product(fc.objects, repeat=2):
        geq = u != v and all(x >= y for x, y in zip(u, v))
        assert fc.greater(u, v) == geq
        assert bool(fc.strata(u, v)) == geq


def test_floer_complex_of_one_flow():
    c = floer_complex(cube_flow_category(1))
    assert c.direction == -1 and not c.graded
    assert c.blocks[0].maps[1].to_dense() == [[1]]
    assert homology(c).is_zero()


@pytest.mark.parametrize("n", range(1, 9))
def test_cube_complex_is_acyclic(n):
    assert homology(floer_complex(cube_flow_category(n))).is_zero()


def test_circle():
    fc = FlowCategorySkeleton({"max": 1, "min": 0}, {("max", "min"): (1, -1)})
    assert fc.count("max", "min") == 0
    h = homology(floer_complex(fc))
    assert {k: g.free_rank for k, g in h.nonzero().items()} == {(0, 0): 1, (1, 0): 1}


def test_incoherent_counts():
    fc = cube_flow_category(2)
    fc.moduli[((1, 1), (1, 0))] = (1,)
    with pytest.raises(ComplexError):
        floer_complex(fc)
    report = d_squared_from_boundary(fc)
    assert not report.ok
    (bad,) = report.unbalanced
    assert (bad.source, bad.target, bad.total) == ((1, 1), (0, 0), 2)


def test_square_boundary_report():
    report = d_squared_from_boundary(cube_flow_category(2))
    (pair,) = report.pairs
    assert pair.boundary_points == 2 and pair.even
    assert sorted(b.contribution for b in pair.broken) == [-1, 1]


def test_index_two_subpairs_of_the_cube():
    report = d_squared_from_boundary(cube_flow_category(3))
    # three weight-2 vertices above 000 and 111 above three weight-1 vertices
    assert len(report.pairs) == 6
    assert report.ok and all(p.boundary_points == 2 for p in report.pairs)


def test_skeleton_validation():
    with pytest.raises(ValueError):
        FlowCategorySkeleton({"a": 2, "b": 0}, {("a", "b"): (1,)})
    with pytest.raises(ValueError):
        FlowCategorySkeleton({"a": 1}, {("a", "b"): (1,)})
    with pytest.raises(ValueError):
        FlowCategorySkeleton({"a": 1, "b": 0}, {("a", "b"): (2,)})


def test_from_counts():
    fc = FlowCategorySkeleton.from_counts({"a": 1, "b": 0}, {("a", "b"): -3})
    assert fc.moduli[("a", "b")] == (-1, -1, -1)


def test_json_round_trip():
    fc = cube_flow_category(3)
    back = skeleton_from_json(skeleton_json(fc))
    names = {u: "".join(map(str, u)) for u in fc.objects}
    assert back.signed_counts == {(names[a], names[b]): v for (a, b), v in fc.signed_counts.items()}
    assert d_squared_from_boundary(back).ok


def test_khovanov_skeleton_is_balanced():
    fc = khovanov_skeleton(corpus.load("figure_eight"))
    report = d_squared_from_boundary(fc)
    assert report.pairs and report.ok
    assert homology(floer_complex(fc)).total_free_rank() > 0
