import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from khflow import corpus
from khflow.errors import PDSyntaxError, TopologyError
from khflow.homology import khovanov_homology
from khflow.pd import from_crossings, mirror, parse_pd, permute_crossings, serialize

RIGHT_TREFOIL = "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)"
R2_UNLINK = "X(1,2,3,4) X(3,2,1,4)"


def test_corpus_round_trip(diagrams):
    for name, d in diagrams.items():
        assert parse_pd(serialize(d)) == d, name


def test_knot_atlas_wrapper_and_separators():
    a = parse_pd("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]")
    b = parse_pd("X(1,4,2,5)\nX(3,6,4,1)  X(5,2,6,3)")
    assert a == b
    assert a.signs == (-1, -1, -1)


def test_comment_lines_are_ignored():
    assert parse_pd("% a comment\n" + RIGHT_TREFOIL) == parse_pd(RIGHT_TREFOIL)


def test_signs_and_writhe():
    d = parse_pd(RIGHT_TREFOIL)
    assert d.signs == (1, 1, 1)
    assert (d.n_plus, d.n_minus, d.writhe) == (3, 0, 3)
    assert corpus.load("hopf_positive").signs == (1, 1)
    assert corpus.load("hopf_negative").signs == (-1, -1)
    assert corpus.load("figure_eight").writhe == 0


def test_component_count():
    assert corpus.load("hopf_positive").n_components == 2
    assert corpus.load("unlink2").n_components == 2
    assert corpus.load("torus_3_4").n_components == 1


def test_empty_and_unknots():
    assert len(parse_pd("")) == 0
    d = parse_pd("U U")
    assert d.unknots == 2 and not d.crossings


@pytest.mark.parametrize(
    "text",
    ["X(1,2", "X(1,2,3)", "Y(1,2,3,4)", "X(1,a,2,3)", "X(0,1,1,2)", "X(1,2,3,4) garbage"],
)
def test_syntax_errors(text):
    with pytest.raises(PDSyntaxError):
        parse_pd(text)


def test_strand_used_three_times():
    with pytest.raises(TopologyError, match="1"):
        parse_pd("X(1,1,2,1)")


def test_nonplanar_three_component_code_is_rejected():
    # every strand appears twice, but three pairwise-linked components
    # cannot be drawn with three crossings
    with pytest.raises(TopologyError, match="planar"):
        parse_pd("X(1,4,2,3) X(3,6,4,5) X(5,2,6,1)")


def test_over_only_component_override():
    d = parse_pd(R2_UNLINK)
    assert sorted(d.signs) == [-1, 1]
    flipped = parse_pd(R2_UNLINK + " O(2,1)")
    assert flipped.signs == tuple(-s for s in d.signs)
    assert "O(" in serialize(d)
    assert parse_pd(serialize(flipped)) == flipped
    # the R2 picture of two circles has the homology of the split unlink
    assert khovanov_homology(d) == khovanov_homology(parse_pd("U U"))


@pytest.mark.parametrize("override", ["O(5,1)", "O(2,3)", "O(3,1)"])
def test_bad_overrides(override):
    # not incident, no such crossing, and against the under-strand data
    with pytest.raises(TopologyError):
        parse_pd(R2_UNLINK + " " + override)


def test_override_agreeing_with_under_strand_is_accepted():
    assert parse_pd(R2_UNLINK + " O(1,1)") == parse_pd(R2_UNLINK)


def test_mirror_is_an_involution(diagrams):
    for name, d in diagrams.items():
        m = mirror(d)
        assert m.signs == tuple(-s for s in d.signs)
        assert parse_pd(serialize(m)) == m, name
        assert mirror(m) == d


def test_mirror_of_right_trefoil_is_left_trefoil_homology():
    left = corpus.load("trefoil_left")
    assert khovanov_homology(mirror(corpus.load("trefoil_right"))) == khovanov_homology(left)


def test_from_crossings():
    assert from_crossings([(1, 5, 2, 4), (3, 1, 4, 6), (5, 3, 6, 2)]) == parse_pd(RIGHT_TREFOIL)


@settings(max_examples=40, deadline=None)
@given(st.permutations(range(5)))
def test_permutation_keeps_sign_multiset(order):
    d = corpus.load("cinquefoil")
    p = permute_crossings(d, order)
    assert p.signs == tuple(d.signs[i] for i in order)
    assert parse_pd(serialize(p)) == p


def test_bad_permutation():
    with pytest.raises(ValueError):
        permute_crossings(parse_pd(RIGHT_TREFOIL), [0, 0, 1])
