import pytest

from knotrank.corpus import load_corpus
from knotrank.diagram import (Diagram, InvalidDiagram, connected_sum,
                              crossing_change, disjoint_union, is_planar,
                              mirror, oriented_resolution, parse_diagram_file,
                              parse_pd)
from knotrank.jones import jones

TREFOIL = "[[1,4,2,5],[3,6,4,1],[5,2,6,3]]"


@pytest.fixture(scope="module")
def corpus():
    return load_corpus()


def test_parse_trefoil():
    d = parse_pd(TREFOIL)
    assert len(d.crossings) == 3
    assert d.n_components == 1
    assert d.edge_count == 6


def test_parse_whitespace_tolerant():
    d = parse_pd(" [ [1, 4, 2, 5] ,[3,6,4,1],\n[5,2,6,3] ] ")
    assert d.crossings == parse_pd(TREFOIL).crossings


def test_parse_unknot_tokens():
    assert parse_pd("U").n_components == 1
    assert parse_pd("UU").n_components == 2
    assert parse_pd("U").crossings == ()


def test_parse_rejects_malformed():
    with pytest.raises(InvalidDiagram):
        parse_pd("[[1,2,3],[4,5,6]]")          # arity
    with pytest.raises(InvalidDiagram):
        parse_pd("[[1,4,2,5],[3,6,4,1]]")      # labels not twice
    with pytest.raises(InvalidDiagram):
        parse_pd("")
    with pytest.raises(InvalidDiagram):
        parse_pd("[[2,4,1,5],[3,6,4,1],[5,2,6,3]]")  # under-strand backwards


def test_components_and_writhe(corpus):
    assert corpus["3_1"].n_components == 1
    assert corpus["hopf"].n_components == 2
    assert corpus["unlink2"].n_components == 2
    assert corpus["3_1"].writhe == -3
    assert mirror(corpus["3_1"]).writhe == 3
    assert corpus["unknot"].writhe == 0
    assert corpus["4_1"].writhe == 0


def test_right_trefoil_writhe(corpus):
    right = mirror(corpus["3_1"])
    assert right.writhe == +3
    assert all(s == 1 for s in right.signs)


def test_mirror_involution_and_writhe(corpus):
    for name in ("3_1", "4_1", "6_1", "6_2", "hopf"):
        d = corpus[name]
        assert mirror(mirror(d)).writhe == d.writhe
        assert mirror(d).writhe == -d.writhe


def test_mirror_jones_identity(corpus):
    d = corpus["3_1"]
    assert jones(mirror(d)).poly == jones(d).poly.invert_variable()


def test_crossing_change_involution(corpus):
    d = corpus["4_1"]
    for i in range(4):
        dd = crossing_change(crossing_change(d, i), i)
        assert jones(dd).poly == jones(d).poly
        assert crossing_change(d, i).writhe == d.writhe - 2 * d.signs[i]
    with pytest.raises(IndexError):
        crossing_change(d, 9)


def test_trefoil_unknotting(corpus):
    for i in range(3):
        assert jones(crossing_change(corpus["3_1"], i)).poly == jones(corpus["unknot"]).poly


def test_oriented_resolution_structure(corpus):
    for name in ("3_1", "4_1", "5_1", "6_1", "6_2"):
        d = corpus[name]
        for i in range(len(d.crossings)):
            r = oriented_resolution(d, i)
            assert len(r.crossings) == len(d.crossings) - 1
            assert abs(r.n_components - d.n_components) == 1
    res = oriented_resolution(corpus["3_1"], 0)
    assert res.n_components == 2   # a Hopf link
    with pytest.raises(IndexError):
        oriented_resolution(corpus["3_1"], 3)


def test_resolution_of_kink_splits_circle():
    kink = parse_pd("[[1,2,2,1]]")
    r = oriented_resolution(kink, 0)
    assert r.n_components == 2 and not r.crossings


def test_connected_sum(corpus):
    t = corpus["3_1"]
    s = connected_sum(t, mirror(t))
    assert s.n_components == 1
    assert len(s.crossings) == 6
    # unknot is the identity
    u = connected_sum(corpus["unknot"], t)
    assert jones(u).poly == jones(t).poly
    with pytest.raises(InvalidDiagram):
        connected_sum(corpus["hopf"], t)


def test_connected_sum_explicit_edges(corpus):
    t = corpus["3_1"]
    for e1 in (1, 4, 6):
        s = connected_sum(t, corpus["4_1"], e1, 3)
        assert s.is_knot and len(s.crossings) == 7
        assert jones(s).poly == jones(connected_sum(t, corpus["4_1"])).poly


def test_disjoint_union(corpus):
    du = disjoint_union(corpus["3_1"], corpus["4_1"])
    assert du.n_components == 2
    assert len(du.crossings) == 7
    assert is_planar(du)


def test_roundtrip(corpus):
    for d in corpus.values():
        again = parse_pd(d.pd_text)
        assert again.crossings == d.crossings
        assert again.extra_components == d.extra_components


def test_file_roundtrip(corpus):
    from knotrank.diagram import format_diagram_file

    ds = [corpus["3_1"], corpus["unknot"], corpus["hopf"]]
    text = "# a comment\n" + format_diagram_file(ds)
    back = parse_diagram_file(text)
    assert [d.crossings for d in back] == [d.crossings for d in ds]
    assert [d.name for d in back] == ["3_1", "unknot", "hopf"]
    with pytest.raises(InvalidDiagram):
        parse_diagram_file("name_without_tab")


def test_corpus_contents(corpus):
    assert len(corpus["18nh_00159590"].crossings) == 18
    assert len(corpus["19nh_000305767"].crossings) == 19
    assert len(corpus["symunion24"].crossings) == 24
    assert corpus["unknot"].crossings == ()
    for d in corpus.values():
        assert is_planar(d)


def test_planarity_detects_virtual():
    # the virtual trefoil: a valid PD code whose rotation system has genus 1
    d = parse_pd("[[1,3,2,4],[2,1,3,4]]")
    assert d.is_knot
    assert not is_planar(d)
