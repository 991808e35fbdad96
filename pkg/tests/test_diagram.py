import pytest

from flowspine.cmap import CombinatorialMap, cycles
from flowspine.diagram import (DsDiagram, InvalidDiagram, classify_edge_types, classify_vertex_types,
                               derive_presentation, is_positive, mirror, validate)
from flowspine.eword import build_diagram, passage_word
from flowspine.formats import format_diagram, parse_diagram


def test_abalone_map_counts(abalone):
    m = abalone.map
    assert len(m.vertices) == 4
    assert m.dart_count // 2 == 6
    assert len(m.faces) == 4
    assert m.euler_characteristic() == 2


def test_abalone_valid(abalone):
    rep = validate(abalone)
    assert rep.ok, rep.problems
    assert (rep.n_vertices, rep.n_edges, rep.n_regions) == (1, 2, 2)


def test_deleting_an_edge_label_is_reported(abalone):
    text = format_diagram(abalone)
    lines = [ln for ln in text.splitlines() if not ln.startswith("elabel 2 ")]
    rep = validate(parse_diagram("\n".join(lines)))
    assert not rep.ok
    assert any("label multiplicity ≠ 3" in p for p in rep.problems)


def test_swapped_pairing_is_a_word_mismatch(abalone):
    (r1, (i1, o1)), (r2, (i2, o2)) = sorted(abalone.regions.items())
    bad = DsDiagram(abalone.map, abalone.e_cycle, abalone.edge_labels, abalone.vertex_labels,
                    {r1: (i1, o2), r2: (i2, o1)})
    rep = validate(bad)
    assert not rep.ok
    assert any("boundary-word mismatch" in p for p in rep.problems)


def test_abelianised_boundaries(abalone):
    p = derive_presentation(abalone)
    A = p.incidence_matrix()
    assert A == [[1, 0], [2, -1]]
    # the small region is bounded by e2 alone, against its orientation
    assert p.regions[2] == [((2, -1),)]


def test_presentation_invariants(abalone):
    p = derive_presentation(abalone)
    assert p.problems() == []
    for e, signs in p.incidences().items():
        assert len(signs) == 3 and len(set(signs)) == 2


def test_types_of_abalone_and_mirror(abalone):
    assert classify_vertex_types(abalone) == {1: "l"}
    assert is_positive(abalone)
    mir = mirror(abalone)
    assert validate(mir).ok
    assert classify_vertex_types(mir) == {1: "r"}
    assert not is_positive(mir)
    assert set(classify_edge_types(abalone).values()) <= set("abcd")
    assert set(classify_edge_types(mir).values()) <= set("abcd")


def test_mirror_swaps_edge_types_a_and_d(abalone):
    # reversing E swaps the tail and head of every E-copy
    swap = {"a": "d", "d": "a", "b": "b", "c": "c"}
    t = classify_edge_types(abalone)
    assert classify_edge_types(mirror(abalone)) == {e: swap[x] for e, x in t.items()}


def test_invalid_diagram_operations_raise(abalone):
    text = format_diagram(abalone)
    broken = parse_diagram("\n".join(ln for ln in text.splitlines() if not ln.startswith("vlabel")))
    assert not validate(broken).ok
    with pytest.raises(InvalidDiagram):
        derive_presentation(broken)


def test_passage_word_round_trip(catalog):
    for d in catalog.diagrams.values():
        passages, chir, eids = passage_word(d)
        again = build_diagram(passages, chir, eids)
        assert format_diagram(again) == format_diagram(d)


def test_map_problems_detected():
    assert CombinatorialMap((), ()).problems() == ["empty map"]
    bad = CombinatorialMap((0, 2, 1), (1, 2, 0))
    assert "alpha has fixed point" in bad.problems()
    # planar theta graph, then the same graph with the other rotation at one vertex (a torus)
    alpha = (3, 5, 4, 0, 2, 1)
    sigma = (1, 2, 0, 4, 5, 3)
    theta = CombinatorialMap(alpha, sigma)
    assert theta.problems() == []
    torus = CombinatorialMap((3, 4, 5, 0, 1, 2), sigma)
    assert any("not a sphere" in p for p in torus.problems())
    two = CombinatorialMap(alpha + tuple(a + 6 for a in alpha), sigma + tuple(s + 6 for s in sigma))
    assert "map is not connected" in two.problems()


def test_cycles_start_at_minimum():
    assert cycles((1, 2, 0, 4, 3)) == [(0, 1, 2), (3, 4)]


def test_vertex_passed_once_is_rejected():
    with pytest.raises(InvalidDiagram):
        build_diagram([(0, True), (1, False)], {0: "l", 1: "l"})
