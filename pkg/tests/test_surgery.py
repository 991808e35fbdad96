import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flowspine.diagram import (classify_vertex_types, derive_presentation, is_positive,
                               mirror, validate)
from flowspine.homology import h1
from flowspine.surgery import (LETTERS, PATCH_RULES, ThetaState, apply_coil_surgery, apply_surgeries,
                               find_coils, hexagon_ok, meridian_of_word, parse_word, surgered_h1_order,
                               surgery_block, theta_states, theta_transfer, transversality_check,
                               transversality_trace)


def test_parse_word_aliases():
    assert parse_word("R, R̄,L̄,Lbar") == ("R", "Rb", "Lb", "Lb")
    assert parse_word("") == ()
    with pytest.raises(ValueError, match="unknown annulus"):
        parse_word("X")


def test_theta_rules():
    s = ThetaState()
    assert theta_transfer(s, "R") == ThetaState((2, 1), (1, 1))
    assert theta_transfer(s, "L") == ThetaState((1, 0), (2, 1))
    assert theta_transfer(s, "Rb") == ThetaState((0, -1), (1, 1))
    assert theta_transfer(s, "Lb") == ThetaState((1, 0), (0, 1))


def test_r_power_states():
    for k, st_ in enumerate(theta_states("R," * 5 + "R")):
        assert st_ == ThetaState((k + 1, k), (1, 1))


@pytest.mark.parametrize("a, b", [("R", "Rb"), ("Rb", "R"), ("L", "Lb"), ("Lb", "L")])
def test_inverse_pairs(a, b):
    assert theta_states([a, b])[-1] == ThetaState()


@settings(max_examples=1000, deadline=None)
@given(st.lists(st.sampled_from(LETTERS), max_size=12))
def test_unimodular(word):
    assert all(abs(s.det()) == 1 for s in theta_states(word))


def test_meridians():
    assert meridian_of_word("") == (2, 1)
    assert meridian_of_word("L") == (3, 1)
    for k in range(6):
        assert meridian_of_word(["R"] * k) == (k + 2, k + 1)


def test_transversality():
    for k in range(6):
        w = ["R"] * k
        assert transversality_check(w, (1, 2))
        assert transversality_check(w, (0, 1))
        assert transversality_trace(w, (1, 2))[-1] == (k + 2, 1)
    assert not transversality_check("", (1, 0))
    with pytest.raises(ValueError):
        transversality_check("R", (0, 0))


def test_surgered_h1_order():
    for n in range(1, 7):
        assert surgered_h1_order((n + 1, n), (-1, 0)) == n
        assert surgered_h1_order((n + 1, n), (-3, -1)) == 2 * n - 1
    assert surgered_h1_order((2, 1), (-1, 0)) == 1
    with pytest.raises(ValueError):
        surgered_h1_order((0, 0), (1, 0))


def test_abalone_has_two_coils(abalone):
    coils = find_coils(abalone, {"γ1": (-1, 0)})
    assert [(c.name, c.edge) for c in coils] == [("γ1", 1), ("γ2", 2)]
    assert coils[0].longitude == (-1, 0) and coils[1].longitude is None


def test_catalog_coils_agree_with_search(catalog, abalone):
    found = {c.edge for c in find_coils(abalone)}
    assert {c.edge for c in catalog.coils["1_1"].values()} == found


def test_surgery_block():
    block, chir = surgery_block("R,L", 5)
    assert block == [(5, False), (6, True), (6, False), (5, True)]
    assert chir == {5: "l", 6: "r"}


@pytest.mark.parametrize("word", ["R", "L", "Lb", "R,R", "R,L", "Lb,R,L"])
@pytest.mark.parametrize("edge", [1, 2])
def test_vertex_accounting(abalone, edge, word):
    w = parse_word(word)
    out = apply_coil_surgery(abalone, edge, w)
    assert validate(out).ok
    assert validate(out).n_vertices == 1 + len(w)
    types = classify_vertex_types(out)
    new = sorted(types)[1:]
    assert [types[v] for v in new] == [PATCH_RULES[a][0] for a in w]
    assert types[min(types)] == "l"
    for c in find_coils(out):
        assert hexagon_ok(out, c.edge)


def test_two_two_presentation(abalone):
    out = apply_coil_surgery(abalone, 1, "R")
    p = derive_presentation(out)
    assert (len(p.vertices), len(p.edges), len(p.regions)) == (2, 4, 3)
    assert is_positive(out)
    assert h1(p).torsion == (2,)


def test_old_labels_are_kept(abalone):
    out = apply_coil_surgery(abalone, 2, "R,R")
    assert {1, 2} <= set(out.edge_labels)
    assert set(out.edge_labels) == {1, 2, 3, 4, 5, 6}


def test_empty_word_is_identity(abalone):
    assert apply_coil_surgery(abalone, 1, "") is abalone


@pytest.mark.parametrize("edge, longitude", [(1, (-1, 0)), (2, (-3, -1))])
def test_single_coil_homology_matches_determinant(abalone, edge, longitude):
    for k in range(6):
        w = ["R"] * k
        d = apply_coil_surgery(abalone, edge, w) if k else abalone
        assert h1(derive_presentation(d)).h1_order == surgered_h1_order(meridian_of_word(w), longitude)


def test_multi_coil_words(abalone):
    cases = [([(1, "Lb"), (2, "Lb")], "0", 0),
             ([(1, "Lb"), (2, "R")], "Z/2", 0),
             ([(1, "L"), (2, "R")], "Z/4", 1)]
    for steps, label, n_r in cases:
        for order in (steps, steps[::-1]):
            d = apply_surgeries(abalone, order)
            assert h1(derive_presentation(d)).h1_label() == label
            assert list(classify_vertex_types(d).values()).count("r") == n_r


def test_non_coil_edge_rejected(catalog):
    d = catalog.diagrams["2_2"]
    bad = [e for e in d.edge_labels if e not in {c.edge for c in find_coils(d)}]
    assert bad
    with pytest.raises(ValueError, match="hexagon word mismatch"):
        apply_coil_surgery(d, bad[0], "R")
    with pytest.raises(ValueError, match="no spine edge"):
        apply_coil_surgery(d, 99, "R")


def test_surgery_on_mirror_keeps_the_r_vertex(abalone):
    m = mirror(abalone)
    coils = find_coils(m)
    assert coils
    out = apply_coil_surgery(m, coils[0], "R")
    assert validate(out).ok
    types = classify_vertex_types(out)
    assert types[min(types)] == "r" and not is_positive(out)
