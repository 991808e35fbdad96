from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flowspine.admissibility import (AdmissibilityCertificate, InequalitySystem, b_edge_partial_order,
                                     build_system, decide, e_path_grammar_holds, e_path_runs,
                                     fraction_str, positive_witness, witness_vector)
from flowspine.diagram import derive_presentation, mirror
from flowspine.surgery import apply_coil_surgery


def test_abalone_reduced_system(abalone):
    s = build_system(derive_presentation(abalone), reduced=True)
    assert s.variables == (1, 2)
    assert s.coeffs == ((1, 2), (0, -1))
    assert s.fixed_zero == ()
    assert s.describe() == ["+1*x1 +2*x2 > 0", "-1*x2 > 0"]


def test_abalone_full_system_is_the_same(abalone):
    p = derive_presentation(abalone)
    assert build_system(p).coeffs == build_system(p, reduced=True).coeffs


def test_abalone_feasible_and_known_witness(abalone):
    s = build_system(derive_presentation(abalone))
    cert = decide(s)
    assert cert.feasible and cert.verify(s)
    assert s.satisfied_by([3, -1])
    assert not s.satisfied_by([1, 1])
    assert cert.as_dict() == {"status": "feasible", "witness": ["3", "-1"]}


def test_opposite_rows_are_infeasible():
    s = InequalitySystem.from_rows([[1], [-1]])
    cert = decide(s)
    assert cert.status == "infeasible"
    assert cert.farkas == [1, 1]
    assert cert.verify(s)


def test_circle_presentation_is_infeasible(s2xs1):
    s = build_system(s2xs1, reduced=True)
    assert len(s.variables) == 1
    cert = decide(s)
    assert not cert.feasible and cert.verify(s)
    assert not decide(build_system(s2xs1)).feasible


def test_empty_system_is_feasible():
    assert decide(InequalitySystem((), (), ())).feasible


def test_bad_certificates_do_not_verify():
    s = InequalitySystem.from_rows([[1], [-1]])
    assert not AdmissibilityCertificate("infeasible", farkas=[1, 2]).verify(s)
    assert not AdmissibilityCertificate("infeasible", farkas=[0, 0]).verify(s)
    assert not AdmissibilityCertificate("infeasible", farkas=[-1, -1]).verify(s)
    assert not AdmissibilityCertificate("feasible", witness=[1]).verify(s)


def test_fraction_str():
    assert fraction_str(Fraction(-3, 6)) == "-1/2"
    assert fraction_str(4) == "4"


systems = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=1000, deadline=None)
@given(systems)
def test_decide_is_sound(rows):
    s = InequalitySystem.from_rows(rows)
    cert = decide(s)
    assert cert.verify(s)
    if cert.feasible:
        assert all(Fraction(v).denominator == 1 for v in cert.witness)


def _surgery_outputs(catalog):
    out = []
    for edge in (1, 2):
        for word in ("R", "L", "Lb", "R,R", "L,R", "R,Lb,L"):
            try:
                out.append(apply_coil_surgery(catalog.diagrams["1_1"], edge, word))
            except Exception:
                pass
    return out


def test_full_and_reduced_agree(catalog, s2xs1, census3):
    ps = [derive_presentation(d) for d in catalog.diagrams.values()]
    ps += [derive_presentation(d) for d in _surgery_outputs(catalog)]
    ps += [derive_presentation(e.diagram) for e in census3]
    ps.append(s2xs1)
    for p in ps:
        full, red = decide(build_system(p)), decide(build_system(p, reduced=True))
        assert full.feasible == red.feasible


def test_reduced_system_drops_tree_edges(catalog):
    p = derive_presentation(catalog.diagrams["3_6"])
    s = build_system(p, reduced=True)
    assert len(s.variables) == len(p.edges) - len(p.spanning_tree())
    assert set(s.variables).isdisjoint(s.fixed_zero)


def test_positive_witness_on_census(census3):
    for e in census3:
        s = build_system(derive_presentation(e.diagram))
        w = positive_witness(e.diagram)
        assert s.satisfied_by(witness_vector(s, w))
        assert e.certificate.feasible


def test_abalone_witness_has_plain_values(abalone):
    w = positive_witness(abalone)
    assert w == {1: Fraction(4), 2: Fraction(-1, 2)}
    assert b_edge_partial_order(abalone) == set()


def test_b_order_is_acyclic_on_census(census3):
    for e in census3:
        rel = b_edge_partial_order(e.diagram)
        assert not any((b, a) in rel for a, b in rel)
        # positive_witness raises on a cycle
        positive_witness(e.diagram)


def test_positive_witness_rejects_non_positive(abalone):
    with pytest.raises(ValueError, match="positive"):
        positive_witness(mirror(abalone))


def test_e_path_grammar(abalone, census3):
    assert e_path_runs(abalone) == ["ad"]
    assert all(e_path_grammar_holds(e.diagram) for e in census3)


def test_special_qhs_presentations_are_admissible(catalog, census3):
    from flowspine.homology import det_A_test
    for d in list(catalog.diagrams.values()) + _surgery_outputs(catalog):
        p = derive_presentation(d)
        if det_A_test(p) != 0:
            assert decide(build_system(p)).feasible
