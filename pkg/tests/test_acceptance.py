"""One test per acceptance criterion, each timed and reported on its own line."""

import random
import sys
import time
from contextlib import contextmanager

import pytest
from oracles import invariant_factors

from flowspine.admissibility import build_system, decide, positive_witness, witness_vector
from flowspine.canonical import canonical_code
from flowspine.catalog import load_catalog
from flowspine.diagram import (classify_vertex_types, derive_presentation, is_positive, mirror,
                               validate)
from flowspine.enumerate import census_report, enumerate_positive
from flowspine.homology import build_chain_complex, det_A_test, h1, smith_normal_form
from flowspine.surgery import (ThetaState, apply_coil_surgery, apply_surgeries, meridian_of_word,
                               surgered_h1_order, theta_states, transversality_check,
                               transversality_trace)


@contextmanager
def criterion(log, number, title, limit):
    t0 = time.perf_counter()
    ok = False
    detail = ""
    try:
        yield
        elapsed = time.perf_counter() - t0
        ok = elapsed < limit
        detail = f"{elapsed:.2f}s (limit {limit}s)"
        assert ok, f"criterion {number} took {elapsed:.2f}s, limit {limit}s"
    except Exception as exc:
        detail = detail or f"{type(exc).__name__}: {exc}"
        raise
    finally:
        log.append(f"[criterion {number}] {'PASS' if ok else 'FAIL'} {title}: {detail}")


def _abelian(word):
    out = {}
    for e, s in word:
        out[e] = out.get(e, 0) + s
    return {e: c for e, c in out.items() if c}


def test_criterion_1_abalone(acceptance_log):
    with criterion(acceptance_log, 1, "abalone suite", 1.0):
        d = load_catalog().diagrams["1_1"]
        assert validate(d).ok
        p = derive_presentation(d)
        assert _abelian(p.regions[1][0]) == {1: 1, 2: 2}
        assert _abelian(p.regions[2][0]) == {2: -1}
        s = build_system(p)
        cert = decide(s)
        assert cert.feasible and cert.verify(s)
        assert s.satisfied_by([3, -1])
        assert classify_vertex_types(d) == {1: "l"}
        prof = h1(p)
        assert prof.betti[1] == 0 and prof.torsion == ()
        assert abs(det_A_test(p)) == 1


def test_criterion_2_meridians(acceptance_log):
    with criterion(acceptance_log, 2, "meridian arithmetic", 1.0):
        assert meridian_of_word(()) == (2, 1)
        for k in range(6):
            assert meridian_of_word(("R",) * k) == (k + 2, k + 1)
            assert theta_states(("R",) * k)[-1] == ThetaState((k + 1, k), (1, 1))
        assert meridian_of_word(("L",)) == (3, 1)
        assert theta_states(("L",))[-1] == ThetaState((1, 0), (2, 1))


def test_criterion_3_transversality(acceptance_log):
    with criterion(acceptance_log, 3, "transversality", 1.0):
        for k in range(6):
            w = ("R",) * k
            assert transversality_check(w, (1, 2))
            assert transversality_check(w, (0, 1))
            for slope in ((1, 2), (0, 1), (2, 3), (1, 5)):
                p, q = slope
                trace = transversality_trace(w, slope)
                # det[theta1 | (p, q)] after j copies of R is j(q - p) + q
                assert [a for a, _ in trace] == [j * (q - p) + q for j in range(k + 1)]
                assert all(b == q - p for _, b in trace[1:])


def test_criterion_4_lens_families(acceptance_log):
    with criterion(acceptance_log, 4, "lens families, determinant and chain complex", 10.0):
        cat = load_catalog()
        d = cat.diagrams["1_1"]
        g1, g2 = cat.coil("1_1", "γ1"), cat.coil("1_1", "γ2")
        assert (g1.longitude, g2.longitude) == ((-1, 0), (-3, -1))
        for coil, ns, expect in ((g1, range(1, 7), lambda n: n), (g2, range(2, 6), lambda n: 2 * n - 1)):
            for n in ns:
                w = ("R",) * (n - 1)
                assert surgered_h1_order(meridian_of_word(w), coil.longitude) == expect(n)
                out = apply_coil_surgery(d, coil, w)
                assert h1(derive_presentation(out)).h1_order == expect(n)


def test_criterion_5_multi_coil(acceptance_log):
    with criterion(acceptance_log, 5, "multi-coil words", 5.0):
        d = load_catalog().diagrams["1_1"]
        cases = [(((1, "Lb"), (2, "Lb")), "0"), (((1, "Lb"), (2, "R")), "Z/2"), (((1, "L"), (2, "R")), "Z/4")]
        for steps, label in cases:
            out = apply_surgeries(d, steps)
            assert validate(out).ok
            assert h1(derive_presentation(out)).h1_label() == label
        types = classify_vertex_types(apply_surgeries(d, cases[2][0]))
        assert list(types.values()).count("r") == 1


def test_criterion_6_infeasibility(acceptance_log):
    with criterion(acceptance_log, 6, "circle-edge presentation infeasible", 1.0):
        p = load_catalog().presentations["s2xs1-circle"]
        for reduced in (False, True):
            s = build_system(p, reduced)
            cert = decide(s)
            assert cert.status == "infeasible" and cert.verify(s)


def test_criterion_7_census(acceptance_log):
    with criterion(acceptance_log, 7, "census counts, homology and minimal vertices", 300.0):
        per_n = {}
        for n_max in (1, 2, 3):
            entries = enumerate_positive(n_max)
            per_n[n_max] = entries
            assert sum(1 for e in entries if e.n_vertices == n_max) == [1, 3, 9][n_max - 1]
        rep = census_report(per_n[3])
        assert rep["by_vertices"] == {"1": 1, "2": 3, "3": 9}
        assert sorted(rep["h1_by_vertices"]["2"]) == sorted(["0", "Z/2", "Z/3"])
        assert sorted(rep["h1_by_vertices"]["3"]) == sorted(
            ["0", "0", "Z/2", "Z/2", "Z/3", "Z/3", "Z/5", "Z/2 + Z/2", "Z/4"])
        assert rep["minimal_vertices"] == {"0": 1, "Z/2": 2, "Z/3": 2, "Z/5": 3, "Z/4": 3, "Z/2 + Z/2": 3}


def _random_matrix(rnd):
    r, c = rnd.randint(1, 5), rnd.randint(1, 5)
    return [[rnd.randint(-5, 5) for _ in range(c)] for _ in range(r)]


def test_criterion_8_property_suites(acceptance_log):
    from test_canonical import _random_relabel

    with criterion(acceptance_log, 8, "property suites", 60.0):
        rnd = random.Random(20261016)
        for _ in range(1000):
            M = _random_matrix(rnd)
            assert smith_normal_form(M)[0] == invariant_factors(M)

        cat = load_catalog()
        census = enumerate_positive(3)
        diagrams = list(cat.diagrams.values()) + [e.diagram for e in census]
        surgeries = []
        for edge in (1, 2):
            for k in range(6):
                surgeries.append(apply_coil_surgery(cat.diagrams["1_1"], edge, ("R",) * k))
        presentations = [derive_presentation(d) for d in diagrams + surgeries]
        presentations += list(cat.presentations.values())

        for p in presentations:
            assert build_chain_complex(p).is_complex()
            if p.is_special():
                assert (det_A_test(p) != 0) == h1(p).qhs
            full, red = decide(build_system(p)), decide(build_system(p, reduced=True))
            assert full.feasible == red.feasible

        swap = {"l": "r", "r": "l"}
        pool = diagrams + surgeries
        for i in range(1000):
            d = pool[i % len(pool)]
            assert canonical_code(_random_relabel(d, rnd)) == canonical_code(d)
        for d in pool:
            assert canonical_code(mirror(mirror(d))) == canonical_code(d)
            t = classify_vertex_types(d)
            assert classify_vertex_types(mirror(d)) == {w: swap[x] for w, x in t.items()}

        for e in census:
            assert is_positive(e.diagram)
            s = build_system(derive_presentation(e.diagram))
            assert decide(s).feasible
            assert s.satisfied_by(witness_vector(s, positive_witness(e.diagram)))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
