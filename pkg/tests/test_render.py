import re

import pydot
import pytest

from flowspine.render import layout, render


def test_abalone_svg_has_four_vertices(abalone):
    svg = render(abalone, "svg")
    assert svg.count('class="vertex"') == 4
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")


def test_output_is_deterministic(catalog):
    for d in catalog.diagrams.values():
        assert render(d, "svg") == render(d, "svg")
        assert render(d, "dot") == render(d, "dot")


def test_dot_parses(catalog):
    for d in catalog.diagrams.values():
        (g,) = pydot.graph_from_dot_data(render(d, "dot"))
        assert len(g.get_nodes()) >= len(d.map.vertices)
        assert len(g.get_edges()) == 3 * len(d.edge_labels)


def test_layout_is_finite_and_distinct(catalog):
    for d in catalog.diagrams.values():
        pos = layout(d)
        assert len(pos) == len(d.map.vertices)
        pts = {(round(x, 6), round(y, 6)) for x, y in pos.values()}
        assert len(pts) == len(pos)


def test_e_vertices_on_unit_circle(abalone):
    pos = layout(abalone)
    for v in abalone.e_vertices:
        x, y = pos[v]
        assert abs(x * x + y * y - 1) < 1e-9


def test_no_negative_zero(abalone):
    assert not re.search(r"-0\.0000\b", render(abalone, "svg"))


def test_unknown_format(abalone):
    with pytest.raises(ValueError, match="unknown format"):
        render(abalone, "png")
