"""Building DS-diagrams from their passage sequence along the E-cycle.

A DS-diagram that follows the local vertex models is determined by the cyclic
sequence of E-cycle passages ``(spine vertex, inward)`` together with the
chirality of every spine vertex.  ``inward`` says whether the third dart at
that passage points into the inside disk.  Spine edge ``i`` is the E-copy
running from passage ``i`` to passage ``i + 1``.

Dart numbering of a built diagram: copy ``k`` (E=0, inside=1, outside=2) of
spine edge ``i`` has forward dart ``6i + 2k`` and backward dart ``6i + 2k + 1``.
"""

from __future__ import annotations

from collections import defaultdict

from .cmap import CombinatorialMap
from .diagram import DsDiagram, InvalidDiagram, classify_vertex_types, validate

_COPY = {"E": 0, "I": 1, "O": 2}


def _dart(kind, edge, head):
    return 6 * edge + 2 * _COPY[kind] + (1 if head else 0)


def vertex_rotations(passages, chirality):
    """Counterclockwise rotations of the four graph vertices of every spine vertex.

    Returns ``{wid: (x, y, inner, outer)}`` where ``x`` is the E-vertex whose
    third dart points inward, ``y`` the other E-visit, and every entry is a
    ``(passage index or None, dart triple)`` pair.
    """
    n2 = len(passages)
    pos = defaultdict(list)
    for i, (w, _) in enumerate(passages):
        pos[w].append(i)
    out = {}
    for w, idx in pos.items():
        if len(idx) != 2:
            raise InvalidDiagram([f"spine vertex {w} is passed {len(idx)} times, expected 2"])
        i1, i2 = idx
        if passages[i1][1] == passages[i2][1]:
            raise InvalidDiagram([f"spine vertex {w}: both passages have the same side"])
        i, j = (i1, i2) if passages[i1][1] else (i2, i1)
        # x: edge a comes in, edge b goes out; y: edge p comes in, edge q goes out
        a, b, p, q = (i - 1) % n2, i, (j - 1) % n2, j
        if chirality[w] == "l":
            third_x = _dart("I", q, False)
            third_y = _dart("O", a, True)
            inner = (_dart("I", p, True), _dart("I", b, False), _dart("I", a, True))
            outer = (_dart("O", q, False), _dart("O", b, False), _dart("O", p, True))
        elif chirality[w] == "r":
            third_x = _dart("I", p, True)
            third_y = _dart("O", b, False)
            inner = (_dart("I", q, False), _dart("I", b, False), _dart("I", a, True))
            outer = (_dart("O", q, False), _dart("O", a, True), _dart("O", p, True))
        else:
            raise ValueError(f"chirality must be 'l' or 'r', got {chirality[w]!r}")
        x = (i, (_dart("E", b, False), third_x, _dart("E", a, True)))
        y = (j, (_dart("E", q, False), _dart("E", p, True), third_y))
        out[w] = (x, y, (None, inner), (None, outer))
    return out


def build_diagram(passages, chirality, edge_ids=None) -> DsDiagram:
    """DS-diagram of a passage sequence.  Structural failures raise ``InvalidDiagram``;
    the result still has to pass ``validate``."""
    passages = [(w, bool(inw)) for w, inw in passages]
    n2 = len(passages)
    if n2 == 0:
        raise InvalidDiagram(["empty E-cycle"])
    if edge_ids is None:
        edge_ids = list(range(1, n2 + 1))
    if len(set(edge_ids)) != n2:
        raise InvalidDiagram(["edge ids must be distinct, one per passage"])
    rot = vertex_rotations(passages, chirality)
    nd = 6 * n2
    sigma = [None] * nd
    vid = [None] * nd
    vlabels = {}
    next_vertex = n2
    for w in sorted(rot):
        ids = []
        for slot, (p_idx, darts) in enumerate(rot[w]):
            if p_idx is None:
                v = next_vertex
                next_vertex += 1
            else:
                v = p_idx
            ids.append(v)
            for k, dd in enumerate(darts):
                if sigma[dd] is not None:
                    raise InvalidDiagram([f"dart {dd} used twice"])
                sigma[dd] = darts[(k + 1) % 3]
                vid[dd] = v
        vlabels[w] = tuple(ids)
    if any(s is None for s in sigma):
        raise InvalidDiagram(["passage sequence leaves darts unattached"])
    alpha = tuple(dd ^ 1 for dd in range(nd))
    cmap = CombinatorialMap(alpha, tuple(sigma), tuple(vid))
    e_cycle = tuple(6 * i for i in range(n2))
    elabels = {edge_ids[i]: (6 * i, 6 * i + 2, 6 * i + 4) for i in range(n2)}
    probe = DsDiagram(cmap, e_cycle, elabels, vlabels, {})
    return DsDiagram(cmap, e_cycle, elabels, vlabels, pair_regions(probe))


def pair_regions(d: DsDiagram) -> dict:
    """Pair inside with outside faces through the spine corners they contain.

    A corner of the map at dart ``x`` (between ``x`` and ``sigma x``) sits at a
    spine vertex between two spine-edge ends; each such spine corner occurs
    once inside and once outside.  Regions are numbered 1, 2, ... in order of
    first appearance on the left of the E-cycle, then by face name.
    Returns ``{}`` if the corners do not induce a bijection.
    """
    m = d.map
    info = d.dart_info
    vl = d.vertex_label_of

    def corner(x):
        e1, _, f1 = info[x]
        y = m.sigma[x]
        e2, _, f2 = info[y]
        return vl[m.vertex(x)], frozenset([(e1, f1), (e2, f2)])

    inside = d.inside_faces
    where = {}
    for x in range(m.dart_count):
        c = corner(x)
        side = m.left_face(x) in inside
        key = (c, side)
        if key in where and where[key] != m.left_face(x):
            return {}
        where[key] = m.left_face(x)
    pairing = {}
    for (c, side), f in where.items():
        if not side:
            continue
        g = where.get((c, False))
        if g is None or pairing.setdefault(f, g) != g:
            return {}
    if len(set(pairing.values())) != len(pairing) or len(pairing) != len(inside):
        return {}
    order = []
    for x in d.e_cycle:
        f = m.left_face(x)
        if f not in order:
            order.append(f)
    order += sorted(f for f in inside if f not in order)
    return {k + 1: (f, pairing[f]) for k, f in enumerate(order)}


def passage_word(d: DsDiagram):
    """Inverse of ``build_diagram``: ``(passages, chirality, edge ids)`` read off a valid diagram."""
    rep = validate(d)
    if not rep.ok:
        raise InvalidDiagram(rep.problems)
    m = d.map
    vl = d.vertex_label_of
    passages = []
    edge_ids = []
    for x in d.e_cycle:
        v = m.vertex(x)
        passages.append((vl[v], d.third_side(v) == "in"))
        edge_ids.append(d.dart_info[x][0])
    return passages, classify_vertex_types(d), edge_ids


def relabel_passages(passages, chirality):
    """First-appearance relabelling of spine vertices to 0, 1, ..."""
    names = {}
    out = []
    for w, inw in passages:
        names.setdefault(w, len(names))
        out.append((names[w], inw))
    return out, {names[w]: c for w, c in chirality.items() if w in names}
