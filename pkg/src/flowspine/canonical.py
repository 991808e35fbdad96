"""Canonical codes for DS-diagrams up to orientation-preserving isomorphism.

Isomorphisms must respect alpha, sigma (so the sphere orientation), the
directed E-cycle, the copy structure of spine-edge labels and the region
pairing.  Label names and dart numbers are forgotten.
"""

from __future__ import annotations

import struct
from collections import deque

from .cmap import CombinatorialMap
from .diagram import DsDiagram, require_valid

_KIND = {"E": 0, "I": 1, "O": 2}


def _code_from(d: DsDiagram, root) -> tuple:
    m = d.map
    num = {root: 0}
    order = [root]
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y in (m.alpha[x], m.sigma[x]):
            if y not in num:
                num[y] = len(order)
                order.append(y)
                queue.append(y)
    info = d.dart_info
    vl = d.vertex_label_of
    rf = d.region_of_face
    edge_names, vertex_names, region_names = {}, {}, {}
    flat = []
    for x in order:
        eid, kind, fwd = info[x]
        w = vl[m.vertex(x)]
        r = rf[m.left_face(x)]
        flat += [
            num[m.alpha[x]],
            num[m.sigma[x]],
            _KIND[kind],
            int(fwd),
            edge_names.setdefault(eid, len(edge_names)),
            vertex_names.setdefault(w, len(vertex_names)),
            region_names.setdefault(r, len(region_names)),
        ]
    return tuple(flat)


def canonical_code(d: DsDiagram) -> bytes:
    """Lexicographically least breadth-first encoding over all forward E-dart roots,
    packed as big-endian 32-bit words after a length prefix."""
    require_valid(d)
    best = min(_code_from(d, r) for r in d.e_cycle)
    return struct.pack(f">I{len(best)}I", d.map.dart_count, *best)


def relabel(d: DsDiagram, dart_perm, edge_names=None, vertex_names=None, region_names=None,
            graph_vertex_names=None, e_shift=0) -> DsDiagram:
    """Same diagram with renumbered darts and renamed labels (used for invariance checks).

    ``dart_perm[x]`` is the new number of dart ``x``; faces keep being named by
    their minimal dart, so region face names are recomputed.
    """
    m = d.map
    n = m.dart_count
    inv = [0] * n
    for x, y in enumerate(dart_perm):
        inv[y] = x
    gv = graph_vertex_names or {}
    alpha = tuple(dart_perm[m.alpha[inv[y]]] for y in range(n))
    sigma = tuple(dart_perm[m.sigma[inv[y]]] for y in range(n))
    vids = tuple(gv.get(m.vertex(inv[y]), m.vertex(inv[y])) for y in range(n))
    cm = CombinatorialMap(alpha, sigma, vids)
    k = e_shift % len(d.e_cycle)
    ecyc = tuple(dart_perm[x] for x in d.e_cycle[k:] + d.e_cycle[:k])
    en = edge_names or {}
    vn = vertex_names or {}
    rn = region_names or {}
    elabels = {en.get(e, e): tuple(dart_perm[x] for x in ds) for e, ds in d.edge_labels.items()}
    vlabels = {vn.get(w, w): tuple(gv.get(v, v) for v in vs) for w, vs in d.vertex_labels.items()}
    regions = {rn.get(r, r): (cm.left_face(dart_perm[fi]), cm.left_face(dart_perm[fo]))
               for r, (fi, fo) in d.regions.items()}
    return DsDiagram(cm, ecyc, elabels, vlabels, regions)
