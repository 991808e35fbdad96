"""Planar drawings of DS-diagrams as DOT or SVG.

The E-cycle is the unit circle traversed counterclockwise, so the inside faces
land inside it.  Inside vertices sit at the barycentric (Tutte) positions with
the E-vertices pinned; outside vertices get the same treatment in a reflected
disk and are then inverted through the circle.  Weak springs towards
distinct anchors near the centre separate vertices whose only neighbours
coincide.
"""

from __future__ import annotations

import math

import numpy as np

from .diagram import DsDiagram, require_valid


def _tutte(d: DsDiagram, free, pinned, centre_pull=0.5):
    m = d.map
    idx = {v: k for k, v in enumerate(free)}
    n = len(free)
    if n == 0:
        return {}
    L = np.zeros((n, n))
    rhs = np.zeros((n, 2))
    for v in free:
        i = idx[v]
        # a weak spring to a per-vertex anchor near the centre keeps symmetric
        # diagrams from collapsing onto one point
        t = 2 * math.pi * i / n + 0.3
        L[i, i] += centre_pull
        rhs[i] += centre_pull * 0.3 * np.array([math.cos(t), math.sin(t)])
        for x in m.vertices[v]:
            u = m.vertex(m.alpha[x])
            L[i, i] += 1
            if u in idx:
                L[i, idx[u]] -= 1
            else:
                rhs[i] += pinned[u]
    sol = np.linalg.solve(L, rhs)
    return {v: tuple(sol[idx[v]]) for v in free}


def layout(d: DsDiagram) -> dict:
    """Graph vertex -> (x, y)."""
    require_valid(d)
    m = d.map
    k = len(d.e_cycle)
    pos = {}
    for i, x in enumerate(d.e_cycle):
        t = 2 * math.pi * i / k + math.pi / 2
        pos[m.vertex(x)] = (math.cos(t), math.sin(t))
    inner, outer = [], []
    for v in sorted(m.vertices):
        if v in pos:
            continue
        (inner if m.left_face(m.vertices[v][0]) in d.inside_faces else outer).append(v)
    pos.update(_tutte(d, inner, pos))
    reflected = {v: (x, -y) for v, (x, y) in pos.items() if v in d.e_vertices}
    for v, (x, y) in _tutte(d, outer, reflected).items():
        r2 = max(x * x + y * y, 1.0 / 9.0)
        pos[v] = (x / r2, -y / r2)
    return pos


def _fmt(x) -> str:
    s = f"{x:.4f}"
    return "0.0000" if s == "-0.0000" else s


def _edge_label(d, x):
    eid, kind, _ = d.dart_info[x]
    return f"e{eid}{'' if kind == 'E' else kind.lower()}"


def render_dot(d: DsDiagram) -> str:
    pos = layout(d)
    m = d.map
    out = ["digraph ds {", '  node [shape=point, width=0.08];', "  edge [arrowsize=0.5, fontsize=9];"]
    for v in sorted(m.vertices):
        x, y = pos[v]
        w = d.vertex_label_of[v]
        out.append(f'  v{v} [pos="{_fmt(2 * x)},{_fmt(2 * y)}!", xlabel="w{w}"];')
    for eid in sorted(d.edge_labels):
        for x in d.edge_labels[eid]:
            a, b = m.vertex(x), m.vertex(m.alpha[x])
            style = ", penwidth=2" if x in d.e_darts else ""
            out.append(f'  v{a} -> v{b} [label="{_edge_label(d, x)}"{style}];')
    out.append("}")
    return "\n".join(out) + "\n"


def render_svg(d: DsDiagram) -> str:
    pos = layout(d)
    m = d.map
    scale = 100.0

    def pt(v):
        x, y = pos[v]
        return x * scale, -y * scale

    lo = min(min(p) for p in pos.values()) * scale - 40
    hi = max(max(p) for p in pos.values()) * scale + 40
    size = hi - lo
    out = [
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{_fmt(lo)} {_fmt(lo)} {_fmt(size)} {_fmt(size)}" font-family="sans-serif" font-size="9">',
        f'<circle cx="0" cy="0" r="{_fmt(scale)}" fill="none" stroke="#bbb" stroke-dasharray="3 3"/>',
    ]
    seen_pairs = {}
    for eid in sorted(d.edge_labels):
        for x in d.edge_labels[eid]:
            a, b = m.vertex(x), m.vertex(m.alpha[x])
            key = (min(a, b), max(a, b))
            k = seen_pairs.get(key, 0)
            seen_pairs[key] = k + 1
            (x1, y1), (x2, y2) = pt(a), pt(b)
            mx, my = (x1 + x2) / 2, (y1 + y2) / 2
            if x in d.e_darts:
                # counterclockwise arc of the unit circle (y is flipped in SVG)
                path = (f"M {_fmt(x1)} {_fmt(y1)} A {_fmt(scale)} {_fmt(scale)} 0 0 0 "
                        f"{_fmt(x2)} {_fmt(y2)}")
                t = math.atan2(-(y1 + y2) / 2, (x1 + x2) / 2) if (x1 + x2, y1 + y2) != (0, 0) \
                    else math.atan2(-y1, x1) + math.pi / 2
                lx, ly = 1.12 * scale * math.cos(t), -1.12 * scale * math.sin(t)
            elif a == b:
                # loop: bulge away from the origin
                r = math.hypot(x1, y1) or 1.0
                ux, uy = x1 / r, y1 / r
                cx, cy = x1 + (40 + 15 * k) * ux, y1 + (40 + 15 * k) * uy
                c1 = (cx - 20 * uy, cy + 20 * ux)
                c2 = (cx + 20 * uy, cy - 20 * ux)
                path = f"M {_fmt(x1)} {_fmt(y1)} C {_fmt(c1[0])} {_fmt(c1[1])} {_fmt(c2[0])} {_fmt(c2[1])} {_fmt(x2)} {_fmt(y2)}"
                lx, ly = cx, cy
            else:
                dx, dy = x2 - x1, y2 - y1
                n = math.hypot(dx, dy) or 1.0
                off = 18 * ((k + 1) // 2) * (1 if k % 2 else -1) if k else 0
                cx, cy = mx - off * dy / n, my + off * dx / n
                path = f"M {_fmt(x1)} {_fmt(y1)} Q {_fmt(cx)} {_fmt(cy)} {_fmt(x2)} {_fmt(y2)}"
                lx, ly = (mx + cx) / 2, (my + cy) / 2
            width = 2.0 if x in d.e_darts else 1.0
            colour = "#c0392b" if x in d.e_darts else "#333"
            out.append(f'<path class="edge" d="{path}" fill="none" stroke="{colour}" stroke-width="{width}"/>')
            out.append(f'<text x="{_fmt(lx)}" y="{_fmt(ly)}" text-anchor="middle">{_edge_label(d, x)}</text>')
    for v in sorted(m.vertices):
        x, y = pt(v)
        out.append(f'<circle class="vertex" cx="{_fmt(x)}" cy="{_fmt(y)}" r="3.5" fill="black"/>')
        out.append(f'<text x="{_fmt(x + 5)}" y="{_fmt(y - 5)}">w{d.vertex_label_of[v]}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render(d: DsDiagram, fmt: str = "svg") -> str:
    if fmt == "dot":
        return render_dot(d)
    if fmt == "svg":
        return render_svg(d)
    raise ValueError(f"unknown format {fmt!r}; use dot or svg")
