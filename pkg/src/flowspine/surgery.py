"""Coil surgery: theta-curve arithmetic in the (Theta, Phi) basis and diagram rewriting.

A coil sits on a spine edge ``e`` whose E-copy and inside copy border the same
inside face; an arc inside that face joins the two copies and closes up in
the spine to a curve meeting the singular set once.  Splicing annuli along
the coil inserts, for a word ``H1 ... Hk``, the passage block

    u1 u2 ... uk  uk ... u2 u1

into the E-copy of ``e`` right after its tail, where ``ui`` is a new spine
vertex.  Its first visit has the side given by the letter, its second visit
the opposite side, and its chirality is fixed by the letter.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .canonical import canonical_code
from .diagram import DsDiagram, InvalidDiagram, validate
from .eword import build_diagram, passage_word

LETTERS = ("R", "L", "Rb", "Lb")

# letter -> (chirality of the new vertex, first visit points inward)
PATCH_RULES = {
    "R": ("l", False),
    "Lb": ("l", True),
    "L": ("r", True),
    "Rb": ("r", False),
}

_ALIASES = {
    "R": "R", "L": "L", "Rb": "Rb", "Lb": "Lb",
    "R̄": "Rb", "L̄": "Lb", "R̅": "Rb", "L̅": "Lb",
    "Rbar": "Rb", "Lbar": "Lb", "r": "R", "l": "L",
}


def parse_word(text) -> tuple:
    """``"R,R,Lb"`` (or a sequence of letters) -> ``("R", "R", "Lb")``."""
    if isinstance(text, str):
        parts = [t.strip() for t in text.split(",")] if text.strip() else []
    else:
        parts = list(text)
    out = []
    for t in parts:
        if t not in _ALIASES:
            raise ValueError(f"unknown annulus letter {t!r}; use R, L, Rb, Lb")
        out.append(_ALIASES[t])
    return tuple(out)


def word_str(word) -> str:
    return ",".join(word)


@dataclass(frozen=True)
class ThetaState:
    theta1: tuple = (1, 0)
    theta2: tuple = (1, 1)

    def det(self) -> int:
        (a, b), (c, e) = self.theta1, self.theta2
        return a * e - b * c


def _add(u, v, s=1):
    return (u[0] + s * v[0], u[1] + s * v[1])


def theta_transfer(state: ThetaState, annulus: str) -> ThetaState:
    (annulus,) = parse_word([annulus])
    t1, t2 = state.theta1, state.theta2
    if annulus == "R":
        return ThetaState(_add(t1, t2), t2)
    if annulus == "L":
        return ThetaState(t1, _add(t1, t2))
    if annulus == "Rb":
        return ThetaState(_add(t1, t2, -1), t2)
    return ThetaState(t1, _add(t2, t1, -1))


def theta_states(word) -> list:
    """States before the first annulus and after each one."""
    states = [ThetaState()]
    for a in parse_word(word):
        states.append(theta_transfer(states[-1], a))
    return states


def meridian_of_word(word) -> tuple:
    s = theta_states(word)[-1]
    return _add(s.theta1, s.theta2)


def _det(u, v) -> int:
    return u[0] * v[1] - u[1] * v[0]


def transversality_trace(word, slope) -> list:
    """(det[theta1 | slope], det[theta2 | slope]) at every state."""
    return [(_det(s.theta1, slope), _det(s.theta2, slope)) for s in theta_states(word)]


def transversality_check(word, slope) -> bool:
    p, q = slope
    if (p, q) == (0, 0):
        raise ValueError("slope must be nonzero")
    return all(a > 0 and b > 0 for a, b in transversality_trace(word, slope))


def surgered_h1_order(meridian, longitude) -> int:
    if tuple(meridian) == (0, 0) or tuple(longitude) == (0, 0):
        raise ValueError("meridian and longitude must be nonzero")
    return abs(_det(meridian, longitude))


# -- coils on diagrams -------------------------------------------------------------

@dataclass(frozen=True)
class Coil:
    edge: int
    # forward darts of the E-copy and inside copy crossed by the arc
    crossings: tuple
    # faces visited by the arc
    dual_path: tuple
    name: str = ""
    longitude: tuple = field(default=None)


def hexagon_sectors(d: DsDiagram, edge) -> list:
    """Regions and sides of the six sectors around the coil point on ``edge``."""
    m = d.map
    rf = d.region_of_face
    de, di, do = d.edge_labels[edge]
    return [
        (rf[m.left_face(de)], "+"), (rf[m.right_face(di)], "+"), (rf[m.left_face(di)], "+"),
        (rf[m.right_face(de)], "-"), (rf[m.left_face(do)], "-"), (rf[m.right_face(do)], "-"),
    ]


def hexagon_ok(d: DsDiagram, edge) -> bool:
    """Sector pattern R+ A+ R+ R- A- R- (the word a3 a2 a1 a3^-1 a2^-1 a1^-1)."""
    s = hexagon_sectors(d, edge)
    r, a = s[0][0], s[1][0]
    return [x[0] for x in s] == [r, a, r, r, a, r]


def find_coils(d: DsDiagram, longitudes=None) -> list:
    """Coils whose arc stays inside a single face, named by increasing edge id."""
    rep = validate(d)
    if not rep.ok:
        raise InvalidDiagram(rep.problems)
    m = d.map
    longitudes = longitudes or {}
    out = []
    for e in sorted(d.edge_labels):
        de, di, _ = d.edge_labels[e]
        if m.left_face(de) == m.left_face(di) and hexagon_ok(d, e):
            name = f"γ{len(out) + 1}"
            out.append(Coil(e, (de, di), (m.left_face(de),), name, longitudes.get(name)))
    return out


def surgery_block(word, first_vertex):
    """Passages and chiralities spliced in for ``word``; new vertices numbered from ``first_vertex``."""
    word = parse_word(word)
    ids = [first_vertex + k for k in range(len(word))]
    first = [(ids[k], PATCH_RULES[a][1]) for k, a in enumerate(word)]
    second = [(ids[k], not PATCH_RULES[a][1]) for k, a in reversed(list(enumerate(word)))]
    return first + second, {ids[k]: PATCH_RULES[a][0] for k, a in enumerate(word)}


def apply_coil_surgery(d: DsDiagram, coil, word) -> DsDiagram:
    """Replace the coil disk by the annuli of ``word`` followed by the cap.

    Existing spine-edge and spine-vertex labels are kept (the coil edge keeps
    its label on the stretch leaving its tail); new labels continue after the
    largest existing ones.
    """
    word = parse_word(word)
    edge = coil.edge if isinstance(coil, Coil) else int(coil)
    passages, chir, eids = passage_word(d)
    if canonical_code(build_diagram(passages, chir, eids)) != canonical_code(d):
        raise InvalidDiagram(["diagram does not follow the local vertex models"])
    if edge not in d.edge_labels:
        raise ValueError(f"no spine edge {edge}")
    de, di, _ = d.edge_labels[edge]
    if d.map.left_face(de) != d.map.left_face(di) or not hexagon_ok(d, edge):
        raise ValueError(f"hexagon word mismatch: edge {edge} carries no coil")
    if not word:
        return d
    i = eids.index(edge)
    block, bchir = surgery_block(word, max(chir) + 1)
    new_passages = passages[: i + 1] + block + passages[i + 1:]
    next_e = max(eids) + 1
    new_eids = eids[: i + 1] + list(range(next_e, next_e + len(block))) + eids[i + 1:]
    chir = dict(chir)
    chir.update(bchir)
    out = build_diagram(new_passages, chir, new_eids)
    rep = validate(out)
    if not rep.ok:
        raise InvalidDiagram([f"surgery ({edge}, {word_str(word)}) gives an invalid diagram"] + rep.problems)
    return out


def apply_surgeries(d: DsDiagram, steps) -> DsDiagram:
    """Apply ``[(coil edge, word), ...]`` in order."""
    for edge, word in steps:
        d = apply_coil_surgery(d, edge, word)
    return d
