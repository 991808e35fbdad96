"""DS-diagrams: trivalent sphere maps with an E-cycle and a region pairing.

Local model used throughout (derived from the vertical flow in the cut-open
ball, exits through the inside hemisphere).  Every spine edge ``e`` carries
three sheets: ``A`` (smooth with both others) and the split pair ``B``, ``C``.
Its three graph copies, all oriented like ``e``, see them as

    E-copy        left B+   right C-
    inside copy   left C+   right A+
    outside copy  left A-   right B-

where ``X+`` is the inside face and ``X-`` the outside face of region ``X``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .cmap import CombinatorialMap
from .spine import SpinePresentation

E_COPY, IN_COPY, OUT_COPY = "E", "I", "O"

EDGE_TYPES = {("in", "out"): "a", ("in", "in"): "b", ("out", "out"): "c", ("out", "in"): "d"}


class InvalidDiagram(ValueError):
    """Raised when an operation needs a valid diagram and gets something else."""

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems) or "invalid diagram")


@dataclass
class ValidationReport:
    problems: list = field(default_factory=list)
    n_vertices: int = 0
    n_edges: int = 0
    n_regions: int = 0

    @property
    def ok(self) -> bool:
        return not self.problems

    def as_dict(self):
        return {"valid": self.ok, "problems": list(self.problems),
                "vertices": self.n_vertices, "edges": self.n_edges, "regions": self.n_regions}


def _cyclic_equal(u, v) -> bool:
    if len(u) != len(v):
        return False
    if not u:
        return True
    n = len(u)
    return any(all(u[(k + i) % n] == v[i] for i in range(n)) for k in range(n))


@dataclass(frozen=True, eq=False)
class DsDiagram:
    map: CombinatorialMap
    e_cycle: tuple
    # eid -> (forward dart of E-copy, of inside copy, of outside copy)
    edge_labels: dict
    # wid -> graph vertex ids
    vertex_labels: dict
    # rid -> (inside face, outside face), faces named by minimal dart
    regions: dict

    # -- derived combinatorics ------------------------------------------------

    @cached_property
    def e_darts(self) -> frozenset:
        return frozenset(self.e_cycle)

    @cached_property
    def e_vertices(self) -> frozenset:
        return frozenset(self.map.vertex(d) for d in self.e_cycle)

    @cached_property
    def dart_info(self) -> dict:
        """dart -> (eid, copy kind, is forward dart)."""
        info = {}
        alpha = self.map.alpha
        for eid, darts in self.edge_labels.items():
            for kind, d in zip((E_COPY, IN_COPY, OUT_COPY), darts):
                info[d] = (eid, kind, True)
                info[alpha[d]] = (eid, kind, False)
        return info

    @cached_property
    def vertex_label_of(self) -> dict:
        return {v: w for w, vs in self.vertex_labels.items() for v in vs}

    @cached_property
    def e_edge_set(self) -> frozenset:
        alpha = self.map.alpha
        return frozenset(self.e_cycle) | frozenset(alpha[d] for d in self.e_cycle)

    @cached_property
    def inside_faces(self) -> frozenset:
        """Faces on the left of the E-cycle, closed under crossing non-E edges."""
        m = self.map
        seeds = {m.left_face(d) for d in self.e_cycle}
        faces_darts = {f[0]: f for f in m.faces}
        seen = set(seeds)
        stack = list(seeds)
        while stack:
            f = stack.pop()
            for d in faces_darts[f]:
                if d in self.e_edge_set:
                    continue
                g = m.right_face(d)
                if g not in seen:
                    seen.add(g)
                    stack.append(g)
        return frozenset(seen)

    @cached_property
    def outside_faces(self) -> frozenset:
        return frozenset(f[0] for f in self.map.faces) - self.inside_faces

    @cached_property
    def region_of_face(self) -> dict:
        out = {}
        for rid, (fi, fo) in self.regions.items():
            out[fi] = rid
            out[fo] = rid
        return out

    def third_dart(self, v):
        """The dart at E-vertex ``v`` that is not on the E-cycle."""
        alpha = self.map.alpha
        for d in self.map.vertices[v]:
            if d not in self.e_darts and alpha[d] not in self.e_darts:
                return d
        return None

    def third_side(self, v) -> str:
        d = self.third_dart(v)
        return "in" if self.map.left_face(d) in self.inside_faces else "out"

    def face_word(self, face) -> list:
        """Signed edge word read along ``face`` with the face on the left."""
        m = self.map
        f = next(c for c in m.faces if c[0] == face)
        out = []
        for d in f:
            eid, _, fwd = self.dart_info[d]
            out.append((eid, 1 if fwd else -1))
        return out

    def region_word(self, rid) -> list:
        return self.face_word(self.regions[rid][0])

    def outside_word(self, rid) -> list:
        """Outside face read with reversed traversal and flipped signs."""
        return [(e, -s) for e, s in reversed(self.face_word(self.regions[rid][1]))]

    @property
    def n_spine_vertices(self):
        return len(self.vertex_labels)

    @property
    def n_spine_edges(self):
        return len(self.edge_labels)

    @property
    def n_regions(self):
        return len(self.regions)

    def e_passages(self):
        """Spine vertex label at each E-cycle vertex, in E order (the tail of each E dart)."""
        return [self.vertex_label_of[self.map.vertex(d)] for d in self.e_cycle]


# -- validation -----------------------------------------------------------------

def validate(d: DsDiagram) -> ValidationReport:
    rep = ValidationReport()
    m = d.map
    rep.problems.extend(m.problems())
    if rep.problems:
        return rep
    rep.n_vertices, rep.n_edges, rep.n_regions = len(d.vertex_labels), len(d.edge_labels), len(d.regions)
    P = rep.problems
    alpha = m.alpha

    # E-cycle: simple directed closed walk
    ec = list(d.e_cycle)
    if not ec:
        P.append("empty E-cycle")
        return rep
    if any(x < 0 or x >= m.dart_count for x in ec):
        P.append("E-cycle dart out of range")
        return rep
    for i, x in enumerate(ec):
        nxt = ec[(i + 1) % len(ec)]
        if m.vertex(alpha[x]) != m.vertex(nxt):
            P.append(f"E-cycle is not a closed walk at dart {x}")
            return rep
    if len({m.vertex(x) for x in ec}) != len(ec):
        P.append("E-cycle is not simple")
        return rep
    if len({frozenset((x, alpha[x])) for x in ec}) != len(ec):
        P.append("E-cycle repeats an edge")
        return rep
    if d.inside_faces & {m.right_face(x) for x in ec}:
        P.append("E-cycle does not separate inside from outside")
        return rep

    # spine-edge labels: every graph edge exactly once, one copy of each kind
    seen = {}
    for eid, darts in d.edge_labels.items():
        if len(darts) != 3:
            P.append(f"edge label {eid}: label multiplicity ≠ 3")
            continue
        for x in darts:
            key = frozenset((x, alpha[x]))
            if key in seen:
                P.append(f"graph edge {sorted(key)} labelled twice ({seen[key]}, {eid})")
            seen[key] = eid
        de, di, do = darts
        if de not in d.e_darts:
            P.append(f"edge label {eid}: E-copy dart {de} is not a forward E-cycle dart")
        for x, side, faces in ((di, "inside", d.inside_faces), (do, "outside", d.outside_faces)):
            if x in d.e_edge_set:
                P.append(f"edge label {eid}: {side} copy lies on the E-cycle")
            elif m.left_face(x) not in faces:
                P.append(f"edge label {eid}: {side} copy is not strictly {side}")
    if len(seen) != m.dart_count // 2:
        P.append("label multiplicity ≠ 3: some graph edges carry no spine-edge label")
    if P:
        return rep

    # spine-vertex labels: two on E, one inside, one outside
    counted = {}
    for wid, vs in d.vertex_labels.items():
        if len(vs) != 4:
            P.append(f"vertex label {wid}: multiplicity {len(vs)} ≠ 4")
            continue
        on_e = [v for v in vs if v in d.e_vertices]
        off = [v for v in vs if v not in d.e_vertices]
        if len(on_e) != 2:
            P.append(f"vertex label {wid}: {len(on_e)} copies on the E-cycle, expected 2")
            continue
        sides = sorted(d.map.left_face(m.vertices[v][0]) in d.inside_faces for v in off)
        if sides != [False, True]:
            P.append(f"vertex label {wid}: needs one copy strictly inside and one strictly outside")
        for v in vs:
            if v in counted:
                P.append(f"graph vertex {v} carries two vertex labels")
            counted[v] = wid
    if set(counted) != set(m.vertices):
        P.append("some graph vertices carry no spine-vertex label")
    if P:
        return rep

    # the third dart at the two E-visits of a spine vertex: one inside, one outside
    for wid, vs in d.vertex_labels.items():
        sides = sorted(d.third_side(v) for v in vs if v in d.e_vertices)
        if sides != ["in", "out"]:
            P.append(f"vertex label {wid}: third darts at its E-visits must leave to opposite sides")

    # label endpoints agree across the three copies
    vl = d.vertex_label_of
    for eid, darts in d.edge_labels.items():
        tails = {vl[m.vertex(x)] for x in darts}
        heads = {vl[m.vertex(alpha[x])] for x in darts}
        if len(tails) != 1 or len(heads) != 1:
            P.append(f"edge label {eid}: copies join different spine vertices")

    # region pairing
    fin = [fi for fi, _ in d.regions.values()]
    fout = [fo for _, fo in d.regions.values()]
    if sorted(fin) != sorted(d.inside_faces) or sorted(fout) != sorted(d.outside_faces):
        P.append("region pairing is not a bijection between inside and outside faces")
        return rep
    for rid in d.regions:
        if not _cyclic_equal(d.region_word(rid), d.outside_word(rid)):
            P.append(f"region {rid}: boundary-word mismatch")
    if P:
        return rep

    # sheet structure along every spine edge
    rf = d.region_of_face
    for eid, (de, di, do) in d.edge_labels.items():
        b_ok = rf[m.left_face(de)] == rf[m.right_face(do)]
        c_ok = rf[m.right_face(de)] == rf[m.left_face(di)]
        a_ok = rf[m.right_face(di)] == rf[m.left_face(do)]
        if not (a_ok and b_ok and c_ok):
            P.append(f"edge label {eid}: sheets around the edge are not glued as a branched edge")

    nv, ne, nr = rep.n_vertices, rep.n_edges, rep.n_regions
    if nv - ne + nr != 1:
        P.append(f"Euler count n_v - m + n = {nv - ne + nr} ≠ 1")
    return rep


def require_valid(d: DsDiagram):
    rep = validate(d)
    if not rep.ok:
        raise InvalidDiagram(rep.problems)
    return rep


# -- derived structure ----------------------------------------------------------

def derive_presentation(d: DsDiagram) -> SpinePresentation:
    require_valid(d)
    m = d.map
    vl = d.vertex_label_of
    edges = {}
    for eid, (de, _, _) in d.edge_labels.items():
        edges[eid] = (vl[m.vertex(de)], vl[m.vertex(m.alpha[de])])
    regions = {rid: [tuple(d.region_word(rid))] for rid in d.regions}
    return SpinePresentation(vertices=tuple(sorted(d.vertex_labels)), edges=edges, regions=regions)


def classify_edge_types(d: DsDiagram) -> dict:
    """Spine edge -> 'a' | 'b' | 'c' | 'd' from the sides of the third darts at the ends of its E-copy."""
    require_valid(d)
    m = d.map
    out = {}
    for eid, (de, _, _) in d.edge_labels.items():
        tail, head = m.vertex(de), m.vertex(m.alpha[de])
        out[eid] = EDGE_TYPES[(d.third_side(tail), d.third_side(head))]
    return out


def classify_vertex_types(d: DsDiagram) -> dict:
    """Spine vertex -> 'l' | 'r'.

    At the E-visit whose third dart points inside, that dart belongs to the
    inside copy of an edge of the other E-visit.  The vertex is of l-type when
    it is the outgoing end of that copy, r-type when it is the incoming end.
    """
    require_valid(d)
    out = {}
    for wid, vs in d.vertex_labels.items():
        x = next(v for v in vs if v in d.e_vertices and d.third_side(v) == "in")
        _, _, fwd = d.dart_info[d.third_dart(x)]
        out[wid] = "l" if fwd else "r"
    return out


def is_positive(d: DsDiagram) -> bool:
    types = classify_vertex_types(d)
    return bool(types) and all(t == "l" for t in types.values())


def mirror(d: DsDiagram) -> DsDiagram:
    """Reflect the sphere; the E-cycle is reversed so the inside stays on its left."""
    require_valid(d)
    m = d.map
    alpha = m.alpha
    mm = m.mirror()
    e_cycle = tuple(alpha[x] for x in reversed(d.e_cycle))
    labels = {eid: tuple(alpha[x] for x in darts) for eid, darts in d.edge_labels.items()}
    # the face left of x is, after reflection, the face left of alpha(x)
    regions = {rid: (mm.left_face(alpha[fi]), mm.left_face(alpha[fo]))
               for rid, (fi, fo) in d.regions.items()}
    return DsDiagram(mm, e_cycle, labels, dict(d.vertex_labels), regions)
