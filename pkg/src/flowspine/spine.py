"""Abstract branched spines: vertices, oriented edges, regions with boundary words."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass


@dataclass(frozen=True, eq=False)
class SpinePresentation:
    vertices: tuple
    # eid -> (tail vertex, head vertex) for an arc, None for a circle
    edges: dict
    # rid -> list of cyclic boundary words, each a tuple of (eid, +1 | -1)
    regions: dict

    @property
    def n_vertices(self):
        return len(self.vertices)

    @property
    def n_edges(self):
        return len(self.edges)

    @property
    def n_regions(self):
        return len(self.regions)

    def euler_characteristic(self) -> int:
        return self.n_vertices - self.n_edges + self.n_regions

    def arc_edges(self):
        return [e for e in sorted(self.edges) if self.edges[e] is not None]

    def circle_edges(self):
        return [e for e in sorted(self.edges) if self.edges[e] is None]

    def incidences(self) -> dict:
        """eid -> list of signs with which it appears in region boundaries."""
        out = {e: [] for e in self.edges}
        for words in self.regions.values():
            for word in words:
                for e, s in word:
                    out.setdefault(e, []).append(s)
        return out

    def incidence_matrix(self):
        """Rows by sorted edge id, columns by sorted region id: signed multiplicities."""
        eids = sorted(self.edges)
        rids = sorted(self.regions)
        row = {e: k for k, e in enumerate(eids)}
        A = [[0] * len(rids) for _ in eids]
        for c, rid in enumerate(rids):
            for word in self.regions[rid]:
                for e, s in word:
                    A[row[e]][c] += s
        return A

    def spanning_tree(self) -> list:
        """Lowest-id-first maximal tree over the arc edges (Kruskal order)."""
        parent = {v: v for v in self.vertices}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        tree = []
        for e in self.arc_edges():
            a, b = (find(v) for v in self.edges[e])
            if a != b:
                parent[a] = b
                tree.append(e)
        return tree

    def is_special(self) -> bool:
        """All edges arcs, every region bounded by one word, at least one vertex."""
        return (bool(self.vertices) and not self.circle_edges()
                and all(len(ws) == 1 for ws in self.regions.values()))

    def problems(self, closed=True) -> list:
        out = []
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            out.append("duplicate vertex id")
        for e, ends in self.edges.items():
            if ends is not None and not set(ends) <= vs:
                out.append(f"edge {e} joins unknown vertices {ends}")
        for rid, words in self.regions.items():
            if not words:
                out.append(f"region {rid} has no boundary word")
            for word in words:
                for e, s in word:
                    if e not in self.edges:
                        out.append(f"region {rid} mentions unknown edge {e}")
                    if s not in (1, -1):
                        out.append(f"region {rid}: sign {s} is not ±1")
                if self.edges and not _word_closes(word, self.edges):
                    out.append(f"region {rid}: boundary word does not close up")
        for e, signs in self.incidences().items():
            if e not in self.edges:
                continue
            if len(signs) != 3:
                out.append(f"edge {e} has boundary multiplicity {len(signs)} ≠ 3")
            elif len(set(signs)) == 1:
                out.append(f"edge {e}: three incidences induce the same orientation (no branching)")
        if closed and self.euler_characteristic() != 1:
            out.append(f"Euler count n_v - m + n = {self.euler_characteristic()} ≠ 1")
        return out

    def signature(self):
        """Comparable summary: counts and sorted incidence multiset."""
        return (self.n_vertices, self.n_edges, self.n_regions,
                tuple(sorted(Counter(s for ss in self.incidences().values() for s in ss).items())))


def _word_closes(word, edges) -> bool:
    """Consecutive letters must meet at a common vertex (circle edges close on themselves)."""
    if not word:
        return False
    ends = []
    for e, s in word:
        if e not in edges:
            return True  # reported separately
        arc = edges[e]
        if arc is None:
            ends.append((None, None))
        else:
            t, h = arc
            ends.append((t, h) if s > 0 else (h, t))
    n = len(ends)
    for k in range(n):
        nxt = ends[(k + 1) % n]
        if ends[k][1] != nxt[0]:
            return False
    return True
