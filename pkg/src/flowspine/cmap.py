"""Oriented trivalent combinatorial maps on the sphere.

Darts are the integers ``0..N-1``.  ``alpha`` pairs the two darts of a graph
edge, ``sigma`` rotates counterclockwise around a vertex.  With this
orientation the face on the left of a dart ``d`` is its orbit under
``sigma^-1 . alpha``: walk along ``d`` and take the sharpest left turn.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property


def cycles(perm):
    """Cycles of a permutation given as a sequence, each starting at its minimal element."""
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = []
        d = start
        while not seen[d]:
            seen[d] = True
            cyc.append(d)
            d = perm[d]
        out.append(tuple(cyc))
    return out


def invert(perm):
    inv = [0] * len(perm)
    for i, j in enumerate(perm):
        inv[j] = i
    return tuple(inv)


@dataclass(frozen=True)
class CombinatorialMap:
    alpha: tuple
    sigma: tuple
    # graph vertex id per dart; defaults to the index of the sigma-cycle
    vertex_ids: tuple = field(default=None)

    def __post_init__(self):
        if self.vertex_ids is None:
            ids = [0] * len(self.sigma)
            for k, cyc in enumerate(cycles(self.sigma)):
                for d in cyc:
                    ids[d] = k
            object.__setattr__(self, "vertex_ids", tuple(ids))

    @property
    def dart_count(self) -> int:
        return len(self.alpha)

    @cached_property
    def sigma_inv(self):
        return invert(self.sigma)

    @cached_property
    def phi(self):
        """Face permutation: ``phi(d)`` is the next dart along the face left of ``d``."""
        return tuple(self.sigma_inv[self.alpha[d]] for d in range(self.dart_count))

    @cached_property
    def vertices(self) -> dict:
        out = {}
        for d, v in enumerate(self.vertex_ids):
            out.setdefault(v, []).append(d)
        # keep the counterclockwise order of each rotation
        for v, ds in out.items():
            start = min(ds)
            cyc = [start]
            d = self.sigma[start]
            while d != start:
                cyc.append(d)
                d = self.sigma[d]
            out[v] = tuple(cyc)
        return out

    @cached_property
    def faces(self):
        return cycles(self.phi)

    @cached_property
    def face_of(self) -> tuple:
        """Minimal dart of the face on the left of each dart (faces are named by it)."""
        out = [0] * self.dart_count
        for f in self.faces:
            for d in f:
                out[d] = f[0]
        return tuple(out)

    def vertex(self, d) -> int:
        return self.vertex_ids[d]

    def left_face(self, d) -> int:
        return self.face_of[d]

    def right_face(self, d) -> int:
        return self.face_of[self.alpha[d]]

    def edges(self):
        return [(d, self.alpha[d]) for d in range(self.dart_count) if d < self.alpha[d]]

    def euler_characteristic(self) -> int:
        return len(self.vertices) - self.dart_count // 2 + len(self.faces)

    def is_connected(self) -> bool:
        n = self.dart_count
        if n == 0:
            return False
        seen = {0}
        stack = [0]
        while stack:
            d = stack.pop()
            for e in (self.alpha[d], self.sigma[d]):
                if e not in seen:
                    seen.add(e)
                    stack.append(e)
        return len(seen) == n

    def problems(self) -> list:
        """Structural violations of the trivalent-sphere-map invariants."""
        out = []
        n = self.dart_count
        if n == 0:
            return ["empty map"]
        if sorted(self.alpha) != list(range(n)) or sorted(self.sigma) != list(range(n)):
            return ["alpha/sigma are not permutations of the darts"]
        if any(self.alpha[d] == d for d in range(n)):
            out.append("alpha has fixed point")
        if any(self.alpha[self.alpha[d]] != d for d in range(n)):
            out.append("alpha is not an involution")
        for v, ds in self.vertices.items():
            if len(ds) != 3:
                out.append(f"vertex {v} has degree {len(ds)}, expected 3")
        for cyc in cycles(self.sigma):
            if len({self.vertex_ids[d] for d in cyc}) != 1:
                out.append("vertex ids disagree with sigma cycles")
                break
        if not self.is_connected():
            out.append("map is not connected")
        elif self.euler_characteristic() != 2:
            out.append(f"Euler characteristic {self.euler_characteristic()} != 2 (not a sphere)")
        return out

    def mirror(self) -> "CombinatorialMap":
        return CombinatorialMap(self.alpha, self.sigma_inv, self.vertex_ids)
