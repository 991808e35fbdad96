"""Cellular homology of the closed manifold built from a spine plus one 3-ball.

Everything is done over Python integers; no floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .spine import SpinePresentation


def smith_normal_form(matrix):
    """Invariant factors and rank of an integer matrix.

    Returns ``(factors, rank)`` where ``factors`` lists the nonzero diagonal
    entries d1 | d2 | ... (all positive, units included).
    """
    A = [list(map(int, row)) for row in matrix]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    diag = []
    t = 0
    while t < rows and t < cols:
        # pivot: smallest nonzero absolute value in the remaining block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, rows):
                q = A[i][t] // p
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                if A[i][t]:
                    dirty = True
            for j in range(t + 1, cols):
                q = A[t][j] // p
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                if A[t][j]:
                    dirty = True
            if not dirty:
                # the pivot must divide the rest of the block
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                            if A[i][j] % p), None)
                if bad is None:
                    break
                A[t] = [a + b for a, b in zip(A[t], A[bad[0]])]
                continue
            # move the smallest remaining entry of row/column t onto the pivot
            cand = [(abs(A[i][t]), i, t) for i in range(t, rows) if A[i][t]]
            cand += [(abs(A[t][j]), t, j) for j in range(t, cols) if A[t][j]]
            _, i, j = min(cand)
            A[t], A[i] = A[i], A[t]
            for row in A:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    return tuple(diag), len(diag)


def determinant(matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    M = [list(map(int, row)) for row in matrix]
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def rank(matrix) -> int:
    return smith_normal_form(matrix)[1]


def matmul(A, B):
    if not A or not B:
        return [[0] * (len(B[0]) if B else 0) for _ in A]
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


@dataclass
class ChainComplex:
    """Cells: vertices (plus one per circle edge), edges (plus connecting arcs
    that cut multi-boundary regions into disks), regions, one 3-cell."""

    d1: list
    d2: list
    d3: list
    vertex_cells: list
    edge_cells: list
    region_cells: list
    # edges x regions block of d2: signed multiplicities of the spine edges
    A: list = field(default_factory=list)

    def is_complex(self) -> bool:
        z12 = matmul(self.d1, self.d2)
        z23 = matmul(self.d2, self.d3)
        return all(x == 0 for row in z12 for x in row) and all(x == 0 for row in z23 for x in row)


@dataclass(frozen=True)
class HomologyProfile:
    betti: tuple
    torsion: tuple
    qhs: bool

    @property
    def h1_order(self) -> int:
        """|H1|, with 0 standing for an infinite group."""
        if self.betti[1]:
            return 0
        out = 1
        for t in self.torsion:
            out *= t
        return out

    def h1_label(self) -> str:
        parts = ["Z"] * self.betti[1] + [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"

    def as_dict(self):
        return {"b": list(self.betti), "torsion": list(self.torsion), "qhs": self.qhs, "h1": self.h1_label()}


def build_chain_complex(p: SpinePresentation) -> ChainComplex:
    problems = [x for x in p.problems(closed=False) if "Euler" not in x]
    if problems:
        raise ValueError("malformed presentation: " + "; ".join(problems))
    vcells = [("v", v) for v in p.vertices] + [("c", e) for e in p.circle_edges()]
    vrow = {c: k for k, c in enumerate(vcells)}

    def base_point(word):
        e, s = word[0]
        ends = p.edges[e]
        if ends is None:
            return vrow[("c", e)]
        return vrow[("v", ends[0] if s > 0 else ends[1])]

    ecells = [("e", e) for e in sorted(p.edges)]
    links = []
    for rid in sorted(p.regions):
        words = p.regions[rid]
        for k in range(1, len(words)):
            links.append((rid, k, base_point(words[0]), base_point(words[k])))
    ecells += [("link", rid, k) for rid, k, _, _ in links]
    rids = sorted(p.regions)

    d1 = [[0] * len(ecells) for _ in vcells]
    for col, e in enumerate(sorted(p.edges)):
        ends = p.edges[e]
        if ends is not None:
            d1[vrow[("v", ends[1])]][col] += 1
            d1[vrow[("v", ends[0])]][col] -= 1
    off = len(p.edges)
    for k, (_, _, a, b) in enumerate(links):
        d1[b][off + k] += 1
        d1[a][off + k] -= 1

    A = p.incidence_matrix()
    d2 = [row[:] for row in A] + [[0] * len(rids) for _ in links]
    d3 = [[0] for _ in rids]
    return ChainComplex(d1, d2, d3, vcells, ecells, [("r", r) for r in rids], A)


def homology_of(cc: ChainComplex) -> HomologyProfile:
    nv, ne, nr = len(cc.vertex_cells), len(cc.edge_cells), len(cc.region_cells)
    r1 = rank(cc.d1) if nv and ne else 0
    factors, r2 = smith_normal_form(cc.d2) if ne and nr else ((), 0)
    b0 = nv - r1
    b1 = ne - r1 - r2
    b2 = nr - r2  # d3 is zero
    b3 = 1
    torsion = tuple(f for f in factors if f > 1)
    return HomologyProfile((b0, b1, b2, b3), torsion, b1 == 0 and b2 == 0)


def h1(p: SpinePresentation) -> HomologyProfile:
    return homology_of(build_chain_complex(p))


def reduced_matrix(p: SpinePresentation):
    """Rows of the non-tree edges only (tree edges set to zero); returns (edge ids, matrix)."""
    tree = set(p.spanning_tree())
    eids = sorted(p.edges)
    A = p.incidence_matrix()
    keep = [k for k, e in enumerate(eids) if e not in tree]
    return [eids[k] for k in keep], [A[k] for k in keep]


def det_A_test(p: SpinePresentation) -> int:
    """Determinant of the reduced incidence matrix of a special spine.

    Nonzero exactly when the manifold is a rational homology sphere.
    """
    if not p.is_special():
        raise ValueError("not special / A not square")
    _, A = reduced_matrix(p)
    if len(A) != p.n_regions:
        raise ValueError("not special / A not square")
    return determinant(A)
