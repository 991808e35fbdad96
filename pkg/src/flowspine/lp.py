"""Exact two-phase simplex over the rationals (dense tableau, Bland's rule)."""

from __future__ import annotations

from fractions import Fraction


class LPResult:
    __slots__ = ("status", "x", "value")

    def __init__(self, status, x=None, value=None):
        self.status = status
        self.x = x
        self.value = value

    def __repr__(self):
        return f"LPResult({self.status!r}, x={self.x}, value={self.value})"


def _pivot(T, basis, r, c):
    pr = T[r]
    pv = pr[c]
    if pv != 1:
        T[r] = pr = [v / pv for v in pr]
    for i, row in enumerate(T):
        if i != r and row[c]:
            f = row[c]
            T[i] = [a - f * b for a, b in zip(row, pr)]
    basis[r] = c


def _run(T, basis, obj, allowed):
    """Maximise the objective stored as row ``obj`` (reduced costs, negated) over columns ``allowed``."""
    m = len(basis)
    while True:
        enter = next((j for j in allowed if T[obj][j] < 0), None)
        if enter is None:
            return "optimal"
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return "unbounded"
        _pivot(T, basis, best[1], enter)


def maximize(c, A_eq, b):
    """max c.z subject to A_eq z = b, z >= 0, all data exact."""
    m = len(A_eq)
    n = len(c)
    A = [[Fraction(v) for v in row] for row in A_eq]
    b = [Fraction(v) for v in b]
    for i in range(m):
        if b[i] < 0:
            A[i] = [-v for v in A[i]]
            b[i] = -b[i]
    # columns: n originals, m artificials, rhs
    T = [A[i] + [Fraction(int(i == k)) for k in range(m)] + [b[i]] for i in range(m)]
    basis = [n + i for i in range(m)]
    # phase one: maximise -sum(artificials)
    phase1 = [Fraction(0)] * (n + m + 1)
    for i in range(m):
        phase1 = [p - v for p, v in zip(phase1, T[i])]
    for k in range(m):
        phase1[n + k] = Fraction(0)
    T.append(phase1)
    _run(T, basis, m, range(n + m))
    if T[m][-1] != 0:
        return LPResult("infeasible")
    # drive artificials out of the basis, dropping redundant rows
    i = 0
    while i < len(basis):
        if basis[i] >= n:
            col = next((j for j in range(n) if T[i][j] != 0), None)
            if col is None:
                del T[i]
                del basis[i]
                continue
            _pivot(T, basis, i, col)
        i += 1
    m = len(basis)
    T = [row[:n] + [row[-1]] for row in T[:m]]
    obj = [Fraction(-v) for v in c] + [Fraction(0)]
    for i, j in enumerate(basis):
        if obj[j]:
            f = obj[j]
            obj = [a - f * r for a, r in zip(obj, T[i])]
    T.append(obj)
    status = _run(T, basis, m, range(n))
    if status == "unbounded":
        return LPResult("unbounded")
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        x[j] = T[i][-1]
    return LPResult("optimal", x, T[m][-1])
