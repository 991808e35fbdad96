"""Strict region inequalities on edge weights: construction, exact decision, and the
explicit witness for positive flow-spines."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .diagram import DsDiagram, classify_edge_types, is_positive, require_valid
from .homology import reduced_matrix
from .lp import maximize
from .spine import SpinePresentation


@dataclass(frozen=True)
class InequalitySystem:
    """Rows ``sum_j coeffs[i][j] * x_j > 0``, one per region."""

    variables: tuple
    regions: tuple
    coeffs: tuple
    reduced: bool = False
    fixed_zero: tuple = ()

    @classmethod
    def from_rows(cls, rows, variables=None):
        rows = tuple(tuple(int(v) for v in r) for r in rows)
        nvar = len(rows[0]) if rows else 0
        return cls(tuple(variables or range(1, nvar + 1)), tuple(range(1, len(rows) + 1)), rows)

    def evaluate(self, x):
        return [sum(Fraction(a) * v for a, v in zip(row, x)) for row in self.coeffs]

    def satisfied_by(self, x) -> bool:
        return len(x) == len(self.variables) and all(s > 0 for s in self.evaluate(x))

    def describe(self):
        out = []
        for row in self.coeffs:
            terms = [f"{a:+d}*x{v}" for a, v in zip(row, self.variables) if a]
            out.append((" ".join(terms) or "0") + " > 0")
        return out


@dataclass
class AdmissibilityCertificate:
    status: str
    witness: list = field(default=None)
    farkas: list = field(default=None)

    @property
    def feasible(self):
        return self.status == "feasible"

    def verify(self, system: InequalitySystem) -> bool:
        if self.feasible:
            return self.witness is not None and system.satisfied_by(self.witness)
        y = self.farkas
        if y is None or len(y) != len(system.coeffs) or any(v < 0 for v in y) or not any(y):
            return False
        nvar = len(system.variables)
        return all(sum(y[i] * system.coeffs[i][j] for i in range(len(y))) == 0 for j in range(nvar))

    def as_dict(self):
        out = {"status": self.status}
        if self.witness is not None:
            out["witness"] = [fraction_str(v) for v in self.witness]
        if self.farkas is not None:
            out["farkas"] = [fraction_str(v) for v in self.farkas]
        return out


def fraction_str(v) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def build_system(p: SpinePresentation, reduced: bool = False) -> InequalitySystem:
    rids = tuple(sorted(p.regions))
    if reduced:
        eids, rows = reduced_matrix(p)
        tree = tuple(p.spanning_tree())
    else:
        eids, rows = sorted(p.edges), p.incidence_matrix()
        tree = ()
    # rows of the matrix are edges; the system has one row per region
    coeffs = tuple(tuple(rows[k][c] for k in range(len(eids))) for c in range(len(rids)))
    return InequalitySystem(tuple(eids), rids, coeffs, reduced, tree)


def _integral(v):
    den = lcm(*(Fraction(x).denominator for x in v)) if v else 1
    num = [Fraction(x) * den for x in v]
    return [Fraction(int(x)) for x in num]


def decide(s: InequalitySystem) -> AdmissibilityCertificate:
    """Exact strict feasibility.

    First look for the alternative: y >= 0, sum y = 1, y.A = 0.  If it exists the
    strict system has no solution.  Otherwise maximise t subject to
    A x >= t, -1 <= x_j <= 1, which then has optimum t > 0.
    """
    rows = [list(r) for r in s.coeffs]
    nr, nv = len(rows), len(s.variables)
    if nr == 0:
        return AdmissibilityCertificate("feasible", witness=[Fraction(0)] * nv)
    A_eq = [[rows[i][j] for i in range(nr)] for j in range(nv)] + [[1] * nr]
    alt = maximize([0] * nr, A_eq, [0] * nv + [1])
    if alt.status == "optimal":
        return AdmissibilityCertificate("infeasible", farkas=_integral(alt.x))
    # variables: u_j = x_j + 1 in [0, 2] (nv), slack w_j (nv), t, surplus s_i (nr)
    n = 2 * nv + 1 + nr
    A2, b2 = [], []
    for i in range(nr):
        row = [0] * n
        for j in range(nv):
            row[j] = rows[i][j]
        row[2 * nv] = -1
        row[2 * nv + 1 + i] = -1
        A2.append(row)
        b2.append(sum(rows[i]))
    for j in range(nv):
        row = [0] * n
        row[j] = 1
        row[nv + j] = 1
        A2.append(row)
        b2.append(2)
    c = [0] * n
    c[2 * nv] = 1
    res = maximize(c, A2, b2)
    if res.status != "optimal" or res.value <= 0:
        raise ArithmeticError("strict system neither feasible nor certified infeasible")
    x = _integral([res.x[j] - 1 for j in range(nv)])
    cert = AdmissibilityCertificate("feasible", witness=x)
    assert cert.verify(s)
    return cert


# -- the explicit witness for positive diagrams ----------------------------------

TYPE_VALUES = {"a": Fraction(-1, 2), "b": Fraction(2), "c": Fraction(3), "d": Fraction(4)}


def _alternating_pairs(word, types):
    """Pairs (b_{2j-1}, b_{2j}) if the cyclic word is b c b^-1 c^-1 ... in some rotation."""
    n = len(word)
    if n == 0 or n % 4:
        return None
    pattern = [("b", 1), ("c", 1), ("b", -1), ("c", -1)]
    for shift in range(4):
        w = word[shift:] + word[:shift]
        if all((types[e], s) == pattern[k % 4] for k, (e, s) in enumerate(w)):
            return [(w[4 * j][0], w[4 * j + 2][0]) for j in range(n // 4)]
    return None


def b_edge_partial_order(d: DsDiagram) -> set:
    """Pairs (e, f) meaning e > f, read from inside regions bounded by (b c b^-1 c^-1)^l."""
    require_valid(d)
    types = classify_edge_types(d)
    rel = set()
    for rid in sorted(d.regions):
        pairs = _alternating_pairs(d.region_word(rid), types)
        if pairs:
            rel.update(pairs)
    return rel


def _linear_extension(items, rel):
    """Greatest elements first; ties broken by smallest id.  Raises on cycles."""
    above = {x: set() for x in items}
    for a, b in rel:
        above[b].add(a)
    order, done = [], set()
    while len(order) < len(items):
        ready = sorted(x for x in items if x not in done and above[x] <= done)
        if not ready:
            raise ValueError("the relation on type-b edges has a cycle")
        order.append(ready[0])
        done.add(ready[0])
    return order


def positive_witness(d: DsDiagram) -> dict:
    """Edge weights -1/2, 2 + delta, 3, 4 by edge type a, b, c, d."""
    require_valid(d)
    if not is_positive(d):
        raise ValueError("positive_witness needs a positive diagram")
    types = classify_edge_types(d)
    m = len(types)
    x = {e: TYPE_VALUES[t] for e, t in types.items()}
    bs = sorted(e for e, t in types.items() if t == "b")
    order = _linear_extension(bs, b_edge_partial_order(d))
    k = len(order)
    for rank_, e in enumerate(order):
        x[e] += Fraction(k - rank_, 8 * m * (k + 1))
    return x


def witness_vector(system: InequalitySystem, weights: dict):
    return [Fraction(weights[e]) for e in system.variables]


_RUN = re.compile(r"^(b|ac*d)$")


def e_path_runs(d: DsDiagram) -> list:
    """Type strings of the maximal E-cycle stretches on the boundary of inside regions."""
    require_valid(d)
    types = classify_edge_types(d)
    m = d.map
    out = []
    for rid in sorted(d.regions):
        face = next(f for f in m.faces if f[0] == d.regions[rid][0])
        flags = [x in d.e_darts for x in face]
        if all(flags):
            out.append("".join(types[d.dart_info[x][0]] for x in face))
            continue
        if not any(flags):
            continue
        start = flags.index(False)
        rot = face[start:] + face[:start]
        run = ""
        for x in rot + (rot[0],):
            if x in d.e_darts:
                run += types[d.dart_info[x][0]]
            elif run:
                out.append(run)
                run = ""
    return out


def e_path_grammar_holds(d: DsDiagram) -> bool:
    return all(_RUN.match(r) for r in e_path_runs(d))
