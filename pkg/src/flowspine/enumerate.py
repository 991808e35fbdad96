"""Census of positive flow-spines with few vertices.

The singular set of a flow-spine is a 4-regular graph and the E-cycle runs
through it as an Eulerian circuit passing every vertex twice.  Such a pair is
a double-occurrence word on the spine vertices.  For every word and every
choice of which passage at a vertex sends its third dart inward, the faces of
the all-l diagram are completed and the result validated; survivors are
deduplicated by canonical code.
"""

from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass, field

from .admissibility import AdmissibilityCertificate, build_system, decide
from .canonical import canonical_code
from .diagram import DsDiagram, InvalidDiagram, derive_presentation, is_positive, validate
from .eword import build_diagram
from .homology import HomologyProfile, h1

MAX_VERTICES = 4


@dataclass
class CensusEntry:
    code: bytes
    n_vertices: int
    homology: HomologyProfile
    certificate: AdmissibilityCertificate
    positive: bool
    diagram: DsDiagram = field(repr=False, default=None)
    passages: tuple = ()
    name: str = None
    label: str = None
    name_basis: str = None

    def as_dict(self):
        out = {
            "code": self.code.hex(),
            "vertices": self.n_vertices,
            "h1": self.homology.h1_label(),
            "homology": self.homology.as_dict(),
            "admissibility": self.certificate.as_dict(),
            "positive": self.positive,
            "passages": [[w, "in" if inw else "out"] for w, inw in self.passages],
        }
        if self.name:
            out["name"] = self.name
            out["label"] = self.label
            out["name_basis"] = self.name_basis
        return out


def double_occurrence_words(n):
    """Words of length 2n using each of 0..n-1 twice, letters introduced in increasing order."""
    counts = [0] * n
    seq = []

    def rec(used):
        if len(seq) == 2 * n:
            yield tuple(seq)
            return
        for w in range(min(used + 1, n)):
            if counts[w] < 2:
                counts[w] += 1
                seq.append(w)
                yield from rec(max(used, w + 1))
                seq.pop()
                counts[w] -= 1

    yield from rec(0)


def singular_graph(word):
    """Edge multiset of the 4-regular graph traced by a cyclic double-occurrence word."""
    n = len(word)
    return tuple(sorted(tuple(sorted((word[i], word[(i + 1) % n]))) for i in range(n)))


def candidate_passages(n):
    """Every (word, inward choice) pair, grouped by underlying singular graph."""
    groups = defaultdict(list)
    for word in double_occurrence_words(n):
        groups[singular_graph(word)].append(word)
    for graph in sorted(groups):
        for word in groups[graph]:
            for flags in itertools.product((True, False), repeat=n):
                seen = [0] * n
                passages = []
                for w in word:
                    passages.append((w, (seen[w] == 0) == flags[w]))
                    seen[w] += 1
                yield passages


def make_entry(d: DsDiagram, passages=()) -> CensusEntry:
    p = derive_presentation(d)
    return CensusEntry(
        code=canonical_code(d),
        n_vertices=len(d.vertex_labels),
        homology=h1(p),
        certificate=decide(build_system(p)),
        positive=is_positive(d),
        diagram=d,
        passages=tuple(passages),
    )


def positive_diagrams(n):
    """Distinct positive diagrams with exactly n spine vertices, by canonical code."""
    found = {}
    for passages in candidate_passages(n):
        try:
            d = build_diagram(passages, {w: "l" for w in range(n)})
        except InvalidDiagram:
            continue
        rep = validate(d)
        if not rep.ok or rep.n_edges != 2 * n or rep.n_regions != n + 1:
            continue
        if not is_positive(d):
            continue
        code = canonical_code(d)
        if code not in found:
            found[code] = (d, passages)
    return found


def enumerate_positive(n_max: int) -> list:
    if not isinstance(n_max, int) or not 1 <= n_max <= MAX_VERTICES:
        raise ValueError(f"n_max must be an integer in 1..{MAX_VERTICES}")
    entries = []
    for n in range(1, n_max + 1):
        found = positive_diagrams(n)
        batch = [make_entry(d, passages) for d, passages in found.values()]
        batch.sort(key=lambda e: (e.homology.h1_order == 0, e.homology.h1_order,
                                  e.homology.torsion, e.code))
        entries += batch
    return entries


def census_report(entries) -> dict:
    by_vertices = Counter(e.n_vertices for e in entries)
    by_class = defaultdict(Counter)
    for e in entries:
        by_class[e.homology.h1_label()][e.n_vertices] += 1
    minimal = {h: min(c) for h, c in by_class.items()}
    return {
        "total": len(entries),
        "by_vertices": {str(n): by_vertices[n] for n in sorted(by_vertices)},
        "h1_by_vertices": {
            str(n): sorted((e.homology.h1_label() for e in entries if e.n_vertices == n), key=_h1_key)
            for n in sorted(by_vertices)
        },
        "minimal_vertices": {h: minimal[h] for h in sorted(minimal, key=lambda h: (minimal[h], _h1_key(h)))},
    }


def _h1_key(label):
    return (len(label), label)


def match_catalog(entries, catalog) -> dict:
    """Pair enumerated entries with named catalog diagrams by canonical code.

    ``catalog`` maps names to DsDiagrams.  Names whose diagram is not among the
    entries are reported as unmatched, and so are entries without a name.
    """
    by_code = {e.code: e for e in entries}
    matched = {}
    unmatched_catalog = []
    for name in sorted(catalog):
        d = catalog[name]
        code = canonical_code(d) if validate(d).ok else None
        if code in by_code:
            matched[name] = code.hex()
        else:
            unmatched_catalog.append(name)
    hit = set(matched.values())
    unmatched_entries = [e.code.hex() for e in entries if e.code.hex() not in hit]
    return {"matched": matched, "unmatched_catalog": unmatched_catalog, "unmatched_entries": unmatched_entries}


def name_entries(entries, catalog_entries):
    """Attach census names.

    ``catalog_entries`` is a list of dicts with keys ``name``, ``label``,
    ``vertices``, ``h1`` and optionally ``diagram``.  Entries with a diagram
    are matched by canonical code; the rest are matched by (vertex count, H1)
    when exactly one unnamed candidate remains.
    """
    by_code = {e.code: e for e in entries}
    pending = []
    for c in catalog_entries:
        d = c.get("diagram")
        if d is not None and validate(d).ok and is_positive(d):
            e = by_code.get(canonical_code(d))
            if e is not None and e.name is None:
                e.name, e.label, e.name_basis = c["name"], c.get("label"), "diagram"
                continue
        pending.append(c)
    changed = True
    while changed:
        changed = False
        for c in list(pending):
            cands = [e for e in entries if e.name is None and e.n_vertices == c["vertices"]
                     and e.homology.h1_label() == c["h1"]]
            rivals = [o for o in pending if o["vertices"] == c["vertices"] and o["h1"] == c["h1"]]
            if len(cands) == 1 and len(rivals) == 1:
                e = cands[0]
                e.name, e.label, e.name_basis = c["name"], c.get("label"), "homology"
                pending.remove(c)
                changed = True
    return [c["name"] for c in pending]
