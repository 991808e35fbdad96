"""Line-oriented text formats: ``.dsd`` diagrams and ``.spine`` presentations.

.dsd::

    %dsd 1
    darts N
    edge d d'                  # N/2 lines
    vertex vid d1 d2 d3        # counterclockwise
    ecycle d1 d2 ... dk
    elabel eid dE dIn dOut     # forward darts of the three copies
    vlabel wid v1 v2 v3 v4
    region rid fIn fOut        # faces named by their minimal dart

.spine::

    %spine 1
    vertex vid
    edge eid arc vfrom vto  |  edge eid circle
    region rid word +e -e ...  # repeat for further boundary components
"""

from __future__ import annotations

from .cmap import CombinatorialMap
from .diagram import DsDiagram
from .spine import SpinePresentation


class ParseError(ValueError):
    def __init__(self, message, line=None):
        self.message = message
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _lines(text):
    for no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield no, body.split()


def _ints(tokens, no, count=None):
    if count is not None and len(tokens) != count:
        raise ParseError(f"expected {count} integers, got {len(tokens)}", no)
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"not an integer in {' '.join(tokens)!r}", no) from None


def _header(lines, magic):
    try:
        no, toks = next(lines)
    except StopIteration:
        raise ParseError(f"empty file, expected header '{magic} 1'") from None
    if toks != [magic, "1"]:
        raise ParseError(f"expected header '{magic} 1'", no)


def parse_diagram(text: str) -> DsDiagram:
    """Read a ``.dsd`` document.  Structure only; ``validate`` does the semantics."""
    lines = _lines(text)
    _header(lines, "%dsd")
    n = None
    alpha = {}
    sigma = {}
    vid_of = {}
    vertices_seen = set()
    ecycle = None
    elabels, vlabels, regions = {}, {}, {}
    last = 1

    def dart(x, no):
        if n is None:
            raise ParseError("'darts N' must come before darts are used", no)
        if not 0 <= x < n:
            raise ParseError(f"dart {x} out of range 0..{n - 1}", no)
        return x

    for no, toks in lines:
        last = no
        key, args = toks[0], toks[1:]
        if key == "darts":
            if n is not None:
                raise ParseError("duplicate 'darts' line", no)
            (n,) = _ints(args, no, 1)
            if n < 0:
                raise ParseError("negative dart count", no)
        elif key == "edge":
            a, b = (dart(x, no) for x in _ints(args, no, 2))
            if a == b:
                raise ParseError("alpha has fixed point", no)
            for x in (a, b):
                if x in alpha:
                    raise ParseError(f"duplicate dart {x} in edge lines", no)
            alpha[a], alpha[b] = b, a
        elif key == "vertex":
            v, *ds = _ints(args, no, 4)
            ds = [dart(x, no) for x in ds]
            if v in vertices_seen:
                raise ParseError(f"duplicate vertex id {v}", no)
            vertices_seen.add(v)
            for k, x in enumerate(ds):
                if x in sigma:
                    raise ParseError(f"duplicate dart {x} in vertex lines", no)
                sigma[x] = ds[(k + 1) % 3]
                vid_of[x] = v
        elif key == "ecycle":
            if ecycle is not None:
                raise ParseError("duplicate 'ecycle' line", no)
            ecycle = tuple(dart(x, no) for x in _ints(args, no))
        elif key == "elabel":
            e, *ds = _ints(args, no, 4)
            if e in elabels:
                raise ParseError(f"duplicate edge label {e}", no)
            elabels[e] = tuple(dart(x, no) for x in ds)
        elif key == "vlabel":
            w, *vs = _ints(args, no, 5)
            if w in vlabels:
                raise ParseError(f"duplicate vertex label {w}", no)
            vlabels[w] = tuple(vs)
        elif key == "region":
            r, fi, fo = _ints(args, no, 3)
            if r in regions:
                raise ParseError(f"duplicate region {r}", no)
            regions[r] = (dart(fi, no), dart(fo, no))
        else:
            raise ParseError(f"unknown key {key!r}", no)

    if n is None:
        raise ParseError("missing 'darts' line", last)
    if n == 0:
        raise ParseError("empty map", last)
    missing = [x for x in range(n) if x not in alpha]
    if missing:
        raise ParseError(f"dart {missing[0]} is on no edge", last)
    missing = [x for x in range(n) if x not in sigma]
    if missing:
        raise ParseError(f"dart {missing[0]} is at no vertex", last)
    for v in vlabels.values():
        bad = [x for x in v if x not in vertices_seen]
        if bad:
            raise ParseError(f"vlabel names unknown graph vertex {bad[0]}", last)
    cmap = CombinatorialMap(tuple(alpha[x] for x in range(n)), tuple(sigma[x] for x in range(n)),
                            tuple(vid_of[x] for x in range(n)))
    return DsDiagram(cmap, ecycle or (), elabels, vlabels, regions)


def format_diagram(d: DsDiagram, comments=()) -> str:
    m = d.map
    out = ["%dsd 1"]
    out += [f"# {c}" for c in comments]
    out.append(f"darts {m.dart_count}")
    out += [f"edge {a} {b}" for a, b in m.edges()]
    for v in sorted(m.vertices):
        out.append(f"vertex {v} " + " ".join(map(str, m.vertices[v])))
    out.append("ecycle " + " ".join(map(str, d.e_cycle)))
    for e in sorted(d.edge_labels):
        out.append(f"elabel {e} " + " ".join(map(str, d.edge_labels[e])))
    for w in sorted(d.vertex_labels):
        out.append(f"vlabel {w} " + " ".join(map(str, d.vertex_labels[w])))
    for r in sorted(d.regions):
        fi, fo = d.regions[r]
        out.append(f"region {r} {fi} {fo}")
    return "\n".join(out) + "\n"


def _signed(tok, no):
    try:
        v = int(tok)
    except ValueError:
        raise ParseError(f"bad signed edge {tok!r}", no) from None
    if v == 0:
        raise ParseError("edge 0 cannot carry a sign; use positive edge ids", no)
    return (abs(v), 1 if v > 0 else -1)


def parse_spine(text: str) -> SpinePresentation:
    lines = _lines(text)
    _header(lines, "%spine")
    vertices, edges, regions = [], {}, {}
    for no, toks in lines:
        key, args = toks[0], toks[1:]
        if key == "vertex":
            (v,) = _ints(args, no, 1)
            if v in vertices:
                raise ParseError(f"duplicate vertex id {v}", no)
            vertices.append(v)
        elif key == "edge":
            if len(args) < 2:
                raise ParseError("edge needs an id and 'arc vfrom vto' or 'circle'", no)
            (e,) = _ints(args[:1], no, 1)
            if e <= 0:
                raise ParseError("edge ids must be positive", no)
            if e in edges:
                raise ParseError(f"duplicate edge id {e}", no)
            if args[1] == "arc":
                edges[e] = tuple(_ints(args[2:], no, 2))
            elif args[1] == "circle" and len(args) == 2:
                edges[e] = None
            else:
                raise ParseError("edge kind must be 'arc vfrom vto' or 'circle'", no)
        elif key == "region":
            if len(args) < 3 or args[1] != "word":
                raise ParseError("expected 'region rid word ±eid ...'", no)
            (r,) = _ints(args[:1], no, 1)
            regions.setdefault(r, []).append(tuple(_signed(t, no) for t in args[2:]))
        else:
            raise ParseError(f"unknown key {key!r}", no)
    return SpinePresentation(tuple(vertices), edges, regions)


def format_spine(p: SpinePresentation, comments=()) -> str:
    out = ["%spine 1"]
    out += [f"# {c}" for c in comments]
    out += [f"vertex {v}" for v in p.vertices]
    for e in sorted(p.edges):
        ends = p.edges[e]
        out.append(f"edge {e} circle" if ends is None else f"edge {e} arc {ends[0]} {ends[1]}")
    for r in sorted(p.regions):
        for word in p.regions[r]:
            out.append(f"region {r} word " + " ".join(f"{'+' if s > 0 else '-'}{e}" for e, s in word))
    return "\n".join(out) + "\n"
