"""``fsp``: command-line access to diagrams, homology, admissibility, coils and the census.

Exit codes: 0 success, 1 semantic failure (invalid diagram, bad coil, ...),
2 usage or parse error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from .admissibility import build_system, decide, fraction_str, positive_witness
from .catalog import CatalogError, load_catalog, self_check
from .diagram import (InvalidDiagram, classify_edge_types, classify_vertex_types, derive_presentation,
                      is_positive, validate)
from .enumerate import census_report, enumerate_positive, match_catalog, name_entries
from .formats import ParseError, format_diagram, parse_diagram, parse_spine
from .homology import det_A_test, h1
from .render import render
from .surgery import (find_coils, apply_coil_surgery, meridian_of_word, parse_word, surgered_h1_order,
                      theta_states, transversality_check, transversality_trace)


class UsageError(Exception):
    pass


def _dump(obj):
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


def _emit(obj):
    print(_dump(obj))


def _read(path):
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _is_spine(path, text):
    return str(path).endswith(".spine") or text.lstrip().startswith("%spine")


def load_any(path):
    """(kind, object) with kind 'dsd' or 'spine'."""
    text = _read(path)
    if _is_spine(path, text):
        return "spine", parse_spine(text)
    return "dsd", parse_diagram(text)


def load_valid_diagram(path):
    kind, obj = load_any(path)
    if kind != "dsd":
        raise UsageError(f"{path}: expected a .dsd diagram")
    rep = validate(obj)
    if not rep.ok:
        raise InvalidDiagram(rep.problems)
    return obj


def presentation_of(path):
    kind, obj = load_any(path)
    if kind == "spine":
        problems = obj.problems()
        if problems:
            raise InvalidDiagram(problems)
        return obj
    rep = validate(obj)
    if not rep.ok:
        raise InvalidDiagram(rep.problems)
    return derive_presentation(obj)


def _catalog(optional=True):
    try:
        return load_catalog()
    except (CatalogError, OSError, ParseError):
        if optional:
            return None
        raise


# -- commands ------------------------------------------------------------------------

def cmd_validate(args):
    kind, obj = load_any(args.path)
    if kind == "spine":
        problems = obj.problems()
        _emit({"valid": not problems, "problems": problems, "vertices": obj.n_vertices,
               "edges": obj.n_edges, "regions": obj.n_regions})
        return 0 if not problems else 1
    rep = validate(obj)
    _emit(rep.as_dict())
    return 0 if rep.ok else 1


def cmd_info(args):
    d = load_valid_diagram(args.path)
    rep = validate(d)
    out = {"vertices": rep.n_vertices, "edges": rep.n_edges, "regions": rep.n_regions,
           "positive": is_positive(d)}
    if args.types:
        out["vertex_types"] = {str(k): v for k, v in sorted(classify_vertex_types(d).items())}
        out["edge_types"] = {str(k): v for k, v in sorted(classify_edge_types(d).items())}
    _emit(out)
    return 0


def cmd_homology(args):
    p = presentation_of(args.path)
    out = h1(p).as_dict()
    if args.det:
        out["det"] = det_A_test(p)
    _emit(out)
    return 0


def cmd_admissible(args):
    p = presentation_of(args.path)
    system = build_system(p, reduced=args.reduced)
    cert = decide(system)
    out = cert.as_dict()
    out["variables"] = list(system.variables)
    if args.witness:
        d = load_valid_diagram(args.path)
        w = positive_witness(d)
        full = build_system(derive_presentation(d))
        out["positive_witness"] = {str(e): fraction_str(w[e]) for e in sorted(w)}
        out["positive_witness_verifies"] = full.satisfied_by([w[e] for e in full.variables])
    _emit(out)
    return 0


def cmd_vertex_types(args):
    d = load_valid_diagram(args.path)
    _emit({str(k): v for k, v in sorted(classify_vertex_types(d).items())})
    return 0


def cmd_edge_types(args):
    d = load_valid_diagram(args.path)
    _emit({str(k): v for k, v in sorted(classify_edge_types(d).items())})
    return 0


def _resolve_coil(d, coil_text, longitudes):
    coils = find_coils(d, longitudes)
    s = coil_text.strip()
    for prefix in ("gamma", "γ", "g"):
        if s.startswith(prefix) and s[len(prefix):].isdigit():
            name = "γ" + s[len(prefix):]
            for c in coils:
                if c.name == name:
                    return c
            raise ValueError(f"no coil {name}; found {[c.name for c in coils]}")
    edge = s[1:] if s.startswith("e") else s
    if edge.isdigit():
        for c in coils:
            if c.edge == int(edge):
                return c
        raise ValueError(f"spine edge {edge} carries no coil")
    raise UsageError(f"cannot read coil {coil_text!r}; use γ1, g1 or an edge id")


def cmd_coil_apply(args):
    d = load_valid_diagram(args.input)
    cat = _catalog()
    longitudes = cat.longitudes_for(d) if cat else {}
    coil = _resolve_coil(d, args.coil, longitudes)
    word = parse_word(args.word)
    out_d = apply_coil_surgery(d, coil, word)
    hom = h1(derive_presentation(out_d))
    report = {"coil": coil.name, "edge": coil.edge, "word": list(word),
              "vertices": validate(out_d).n_vertices, "positive": is_positive(out_d),
              "homology": hom.as_dict(), "meridian": list(meridian_of_word(word))}
    if coil.longitude is not None:
        report["longitude"] = list(coil.longitude)
        report["surgered_h1_order"] = surgered_h1_order(meridian_of_word(word), coil.longitude)
    if args.out:
        Path(args.out).write_text(format_diagram(out_d, comments=[
            f"coil surgery on edge {coil.edge} with word {','.join(word) or '(empty)'}"]), encoding="utf-8")
    _emit(report)
    return 0


def cmd_coil_meridian(args):
    _emit(list(meridian_of_word(parse_word(args.word))))
    return 0


def _pair(text):
    try:
        p, q = (int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"expected p,q integers, got {text!r}") from None
    return p, q


def cmd_coil_transversality(args):
    word = parse_word(args.word)
    slope = _pair(args.slope)
    ok = transversality_check(word, slope)
    _emit({"transverse": ok,
           "dets": [list(t) for t in transversality_trace(word, slope)],
           "states": [[list(s.theta1), list(s.theta2)] for s in theta_states(word)]})
    return 0 if ok else 1


def cmd_coil_find(args):
    d = load_valid_diagram(args.path)
    cat = _catalog()
    longitudes = cat.longitudes_for(d) if cat else {}
    _emit([{"name": c.name, "edge": c.edge, "crossings": list(c.crossings), "face": c.dual_path[0],
            "longitude": list(c.longitude) if c.longitude else None} for c in find_coils(d, longitudes)])
    return 0


def _named_census(n_max):
    entries = enumerate_positive(n_max)
    cat = _catalog()
    if cat is not None:
        name_entries(entries, cat.census_entries())
    return entries, cat


def cmd_enumerate(args):
    entries, _ = _named_census(args.max_vertices)
    data = [e.as_dict() for e in entries]
    if args.out:
        Path(args.out).write_text(json.dumps(data, indent=1, ensure_ascii=False) + "\n", encoding="utf-8")
        _emit({"entries": len(data), "out": args.out})
    else:
        _emit(data)
    return 0


def cmd_census(args):
    entries, cat = _named_census(args.max_vertices)
    report = census_report(entries)
    if cat is not None:
        report["catalog"] = match_catalog(entries, cat.diagrams)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    figures = []
    if not args.no_figures:
        from .plotting import write_census_figures
        figures = write_census_figures(report, out_dir)
    report["figures"] = figures
    (out_dir / "census_report.json").write_text(json.dumps(report, indent=1, ensure_ascii=False) + "\n",
                                                encoding="utf-8")
    rows = ["name\tvertices\th1\tlabel\tname_basis\tcode_digest"]
    for e in sorted(entries, key=lambda e: (e.n_vertices, e.name or "~", e.code)):
        rows.append("\t".join([e.name or "-", str(e.n_vertices), e.homology.h1_label(), e.label or "-",
                               e.name_basis or "-", hashlib.sha1(e.code).hexdigest()[:12]]))
    (out_dir / "census.tsv").write_text("\n".join(rows) + "\n", encoding="utf-8")
    print("\n".join(rows))
    print("---")
    _emit({"minimal_vertices": report["minimal_vertices"], "by_vertices": report["by_vertices"],
           "figures": figures})
    return 0


def cmd_render(args):
    d = load_valid_diagram(args.path)
    text = render(d, args.format)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_catalog_list(args):
    cat = _catalog(optional=False)
    _emit([{"name": n, "kind": cat.info[n]["kind"], "label": cat.info[n].get("label")} for n in cat.names()])
    return 0


def cmd_catalog_check(args):
    cat = _catalog(optional=False)
    results = self_check(cat)
    _emit(results)
    return 0 if all(r["ok"] for r in results) else 1


# -- parser ----------------------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(prog="fsp", description="Flow-spines and DS-diagrams.")
    sub = ap.add_subparsers(dest="command", required=True)

    def path_cmd(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("path")
        p.set_defaults(func=func)
        return p

    path_cmd("validate", cmd_validate, "check a .dsd or .spine file")
    p = path_cmd("info", cmd_info, "vertex/edge/region counts and positivity")
    p.add_argument("--types", action="store_true", help="also list vertex and edge types")
    p = path_cmd("homology", cmd_homology, "Betti numbers and H1 torsion")
    p.add_argument("--det", action="store_true", help="also print det(A) (special spines only)")
    p = path_cmd("admissible", cmd_admissible, "decide the strict region inequalities")
    p.add_argument("--reduced", action="store_true", help="use the maximal-tree reduced system")
    p.add_argument("--witness", action="store_true", help="add the explicit witness of a positive diagram")
    path_cmd("vertex-types", cmd_vertex_types, "l/r type of every spine vertex")
    path_cmd("edge-types", cmd_edge_types, "a/b/c/d type of every spine edge")

    coil = sub.add_parser("coil", help="coil surgery tools")
    csub = coil.add_subparsers(dest="coil_command", required=True)
    p = csub.add_parser("apply", help="rewrite a diagram by coil surgery")
    p.add_argument("--coil", required=True)
    p.add_argument("--word", default="")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_coil_apply)
    p = csub.add_parser("meridian", help="meridian of a surgery word in the (Theta, Phi) basis")
    p.add_argument("--word", default="")
    p.set_defaults(func=cmd_coil_meridian)
    p = csub.add_parser("transversality", help="check positivity against a fiber slope")
    p.add_argument("--word", default="")
    p.add_argument("--slope", required=True, help="p,q")
    p.set_defaults(func=cmd_coil_transversality)
    p = csub.add_parser("find", help="list coils of a diagram")
    p.add_argument("path")
    p.set_defaults(func=cmd_coil_find)

    for name, func in (("enumerate", cmd_enumerate), ("census", cmd_census)):
        p = sub.add_parser(name, help="positive flow-spines up to a vertex bound")
        p.add_argument("--max-vertices", type=int, default=3)
        p.set_defaults(func=func)
        if name == "enumerate":
            p.add_argument("--out")
        else:
            p.add_argument("--out-dir", default="census_out")
            p.add_argument("--no-figures", action="store_true")

    p = path_cmd("render", cmd_render, "draw a diagram")
    p.add_argument("--format", choices=("dot", "svg"), default="svg")
    p.add_argument("--out")

    cat = sub.add_parser("catalog", help="shipped named spines")
    catsub = cat.add_subparsers(dest="catalog_command", required=True)
    catsub.add_parser("list").set_defaults(func=cmd_catalog_list)
    catsub.add_parser("check").set_defaults(func=cmd_catalog_check)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, UsageError) as exc:
        print(f"fsp: {exc}", file=sys.stderr)
        return 2
    except InvalidDiagram as exc:
        _emit({"valid": False, "problems": exc.problems})
        return 1
    except (ValueError, CatalogError) as exc:
        print(f"fsp: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
