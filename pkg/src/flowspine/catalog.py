"""Shipped named diagrams, coils and presentations, with a self-check."""

from __future__ import annotations

import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .admissibility import build_system, decide
from .canonical import canonical_code
from .diagram import DsDiagram, derive_presentation, is_positive, validate
from .formats import parse_diagram, parse_spine
from .homology import h1
from .surgery import Coil, apply_coil_surgery, find_coils

PACKAGE_CATALOG = Path(__file__).with_name("catalog")


class CatalogError(ValueError):
    pass


def catalog_dir(path=None) -> Path:
    if path is not None:
        return Path(path)
    env = os.environ.get("FSP_CATALOG")
    return Path(env) if env else PACKAGE_CATALOG


@dataclass
class Catalog:
    root: Path
    diagrams: dict = field(default_factory=dict)
    presentations: dict = field(default_factory=dict)
    coils: dict = field(default_factory=dict)
    info: dict = field(default_factory=dict)
    census: list = field(default_factory=list)

    def coil(self, diagram, name) -> Coil:
        try:
            return self.coils[diagram][name]
        except KeyError:
            raise CatalogError(f"no coil {name!r} on {diagram!r}") from None

    def longitudes_for(self, d: DsDiagram) -> dict:
        """Coil longitudes of the catalog diagram isomorphic to ``d`` (empty if none)."""
        code = canonical_code(d)
        for name, coils in self.coils.items():
            if canonical_code(self.diagrams[name]) == code:
                return {c.name: c.longitude for c in coils.values()}
        return {}

    def census_entries(self):
        out = []
        for c in self.census:
            item = dict(c)
            if "source" in c:
                item["diagram"] = self.diagrams[c["source"]]
            out.append(item)
        return out

    def names(self):
        return sorted(set(self.diagrams) | set(self.presentations))


def load_catalog(path=None) -> Catalog:
    root = catalog_dir(path)
    meta_path = root / "catalog.toml"
    if not meta_path.exists():
        raise CatalogError(f"no catalog.toml in {root}")
    with open(meta_path, "rb") as fh:
        meta = tomllib.load(fh)
    cat = Catalog(root)
    for item in meta.get("diagram", []):
        name = item["name"]
        cat.diagrams[name] = parse_diagram((root / item["file"]).read_text(encoding="utf-8"))
        cat.info[name] = dict(item, kind="diagram")
    for item in meta.get("coil", []):
        d = cat.diagrams[item["diagram"]]
        de, di, _ = d.edge_labels[item["edge"]]
        lon = tuple(item["longitude"]) if "longitude" in item else None
        cat.coils.setdefault(item["diagram"], {})[item["name"]] = Coil(
            item["edge"], (de, di), (d.map.left_face(de),), item["name"], lon)
    for item in meta.get("derived", []):
        d = cat.diagrams[item["base"]]
        for coil_name, word in item["steps"]:
            d = apply_coil_surgery(d, cat.coil(item["base"], coil_name), word)
        cat.diagrams[item["name"]] = d
        cat.info[item["name"]] = dict(item, kind="derived")
    for item in meta.get("presentation", []):
        cat.presentations[item["name"]] = parse_spine((root / item["file"]).read_text(encoding="utf-8"))
        cat.info[item["name"]] = dict(item, kind="presentation")
    cat.census = list(meta.get("census", []))
    return cat


def self_check(cat: Catalog) -> list:
    """One dict per named object: computed data against metadata."""
    out = []
    for name in cat.names():
        info = cat.info[name]
        problems = []
        if name in cat.diagrams:
            d = cat.diagrams[name]
            rep = validate(d)
            if not rep.ok:
                out.append({"name": name, "ok": False, "problems": rep.problems})
                continue
            p = derive_presentation(d)
            pos = is_positive(d)
            if "positive" in info and info["positive"] != pos:
                problems.append(f"positive: expected {info['positive']}, computed {pos}")
            coil_edges = {c.edge for c in find_coils(d)} if name in cat.coils else set()
            for cname, coil in cat.coils.get(name, {}).items():
                if coil.edge not in coil_edges:
                    problems.append(f"coil {cname} on edge {coil.edge} fails the hexagon check")
        else:
            p = cat.presentations[name]
        hom = h1(p)
        if "h1" in info and info["h1"] != hom.h1_label():
            problems.append(f"H1: expected {info['h1']}, computed {hom.h1_label()}")
        feasible = decide(build_system(p)).feasible
        if "admissible" in info and info["admissible"] != feasible:
            problems.append(f"admissible: expected {info['admissible']}, computed {feasible}")
        elif name in cat.diagrams and info.get("positive") and not feasible:
            problems.append("positive diagram is not admissible")
        out.append({"name": name, "ok": not problems, "problems": problems,
                    "h1": hom.h1_label(), "admissible": feasible})
    return out
