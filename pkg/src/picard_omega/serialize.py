"""JSON encodings of the package's data.

Integers are written as decimal strings inside matrices so that no reader
silently rounds them.  Every loader raises ParseError on malformed input.
"""
from __future__ import annotations

import json
from typing import Any

from .chain import ChainComplex, ChainMap
from .core import FgAbGroup, GroupHom, IntMatrix
from .descent import FiniteSite, Presheaf
from .errors import OmegaError, ParseError
from .omega import FiniteOmegaCat
from .parity import CellPair
from .simplicial import SimplicialAbGroup


def _guard(fn):
    def wrapper(obj, *args, **kwargs):
        try:
            return fn(obj, *args, **kwargs)
        except ParseError:
            raise
        except (KeyError, IndexError, TypeError, ValueError, AttributeError, OmegaError) as e:
            raise ParseError(f"{fn.__name__}: {type(e).__name__}: {e}") from e
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def dumps(obj: Any) -> str:
    """Deterministic JSON text."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e}") from e


# ---------------------------------------------------------------- algebra


def matrix_to_json(m: IntMatrix) -> dict:
    return m.to_json()


@_guard
def matrix_from_json(obj) -> IntMatrix:
    if not isinstance(obj, dict):
        raise ParseError("a matrix must be an object")
    return IntMatrix.from_json(obj)


def group_to_json(g: FgAbGroup) -> dict:
    return matrix_to_json(g.relations)


@_guard
def group_from_json(obj) -> FgAbGroup:
    return FgAbGroup(matrix_from_json(obj))


def complex_to_json(c: ChainComplex) -> dict:
    return {"min_degree": c.min_degree,
            "groups": [group_to_json(g) for g in c.groups],
            "differentials": [matrix_to_json(d.matrix) for d in c.differentials]}


@_guard
def complex_from_json(obj) -> ChainComplex:
    groups = [group_from_json(g) for g in obj["groups"]]
    mats = [matrix_from_json(m) for m in obj["differentials"]]
    if len(mats) != len(groups) - 1:
        raise ParseError("need one differential between consecutive groups")
    return ChainComplex.from_maps(int(obj["min_degree"]), groups, mats)


def chain_map_to_json(f: ChainMap) -> dict:
    return {"source": complex_to_json(f.source), "target": complex_to_json(f.target),
            "components": {str(n): matrix_to_json(h.matrix) for n, h in sorted(f.components.items())}}


@_guard
def chain_map_from_json(obj) -> ChainMap:
    a, b = complex_from_json(obj["source"]), complex_from_json(obj["target"])
    comps = {}
    for k, m in obj["components"].items():
        n = int(k)
        comps[n] = GroupHom(a.group(n), b.group(n), matrix_from_json(m))
    return ChainMap(a, b, comps)


def pic_to_json(c: ChainComplex, representation: str = "graded") -> dict:
    return {"representation": representation, "complex": complex_to_json(c)}


@_guard
def pic_from_json(obj) -> ChainComplex:
    if obj.get("representation") not in ("graded", "seqpair"):
        raise ParseError("representation must be 'graded' or 'seqpair'")
    return complex_from_json(obj["complex"])


# ---------------------------------------------------------------- omega-categories


def _label_out(x):
    if isinstance(x, CellPair):
        return {"M": sorted(_label_out(v) for v in x.M), "P": sorted(_label_out(v) for v in x.P)}
    return list(_label_out(v) for v in x) if isinstance(x, tuple) else x


def _label_in(x):
    if isinstance(x, dict):
        return CellPair(frozenset(_label_in(v) for v in x["M"]), frozenset(_label_in(v) for v in x["P"]))
    return tuple(_label_in(v) for v in x) if isinstance(x, list) else x


def omega_to_json(a: FiniteOmegaCat) -> dict:
    return {"elements": [_label_out(x) for x in a.labels],
            "stabilization": a.stabilization,
            "min_level": a.min_level,
            "s": [list(row) for row in a.s],
            "t": [list(row) for row in a.t],
            "compose": [sorted([x, y, z] for (x, y), z in table.items()) for table in a.compose]}


@_guard
def omega_from_json(obj) -> FiniteOmegaCat:
    labels = tuple(_label_in(x) for x in obj["elements"])
    size = len(labels)

    def ids(row):
        row = tuple(int(v) for v in row)
        if len(row) != size or any(not 0 <= v < size for v in row):
            raise ParseError("structure tables must list one valid element id per element")
        return row

    s = tuple(ids(r) for r in obj["s"])
    t = tuple(ids(r) for r in obj["t"])
    comp = []
    for table in obj["compose"]:
        d = {}
        for x, y, z in table:
            if not all(0 <= int(v) < size for v in (x, y, z)):
                raise ParseError("composition entry out of range")
            d[(int(x), int(y))] = int(z)
        comp.append(d)
    return FiniteOmegaCat(labels, int(obj["stabilization"]), s, t, tuple(comp), int(obj.get("min_level", 0)))


# ---------------------------------------------------------------- simplicial groups


def simplicial_to_json(g: SimplicialAbGroup) -> dict:
    return {"levels": [group_to_json(x) for x in g.levels],
            "faces": [[matrix_to_json(f.matrix) for f in fs] for fs in g.faces],
            "degeneracies": [[matrix_to_json(f.matrix) for f in ss] for ss in g.degeneracies]}


@_guard
def simplicial_from_json(obj) -> SimplicialAbGroup:
    levels = tuple(group_from_json(x) for x in obj["levels"])
    T = len(levels) - 1
    if len(obj["faces"]) != T + 1 or len(obj["degeneracies"]) != T:
        raise ParseError("need face lists for every level and degeneracies below the top")
    faces = tuple(tuple(GroupHom(levels[n], levels[n - 1], matrix_from_json(m)) for m in fs) if n else ()
                  for n, fs in enumerate(obj["faces"]))
    degs = tuple(tuple(GroupHom(levels[n], levels[n + 1], matrix_from_json(m)) for m in ss)
                 for n, ss in enumerate(obj["degeneracies"]))
    return SimplicialAbGroup(levels, faces, degs)


# ---------------------------------------------------------------- sites and presheaves


def site_to_json(site: FiniteSite) -> dict:
    out = {"opens": list(site.opens),
           "leq": sorted([a, b] for (a, b) in site.leq_pairs if a != b),
           "covers": {v: [list(u) for u in fams] for v, fams in site.covers.items()}}
    if site.empty is not None:
        out["empty"] = site.empty
    return out


@_guard
def site_from_json(obj) -> FiniteSite:
    return FiniteSite.build(obj["opens"], [tuple(p) for p in obj["leq"]], obj["covers"], obj.get("empty"))


def presheaf_to_json(f: Presheaf) -> dict:
    return {"site": site_to_json(f.site),
            "complexes": {u: complex_to_json(c) for u, c in f.complexes.items()},
            "restrictions": {f"{a}≤{b}": [matrix_to_json(g.component(n).matrix)
                                          for n in range(f.complexes[b].max_degree + 1)]
                             for (a, b), g in sorted(f.restrictions.items())}}


@_guard
def presheaf_from_json(obj) -> Presheaf:
    site = site_from_json(obj["site"])
    cx = {u: complex_from_json(c) for u, c in obj["complexes"].items()}
    res = {}
    for key, mats in obj.get("restrictions", {}).items():
        a, b = key.split("≤") if "≤" in key else key.split("<=")
        src, tgt = cx[b], cx[a]
        comps = {n: GroupHom(src.group(n), tgt.group(n), matrix_from_json(m)) for n, m in enumerate(mats)}
        res[(a, b)] = ChainMap(src, tgt, comps)
    return Presheaf(site, cx, res)


LOADERS = {
    "complex": complex_from_json,
    "chain_map": chain_map_from_json,
    "omega": omega_from_json,
    "simplicial": simplicial_from_json,
    "presheaf": presheaf_from_json,
    "pic": pic_from_json,
}


def detect_kind(obj) -> str:
    if not isinstance(obj, dict):
        raise ParseError("top-level JSON value must be an object")
    if "kind" in obj:
        return obj["kind"]
    if "representation" in obj:
        return "pic"
    if "differentials" in obj:
        return "complex"
    if "components" in obj:
        return "chain_map"
    if "elements" in obj:
        return "omega"
    if "faces" in obj:
        return "simplicial"
    if "complexes" in obj:
        return "presheaf"
    raise ParseError("cannot tell what kind of object this is")


def load(obj) -> tuple:
    """(kind, value) for any supported JSON object."""
    kind = detect_kind(obj)
    if kind not in LOADERS:
        raise ParseError(f"unknown kind {kind!r}")
    return kind, LOADERS[kind](obj)
