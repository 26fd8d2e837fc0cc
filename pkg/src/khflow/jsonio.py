"""JSON documents for every result type, checked against the schemas in ``schemas/``."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from typing import Any, Hashable

import jsonschema

from .flow import BoundaryReport, FlowCategorySkeleton
from .homology import HomologyGroup, HomologyTable
from .khcomplex import BigradedComplex, Block, LabeledGenerator
from .laurent import LaurentPolynomial
from .matrix import SparseMatrix
from .pd import LinkDiagram, serialize

VERSION = 1
KINDS = ("complex", "cube", "flowcheck", "generators", "homology", "jones", "skeleton")


def tag(kind: str) -> str:
    return f"khflow.{kind}/{VERSION}"


@lru_cache(maxsize=None)
def schema(kind: str) -> dict:
    if kind not in KINDS:
        raise KeyError(f"no schema named {kind!r}")
    return json.loads(resources.files("khflow.schemas").joinpath(f"{kind}.schema.json").read_text())


def validate(doc: dict, kind: str) -> None:
    """Raise ``jsonschema.ValidationError`` unless ``doc`` is a valid ``kind`` document."""
    jsonschema.validate(doc, schema(kind))


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def object_name(obj: Hashable) -> str:
    if isinstance(obj, tuple) and all(isinstance(b, int) for b in obj):
        return "".join(map(str, obj))
    return str(obj)


def diagram_json(d: LinkDiagram) -> dict:
    return {"pd": serialize(d), "crossings": len(d.crossings), "writhe": d.writhe, "components": d.n_components}


# -- homology and polynomials ------------------------------------------------

def homology_json(d: LinkDiagram, h: HomologyTable) -> dict:
    table = [
        {"i": i, "j": j, "free": g.free_rank, "torsion": list(g.torsion)} for (i, j), g in h.nonzero().items()
    ]
    return {"schema": tag("homology"), "diagram": diagram_json(d), "table": table}


def homology_from_json(doc: dict) -> HomologyTable:
    validate(doc, "homology")
    return HomologyTable(
        {(e["i"], e["j"]): HomologyGroup(e["free"], tuple(e["torsion"])) for e in doc["table"]}
    )


def jones_json(d: LinkDiagram, v: LaurentPolynomial, oracle: LaurentPolynomial | None = None) -> dict:
    doc: dict[str, Any] = {"schema": tag("jones"), "diagram": diagram_json(d), "jones": v.to_json()}
    if oracle is not None:
        doc["oracle"] = {"euler": v.to_json(), "kauffman": oracle.to_json(), "difference": (v - oracle).to_json()}
    return doc


def generators_json(d: LinkDiagram, gens: list[LabeledGenerator]) -> dict:
    return {
        "schema": tag("generators"),
        "diagram": diagram_json(d),
        "generators": [{"key": g.key, "gr_h": g.gr_h, "gr_q": g.gr_q} for g in gens],
    }


# -- complexes -------------------------------------------------------------

def complex_json(c: BigradedComplex) -> dict:
    blocks = []
    for j, b in sorted(c.blocks.items()):
        blocks.append({
            "q": j,
            "bases": [{"degree": i, "basis": [object_name(x) for x in basis]} for i, basis in sorted(b.bases.items())],
            "maps": [
                {"from": i, "rows": m.nrows, "cols": m.ncols, "entries": [list(t) for t in sorted(m.triplets())]}
                for i, m in sorted(b.maps.items())
            ],
        })
    doc = {"schema": tag("complex"), "direction": c.direction, "graded": c.graded, "blocks": blocks}
    if c.generators:
        doc["generators"] = [
            {"key": k, "gr_h": g.gr_h, "gr_q": g.gr_q} for k, g in sorted(c.generators.items())
        ]
    return doc


def complex_from_json(doc: dict) -> BigradedComplex:
    """Rebuild a complex; basis elements come back as their string keys."""
    validate(doc, "complex")
    blocks = {}
    for bd in doc["blocks"]:
        b = Block()
        b.bases = {e["degree"]: list(e["basis"]) for e in bd["bases"]}
        b.maps = {m["from"]: SparseMatrix.from_triplets(m["rows"], m["cols"], m["entries"]) for m in bd["maps"]}
        blocks[bd["q"]] = b
    return BigradedComplex(blocks, doc["direction"], graded=doc["graded"])


# -- flow categories ---------------------------------------------------------

def skeleton_json(fc: FlowCategorySkeleton) -> dict:
    names = {o: object_name(o) for o in fc.objects}
    if len(set(names.values())) != len(names):
        raise ValueError("object names collide after conversion to strings")
    return {
        "schema": tag("skeleton"),
        "name": fc.name,
        "objects": [{"name": names[o], "index": fc.index[o]} for o in fc.objects],
        "moduli": [
            {"source": names[a], "target": names[b], "points": list(fc.moduli[(a, b)])}
            for a, b in sorted(fc.moduli, key=lambda ab: (names[ab[0]], names[ab[1]]))
        ],
    }


def skeleton_from_json(doc: dict) -> FlowCategorySkeleton:
    validate(doc, "skeleton")
    index = {o["name"]: o["index"] for o in doc["objects"]}
    if len(index) != len(doc["objects"]):
        raise ValueError("duplicate object names")
    moduli = {}
    for m in doc["moduli"]:
        key = (m["source"], m["target"])
        if key in moduli:
            raise ValueError(f"moduli space {key} listed twice")
        if "points" in m:
            moduli[key] = tuple(m["points"])
        else:
            n = m["count"]
            moduli[key] = (1 if n > 0 else -1,) * abs(n)
    return FlowCategorySkeleton(index, moduli, doc.get("name", ""))


def flowcheck_json(report: BoundaryReport, name: str = "") -> dict:
    return {
        "schema": tag("flowcheck"),
        "name": name,
        "balanced": report.ok,
        "pairs": [
            {
                "source": object_name(p.source),
                "target": object_name(p.target),
                "boundary_points": p.boundary_points,
                "total": p.total,
                "balanced": p.balanced,
                "broken": [
                    {"middle": object_name(b.middle), "first": b.first, "second": b.second, "contribution": b.contribution}
                    for b in p.broken
                ],
            }
            for p in report.pairs
        ],
    }
