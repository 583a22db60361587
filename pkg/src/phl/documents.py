"""Document parsing and canonical serialization for every value kind.

Documents are JSON with a ``kind`` discriminator.  Serialization is
canonical: sorted keys, two-space indent, trailing newline; identical
values always produce byte-identical text.
"""

from __future__ import annotations

import json
from pathlib import Path

from .core import (
    PresheafMap,
    PresheafObject,
    ValidationError,
    fin_graph,
    fin_set,
)
from .lifting import AnodyneFamily, FamilyEntry
from .monads import FiniteCategory, FiniteMonoid


def canonical_json(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def _load(source):
    if isinstance(source, dict):
        return source
    if isinstance(source, Path):
        text = source.read_text(encoding="utf-8")
    elif isinstance(source, str) and "\n" not in source and source.endswith(".json"):
        text = Path(source).read_text(encoding="utf-8")
    else:
        text = source
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"document is not well-formed JSON: {exc}") from exc


def parse_document(source):
    """Validated typed object from a document, path, or JSON text."""
    doc = _load(source)
    if not isinstance(doc, dict):
        raise ValidationError("document must be a JSON object")
    kind = doc.get("kind")
    if kind == "set":
        return fin_set(doc.get("elements", []))
    if kind == "graph":
        return fin_graph(doc.get("vertices", []), doc.get("edges", []))
    if kind == "sset":
        return _parse_sset(doc)
    if kind == "map":
        return _parse_map(doc)
    if kind == "monoid":
        return FiniteMonoid(
            doc.get("elements", []), doc.get("unit"), doc.get("table", {}),
            name=doc.get("name", "monoid"),
        )
    if kind == "category":
        return FiniteCategory(
            doc.get("objects", []), doc.get("morphisms", []),
            doc.get("identities", {}), doc.get("compose", {}),
            name=doc.get("name", "category"),
        )
    if kind == "seeds":
        return {
            "instance": doc.get("instance"),
            "seeds": [_parse_map(m) for m in doc.get("seeds", [])],
            "generators": [_parse_map(m) for m in doc.get("generators", [])] or None,
        }
    if kind == "family":
        return _parse_family(doc)
    if kind == "square":
        return {
            "left": _parse_map(doc["left"]),
            "right": _parse_map(doc["right"]),
            "top": _parse_map(doc["top"]),
            "bottom": _parse_map(doc["bottom"]),
            "corner": doc.get("corner"),
        }
    raise ValidationError(f"unknown sort {kind!r}")


def _parse_sset(doc):
    from .simplicial import trunc_sset

    cap = doc.get("cap")
    if not isinstance(cap, int):
        raise ValidationError("sset document needs an integer cap")
    cells = {int(n): tuple(v) for n, v in doc.get("cells", {}).items()}
    faces, degens = {}, {}
    for n, table in doc.get("faces", {}).items():
        n = int(n)
        for cell, images in table.items():
            for i, image in enumerate(images):
                faces.setdefault((n, i), {})[cell] = image
    for n, table in doc.get("degeneracies", {}).items():
        n = int(n)
        for cell, images in table.items():
            for i, image in enumerate(images):
                degens.setdefault((n, i), {})[cell] = image
    return trunc_sset(cap, cells, faces, degens)


def _parse_map(doc):
    if doc.get("kind") != "map":
        raise ValidationError("expected a map document")
    domain = parse_document(doc["domain"])
    codomain = parse_document(doc["codomain"])
    return PresheafMap(domain, codomain, doc.get("on", {}))


def _parse_family(doc):
    entries = []
    for entry in doc.get("entries", []):
        entries.append(
            FamilyEntry(_parse_map(entry["arrow"]), entry["depth"], entry["provenance"])
        )
    return AnodyneFamily(
        doc.get("instance", "?"),
        tuple(entries),
        doc.get("depth", 0),
        doc.get("seed_count", 0),
        doc.get("generator_count", 0),
        {int(k): v for k, v in doc.get("pre_dedup_counts", {}).items()},
    )


# ---------------------------------------------------------------------------
# Serializers
# ---------------------------------------------------------------------------

def object_to_document(obj: PresheafObject) -> dict:
    name = obj.signature.name
    if name == "set":
        return {"kind": "set", "elements": list(obj.cells["element"])}
    if name == "graph":
        return {
            "kind": "graph",
            "vertices": list(obj.cells["vertex"]),
            "edges": [
                [e, obj.op("src", e), obj.op("tgt", e)] for e in obj.cells["edge"]
            ],
        }
    if name.startswith("sset@"):
        cap = len(obj.signature.sorts) - 1
        faces = {}
        degens = {}
        for n in range(1, cap + 1):
            faces[str(n)] = {
                cell: [obj.op(f"d{n}_{i}", cell) for i in range(n + 1)]
                for cell in obj.cells[str(n)]
            }
        for n in range(cap):
            degens[str(n)] = {
                cell: [obj.op(f"s{n}_{i}", cell) for i in range(n + 1)]
                for cell in obj.cells[str(n)]
            }
        return {
            "kind": "sset",
            "cap": cap,
            "cells": {str(n): list(obj.cells[str(n)]) for n in range(cap + 1)},
            "faces": faces,
            "degeneracies": degens,
        }
    raise ValidationError(f"cannot serialize objects of base {name!r}")


def map_to_document(f: PresheafMap) -> dict:
    return {
        "kind": "map",
        "domain": object_to_document(f.domain),
        "codomain": object_to_document(f.codomain),
        "on": {sort: dict(f.on[sort]) for sort in f.domain.signature.sorts},
    }


def monoid_to_document(m: FiniteMonoid) -> dict:
    return {
        "kind": "monoid",
        "name": m.name,
        "elements": list(m.elements),
        "unit": m.unit,
        "table": {a: dict(m.table[a]) for a in m.elements},
    }


def category_to_document(c: FiniteCategory) -> dict:
    return {
        "kind": "category",
        "name": c.name,
        "objects": list(c.objects),
        "morphisms": [[m, c.src[m], c.tgt[m]] for m in c.morphisms],
        "identities": dict(c.identities),
        "compose": {f: dict(c.compose[f]) for f in c.morphisms},
    }


def family_to_document(family: AnodyneFamily) -> dict:
    return {
        "kind": "family",
        "instance": family.instance_name,
        "depth": family.depth,
        "seed_count": family.seed_count,
        "generator_count": family.generator_count,
        "pre_dedup_counts": {str(k): v for k, v in family.pre_dedup_counts.items()},
        "entries": [
            {
                "depth": entry.depth,
                "provenance": entry.provenance,
                "arrow": map_to_document(entry.arrow),
            }
            for entry in family.entries
        ],
    }


def algebra_to_document(algebra) -> dict:
    if isinstance(algebra, FiniteMonoid):
        return monoid_to_document(algebra)
    if isinstance(algebra, FiniteCategory):
        return category_to_document(algebra)
    raise ValidationError(f"cannot serialize {algebra!r}")
