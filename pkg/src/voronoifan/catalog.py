"""JSON persistence for enumerated perfect-form catalogs.

Rationals are written as "p/q" strings and matrices as row-major arrays of
those strings, so no value ever passes through a float. The file carries a
sha256 digest of its own canonical serialization; ``dumps(loads(text))``
reproduces ``text`` byte for byte.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .cones import Facet, PolyCone
from .exactcore import IntVector, QuadForm, UnimodularMap, format_rational, rank1
from .perfection import (NeighborLink, PerfectFormRecord, invariant_key,
                         perfection_rank, verify_link)
from .shortvec import MinVecSet, minimal_vectors

VERSION = 1


class CatalogError(ValueError):
    pass


class CatalogVersionError(CatalogError):
    pass


class CatalogDigestError(CatalogError):
    pass


@dataclass
class CatalogFile:
    g: int
    records: list[PerfectFormRecord]
    version: int = VERSION


def _q(v) -> str | None:
    return None if v is None else format_rational(v)


def _unq(s) -> Fraction | None:
    return None if s is None else Fraction(s)


def _matrix(rows) -> list[list[str]]:
    return [[format_rational(v) for v in row] for row in rows]


def _record_json(rec: PerfectFormRecord) -> dict:
    return {
        "id": rec.class_id,
        "gram": _matrix(rec.form.gram),
        "minimum": format_rational(rec.minvecs.minimum),
        "kissing": rec.kissing,
        "min_vectors": [list(x) for x in rec.minvecs.reps],
        "facets": [{"normal": list(f.normal), "members": list(f.members)} for f in rec.cone.facets],
        "automorphism_order": rec.aut_order,
    }


def _certificate_json(rec: PerfectFormRecord) -> dict:
    return {
        "id": rec.class_id,
        "links": [{
            "facet": l.facet,
            "target": l.target,
            "rho": _q(l.rho),
            "scale": _q(l.scale),
            "witness": None if l.witness is None else [list(r) for r in l.witness.matrix],
        } for l in rec.neighbors],
    }


def _body(cat: CatalogFile) -> dict:
    return {
        "version": cat.version,
        "g": cat.g,
        "classes": [_record_json(r) for r in cat.records],
        "certificates": [_certificate_json(r) for r in cat.records],
    }


def _canonical(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def _digest(body: dict) -> str:
    return hashlib.sha256(_canonical(body).encode()).hexdigest()


def dumps(cat: CatalogFile) -> str:
    body = _body(cat)
    doc = dict(body, digest=_digest(body))
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def _record_from(cls: dict, cert: dict, g: int) -> PerfectFormRecord:
    form = QuadForm([[Fraction(v) for v in row] for row in cls["gram"]])
    reps = tuple(IntVector(x) for x in cls["min_vectors"])
    mv = MinVecSet(Fraction(cls["minimum"]), reps)
    if mv.kissing != cls["kissing"]:
        raise CatalogError(f"class {cls['id']}: kissing number disagrees with its vectors")
    facets = tuple(Facet(tuple(f["normal"]), tuple(f["members"])) for f in cls["facets"])
    cone = PolyCone(g, tuple(rank1(x) for x in reps), facets, (), tuple(map(tuple, reps)))
    links = [NeighborLink(l["facet"], l["target"], _unq(l["rho"]), _unq(l["scale"]),
                          None if l["witness"] is None else UnimodularMap(l["witness"]))
             for l in cert["links"]]
    return PerfectFormRecord(cls["id"], form, mv, cone, invariant_key(form, mv), links,
                             cls["automorphism_order"])


def loads(text: str) -> CatalogFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CatalogError(f"not a catalog document: {exc}") from None
    if not isinstance(doc, dict) or doc.get("version") != VERSION:
        got = doc.get("version") if isinstance(doc, dict) else None
        raise CatalogVersionError(f"catalog version {got!r}, reader expects {VERSION}")
    digest = doc.pop("digest", None)
    if digest != _digest(doc):
        raise CatalogDigestError("digest mismatch: the catalog was modified or corrupted")
    g = doc["g"]
    certs = {c["id"]: c for c in doc["certificates"]}
    recs = [_record_from(c, certs[c["id"]], g) for c in doc["classes"]]
    return CatalogFile(g, recs, doc["version"])


def save(cat: CatalogFile, path) -> None:
    Path(path).write_text(dumps(cat))


def load(path) -> CatalogFile:
    return loads(Path(path).read_text())


def verify(cat: CatalogFile) -> list[str]:
    """Independent re-check; returns a list of failures (empty when sound).

    Minimal vectors and perfection ranks are recomputed, every facet normal is
    checked against its member list, every neighbour link is checked by exact
    substitution and one link per class has its rho recomputed from scratch.
    """
    problems = []
    full = cat.g * (cat.g + 1) // 2
    ids = {r.class_id for r in cat.records}
    for rec in cat.records:
        cid = rec.class_id
        mv = minimal_vectors(rec.form)
        if mv.minimum != rec.minvecs.minimum or set(mv.reps) != set(rec.minvecs.reps):
            problems.append(f"{cid}: minimal vectors differ from recomputation")
            continue
        if perfection_rank(rec.form) != full:
            problems.append(f"{cid}: perfection rank below {full}")
        coords = [b.coords() for b in rec.cone.generators]
        for k, f in enumerate(rec.cone.facets):
            vals = [sum(a * b for a, b in zip(f.normal, c)) for c in coords]
            if any(v < 0 for v in vals) or tuple(i for i, v in enumerate(vals) if v == 0) != f.members:
                problems.append(f"{cid}: facet {k} does not support its members")
        if len(rec.neighbors) != len(rec.cone.facets):
            problems.append(f"{cid}: {len(rec.neighbors)} links for {len(rec.cone.facets)} facets")
        recomputed = False
        for link in rec.neighbors:
            if link.target is not None and link.target not in ids:
                problems.append(f"{cid}: facet {link.facet} links to unknown class {link.target}")
                continue
            deep = not recomputed and link.target is not None
            if not verify_link(cat.records, rec, link, recompute=deep):
                problems.append(f"{cid}: neighbour certificate for facet {link.facet} fails")
            recomputed = recomputed or deep
    return problems
