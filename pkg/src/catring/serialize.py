"""Canonical JSON formats for presentations, rings and modules.

Every file is a single JSON object with a `format_version` and a `kind`
field.  Serialization is canonical - sorted keys, compact separators,
basis monomials in monomial order - so identical mathematical content
produces byte-identical files.  A ring file carries a `ring_hash` (sha256
of its canonical form without that field); module files must name the
hash of the ring they were defined over and are rejected against any
other ring before any computation touches them.
"""

from __future__ import annotations

import hashlib
import json

from .completion import CategoryRing
from .modules import GradedModule
from .presentation import (
    CONJUGATION,
    IDENTITY,
    INDUCTION,
    MULTIPLICATION,
    RESTRICTION,
    Generator,
    Presentation,
    Relation,
)

FORMAT_VERSION = 1


class FormatError(ValueError):
    pass


def canonical_json(data) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def content_hash(data) -> str:
    stripped = {k: v for k, v in data.items() if k != "ring_hash"}
    return hashlib.sha256(canonical_json(stripped).encode("ascii")).hexdigest()


def save_json(path, data) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(canonical_json(data))
        fh.write("\n")


def load_json(path) -> dict:
    with open(path, "r", encoding="ascii") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise FormatError("expected a JSON object")
    return data


def _expect(data: dict, kind: str) -> None:
    if data.get("format_version") != FORMAT_VERSION:
        raise FormatError(f"unsupported format_version {data.get('format_version')!r}")
    if data.get("kind") != kind:
        raise FormatError(f"expected kind {kind!r}, found {data.get('kind')!r}")


# -- presentations -----------------------------------------------------


def generator_to_dict(g: Generator) -> dict:
    rec = {"kind": g.kind, "H": g.H}
    if g.kind in (RESTRICTION, INDUCTION):
        rec["L"] = g.L
    elif g.kind == CONJUGATION:
        rec["g"] = 1
    elif g.kind == MULTIPLICATION:
        rec["chi"] = 1
    return rec


def generator_from_dict(rec: dict) -> Generator:
    kind = rec["kind"]
    if kind not in (IDENTITY, CONJUGATION, MULTIPLICATION, RESTRICTION, INDUCTION):
        raise FormatError(f"unknown generator kind {kind!r}")
    return Generator(kind, rec["H"], rec.get("L"))


def presentation_to_dict(p: Presentation) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "kind": "presentation",
        "group_order": p.group_order,
        "objects": list(p.objects),
        "generators": [generator_to_dict(g) for g in p.generators],
        "relations": [
            {
                "tag": r.tag,
                "source": r.source,
                "target": r.target,
                "sides": [
                    [{"coefficient": c, "word": list(w)} for c, w in side] for side in r.sides
                ],
            }
            for r in p.relations
        ],
        "family_counts": dict(p.family_counts),
    }


def presentation_from_dict(data: dict) -> Presentation:
    _expect(data, "presentation")
    gens = [generator_from_dict(rec) for rec in data["generators"]]
    rels = [
        Relation(
            rec["tag"],
            rec["source"],
            rec["target"],
            tuple(
                tuple((t["coefficient"], tuple(t["word"])) for t in side) for side in rec["sides"]
            ),
        )
        for rec in data["relations"]
    ]
    p = Presentation(data["group_order"], gens, rels, data.get("family_counts"))
    if list(p.objects) != data["objects"]:
        raise FormatError("object list does not match the group order")
    p.validate()
    return p


# -- rings -------------------------------------------------------------


def ring_to_dict(ring: CategoryRing) -> dict:
    components = []
    for pair in ring.pairs:
        components.append(
            {
                "source": pair[0],
                "target": pair[1],
                "basis": [list(w) for w in ring.basis[pair]],
                "torsion": [m if m else None for m in ring.torsion[pair]],
            }
        )
    table = []
    for (u, v) in sorted(ring.table):
        vec = ring.table[(u, v)]
        if any(vec):
            table.append([u, v, list(vec)])
    arrow_forms = [
        {"generator": gi, "coefficients": list(ring.arrow_forms[gi].coeffs)}
        for gi in sorted(ring.arrow_forms)
    ]
    data = {
        "format_version": FORMAT_VERSION,
        "kind": "ring",
        "presentation": presentation_to_dict(ring.presentation),
        "max_len": ring.max_len,
        "window": ring.window,
        "stabilized_at": ring.stabilized_at,
        "generator_order": [g.name() for g in ring.presentation.generators],
        "components": components,
        "table": table,
        "arrow_forms": arrow_forms,
    }
    data["ring_hash"] = content_hash(data)
    return data


def ring_from_dict(data: dict) -> CategoryRing:
    _expect(data, "ring")
    if data.get("ring_hash") != content_hash(data):
        raise FormatError("ring_hash does not match the file content")
    pres = presentation_from_dict(data["presentation"])
    basis = {}
    torsion = {}
    for comp in data["components"]:
        pair = (comp["source"], comp["target"])
        basis[pair] = [tuple(w) for w in comp["basis"]]
        torsion[pair] = [m if m else None for m in comp["torsion"]]
    pairs = [(x, y) for x in pres.objects for y in pres.objects]
    if sorted(basis) != sorted(pairs):
        raise FormatError("components do not cover the object pairs")

    flat_pair = []
    for pair in pairs:
        for _ in basis[pair]:
            flat_pair.append(pair)
    nflat = len(flat_pair)
    offsets = {}
    off = 0
    for pair in pairs:
        offsets[pair] = off
        off += len(basis[pair])

    table = {}
    for u, v, vec in data["table"]:
        if not (0 <= u < nflat and 0 <= v < nflat):
            raise FormatError("table index out of range")
        table[(u, v)] = tuple(vec)
    for u in range(nflat):
        for v in range(nflat):
            if flat_pair[u][1] != flat_pair[v][0]:
                continue
            tgt = (flat_pair[u][0], flat_pair[v][1])
            table.setdefault((u, v), tuple([0] * len(basis[tgt])))
            if len(table[(u, v)]) != len(basis[tgt]):
                raise FormatError(f"table entry ({u},{v}) has the wrong length")

    arrow_forms = {}
    for rec in data["arrow_forms"]:
        gi = rec["generator"]
        g = pres.generators[gi]
        arrow_forms[gi] = (g.source, g.target, tuple(rec["coefficients"]))
    if sorted(arrow_forms) != sorted(pres.arrows):
        raise FormatError("arrow normal forms do not cover the arrows")

    return CategoryRing(
        pres,
        basis,
        torsion,
        table,
        arrow_forms,
        data["stabilized_at"],
        data["max_len"],
        data["window"],
    )


# -- modules -----------------------------------------------------------


def module_to_dict(module: GradedModule, ring_hash: str) -> dict:
    values = []
    for (obj, deg) in module.slots:
        values.append(
            {
                "object": obj,
                "degree": deg,
                "generators": list(module.gens[(obj, deg)]),
                "relations": [list(r) for r in module.rels[(obj, deg)]],
            }
        )
    actions = []
    for fb in range(len(module.ring.flat)):
        for deg in (0, 1):
            actions.append(
                {
                    "basis": fb,
                    "degree": deg,
                    "matrix": [list(r) for r in module.act[(fb, deg)]],
                }
            )
    return {
        "format_version": FORMAT_VERSION,
        "kind": "module",
        "ring_hash": ring_hash,
        "values": values,
        "actions": actions,
    }


def module_from_dict(ring: CategoryRing, data: dict, ring_hash: str) -> GradedModule:
    _expect(data, "module")
    if data.get("ring_hash") != ring_hash:
        raise FormatError(
            "module file references a different ring "
            f"({data.get('ring_hash')!r} != {ring_hash!r})"
        )
    gens = {}
    rels = {}
    for rec in data["values"]:
        slot = (rec["object"], rec["degree"])
        gens[slot] = tuple(rec["generators"])
        rels[slot] = tuple(tuple(r) for r in rec["relations"])
    act = {}
    for rec in data["actions"]:
        act[(rec["basis"], rec["degree"])] = tuple(tuple(r) for r in rec["matrix"])
    module = GradedModule(ring, gens, rels, act)
    module.validate()
    return module
