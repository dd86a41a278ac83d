"""JSON file formats for models, relations, tuple families and world maps."""
from __future__ import annotations

import json
from typing import Any

from .graded import OMEGA, GradedModel, parse_extnat
from .kripke import KripkeModel
from .neighbourhood import CoreModel, NeighbourhoodModel, WorldMap


class FormatError(ValueError):
    pass


def _keys(doc: dict, required: set[str], optional: set[str] = frozenset()) -> None:
    if not isinstance(doc, dict):
        raise FormatError("expected a JSON object")
    unknown = set(doc) - required - optional
    if unknown:
        raise FormatError(f"unknown keys: {sorted(unknown)}")
    missing = required - set(doc)
    if missing:
        raise FormatError(f"missing keys: {sorted(missing)}")


def _val(doc) -> dict[str, list[str]]:
    val = doc.get("val", {})
    if not isinstance(val, dict):
        raise FormatError("'val' must map letters to world lists")
    return val


def model_from_json(doc: dict[str, Any]):
    kind = doc.get("type") if isinstance(doc, dict) else None
    try:
        if kind == "kripke":
            _keys(doc, {"type", "worlds"}, {"rel", "val"})
            return KripkeModel(doc["worlds"], [tuple(p) for p in doc.get("rel", [])], _val(doc))
        if kind == "graded":
            _keys(doc, {"type", "worlds"}, {"sigma", "val"})
            sigma = {}
            for a, b, k in doc.get("sigma", []):
                if (a, b) in sigma:
                    raise FormatError(f"duplicate sigma entry ({a}, {b})")
                sigma[(a, b)] = parse_extnat(k)
            return GradedModel(doc["worlds"], sigma, _val(doc))
        if kind == "nbhd":
            _keys(doc, {"type", "worlds", "max_grade"}, {"nu", "nu0", "val"})
            nu = {}
            for entry in doc.get("nu", []):
                _keys(entry, {"world", "grade", "sets"})
                key = (entry["world"], entry["grade"])
                if key in nu:
                    raise FormatError(f"duplicate nu entry {key}")
                nu[key] = entry["sets"]
            nu0 = {}
            for entry in doc.get("nu0", []):
                _keys(entry, {"world", "sets"})
                nu0[entry["world"]] = entry["sets"]
            return NeighbourhoodModel(doc["worlds"], doc["max_grade"], nu, nu0, _val(doc))
        if kind == "nbhd-core":
            _keys(doc, {"type", "worlds", "core"}, {"val"})
            return CoreModel(doc["worlds"], doc["core"], _val(doc))
    except (TypeError, KeyError) as exc:
        raise FormatError(f"malformed {kind} model: {exc}") from exc
    raise FormatError(f"unknown model type {kind!r}")


def _val_json(m) -> dict[str, list[str]]:
    return {p: sorted(s) for p, s in sorted(m.val.items())}


def model_to_json(m) -> dict[str, Any]:
    if isinstance(m, KripkeModel):
        return {"type": "kripke", "worlds": list(m.worlds), "rel": [list(p) for p in sorted(m.rel)],
                "val": _val_json(m)}
    if isinstance(m, GradedModel):
        sigma = [[a, b, "omega" if k is OMEGA else k] for (a, b), k in sorted(m.sigma.items())]
        return {"type": "graded", "worlds": list(m.worlds), "sigma": sigma, "val": _val_json(m)}
    if isinstance(m, CoreModel):
        return {"type": "nbhd-core", "worlds": list(m.worlds),
                "core": {w: sorted(c) for w, c in m.core.items()}, "val": _val_json(m)}
    if isinstance(m, NeighbourhoodModel):
        nu = []
        for i, w in enumerate(m.worlds):
            for n in range(1, m.max_grade + 1):
                sets = m.collection(w, n)
                if sets:
                    nu.append({"world": w, "grade": n, "sets": sets})
        doc = {"type": "nbhd", "worlds": list(m.worlds), "max_grade": m.max_grade, "nu": nu}
        nu0 = [{"world": w, "sets": m.collection(w, 0)}
               for i, w in enumerate(m.worlds) if m.has_nu0_override(i)]
        if nu0:
            doc["nu0"] = nu0
        doc["val"] = _val_json(m)
        return doc
    raise TypeError(f"not a model: {m!r}")


def relation_from_json(doc) -> frozenset[tuple[str, str]]:
    _keys(doc, {"pairs"})
    return frozenset((a, b) for a, b in doc["pairs"])


def relation_to_json(Z) -> dict[str, Any]:
    return {"pairs": [list(p) for p in sorted(Z)]}


def family_from_json(doc) -> dict[int, frozenset]:
    _keys(doc, {"family"})
    fam: dict[int, set] = {}
    for entry in doc["family"]:
        _keys(entry, {"grade", "pairs"})
        fam.setdefault(entry["grade"], set()).update(
            (frozenset(x), frozenset(y)) for x, y in entry["pairs"])
    return {k: frozenset(v) for k, v in fam.items()}


def family_to_json(T) -> dict[str, Any]:
    out = []
    for k in sorted(T):
        pairs = sorted([sorted(x), sorted(y)] for x, y in T[k])
        out.append({"grade": k, "pairs": pairs})
    return {"family": out}


def map_from_json(doc) -> WorldMap:
    _keys(doc, {"map"})
    return WorldMap(dict(doc["map"]))


def map_to_json(f: WorldMap) -> dict[str, Any]:
    return {"map": dict(sorted(f.mapping.items()))}


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2) + "\n"


def load(path: str) -> Any:
    with open(path) as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: {exc}") from exc
