"""Versioned JSON serialization for all object kinds.

Serialized files look like {"schema_version": 1, "object": {...}} where every
object dict carries a "kind" discriminator.  Free-group data uses the word
text syntax (whitespace-separated tokens, uppercase first letter = inverse)
together with the generator names in use, so round trips are exact.
"""

from __future__ import annotations

import json
from typing import Any

from .errors import SchemaError
from .fibered import Ambient, FiberedKnot
from .laurent import LaurentPoly
from .matrices import IntMatrix
from .mcg import CurveSpec, HandlebodyMonodromy, SurfaceMonodromy
from .presentation import GroupPresentation
from .ribbon_disk import FiberedDisk, FiberType
from .two_knot import FiberedTwoKnot, FillingDescriptor, PlanEntry, SurgeryPlan
from .words import (FreeGroupMap, handlebody_names, surface_names,
                    word_from_text, word_to_text)

SCHEMA_VERSION = 1


def _names_for_rank(rank: int, flavor: str) -> tuple[str, ...]:
    if flavor == "surface":
        if rank % 2:
            raise SchemaError("surface word rank must be even")
        return surface_names(rank // 2)
    return handlebody_names(rank)


def _map_to_json(f: FreeGroupMap, flavor: str) -> dict:
    names = _names_for_rank(f.rank, flavor)
    out = {
        "kind": "free_group_map",
        "names": list(names),
        "images": [word_to_text(w, names) for w in f.images],
        "inverse_images": None,
    }
    if f.inverse_images is not None:
        out["inverse_images"] = [word_to_text(w, names) for w in f.inverse_images]
    return out


def _map_from_json(d: dict, path: str) -> FreeGroupMap:
    names = _expect(d, "names", list, path)
    images = [word_from_text(s, names) for s in _expect(d, "images", list, path)]
    invs = d.get("inverse_images")
    inverse_images = None
    if invs is not None:
        inverse_images = tuple(word_from_text(s, names) for s in invs)
    return FreeGroupMap(len(names), tuple(images), inverse_images)


def _expect(d: dict, key: str, typ, path: str):
    if key not in d:
        raise SchemaError(f"missing key {key!r}", path)
    value = d[key]
    if typ is not None and not isinstance(value, typ):
        raise SchemaError(f"key {key!r} must be {typ.__name__}", f"{path}.{key}")
    return value


def to_jsonable(obj: Any) -> Any:
    if isinstance(obj, LaurentPoly):
        return {"kind": "laurent_poly", "terms": [[e, c] for e, c in obj.terms]}
    if isinstance(obj, IntMatrix):
        return {"kind": "int_matrix", "rows": obj.rows, "cols": obj.cols,
                "entries": [list(row) for row in obj.entries]}
    if isinstance(obj, Ambient):
        return {"kind": "ambient", "tag": obj.kind, "descriptor": obj.descriptor}
    if isinstance(obj, CurveSpec):
        return {
            "kind": "curve_spec",
            "genus": obj.genus,
            "homology_class": list(obj.homology_class),
            "pi1_payload": None if obj.pi1_payload is None
            else _map_to_json(obj.pi1_payload, "surface"),
            "bounds_disk_in_handlebody": obj.bounds_disk_in_handlebody,
            "unknotted_in_ambient": obj.unknotted_in_ambient,
            "fiber_framing_zero": obj.fiber_framing_zero,
            "name": obj.name,
        }
    if isinstance(obj, SurfaceMonodromy):
        return {
            "kind": "surface_monodromy",
            "genus": obj.genus,
            "action": to_jsonable(obj.action),
            "pi1_action": None if obj.pi1_action is None
            else _map_to_json(obj.pi1_action, "surface"),
            "provenance": [[to_jsonable(c), m] for c, m in obj.provenance],
        }
    if isinstance(obj, HandlebodyMonodromy):
        return {
            "kind": "handlebody_monodromy",
            "genus": obj.genus,
            "pi1_action": _map_to_json(obj.pi1_action, "handlebody"),
            "boundary": to_jsonable(obj.boundary),
        }
    if isinstance(obj, FiberedKnot):
        return {"kind": "fibered_knot", "ambient": to_jsonable(obj.ambient),
                "genus": obj.genus, "monodromy": to_jsonable(obj.monodromy),
                "label": obj.label}
    if isinstance(obj, FiberType):
        return {"kind": "fiber_type", "genus": obj.genus,
                "summand_label": obj.summand_label}
    if isinstance(obj, FiberedDisk):
        return {
            "kind": "fibered_disk",
            "ambient": to_jsonable(obj.ambient),
            "fiber": to_jsonable(obj.fiber),
            "monodromy": to_jsonable(obj.monodromy),
            "twist_history": [[to_jsonable(c), m] for c, m in obj.twist_history],
            "label": obj.label,
        }
    if isinstance(obj, FiberedTwoKnot):
        return {
            "kind": "fibered_two_knot",
            "ambient": to_jsonable(obj.ambient),
            "fiber_rank": obj.fiber_rank,
            "monodromy_pi1": _map_to_json(obj.monodromy_pi1, "handlebody"),
            "gluck_parity": obj.gluck_parity,
            "provenance": list(obj.provenance),
            "label": obj.label,
        }
    if isinstance(obj, GroupPresentation):
        return {"kind": "group_presentation", "generators": list(obj.generators),
                "relators": [word_to_text(r, obj.generators) for r in obj.relators]}
    if isinstance(obj, FillingDescriptor):
        return {"kind": "filling_descriptor", "base": obj.base,
                "slope": list(obj.slope)}
    if isinstance(obj, PlanEntry):
        return {"phase": obj.phase, "torus_id": obj.torus_id,
                "curve": None if obj.curve is None else to_jsonable(obj.curve),
                "twist_sign": obj.twist_sign}
    if isinstance(obj, SurgeryPlan):
        return {"kind": "surgery_plan", "source_genus": obj.source_genus,
                "target_genus": obj.target_genus,
                "entries": [to_jsonable(e) for e in obj.entries]}
    raise SchemaError(f"cannot serialize {type(obj).__name__}")


def from_jsonable(data: Any, path: str = "$") -> Any:
    if not isinstance(data, dict):
        raise SchemaError("expected an object", path)
    kind = _expect(data, "kind", str, path)
    if kind == "laurent_poly":
        terms = _expect(data, "terms", list, path)
        return LaurentPoly(tuple((int(e), int(c)) for e, c in terms))
    if kind == "int_matrix":
        rows = _expect(data, "rows", int, path)
        cols = _expect(data, "cols", int, path)
        entries = _expect(data, "entries", list, path)
        if len(entries) != rows:
            raise SchemaError("entry row count mismatch", f"{path}.entries")
        for i, row in enumerate(entries):
            if not isinstance(row, list) or len(row) != cols:
                raise SchemaError("ragged matrix row", f"{path}.entries[{i}]")
        return IntMatrix(rows, cols, tuple(tuple(int(x) for x in row) for row in entries))
    if kind == "ambient":
        return Ambient(_expect(data, "tag", str, path), data.get("descriptor"))
    if kind == "free_group_map":
        return _map_from_json(data, path)
    if kind == "curve_spec":
        payload = data.get("pi1_payload")
        return CurveSpec(
            _expect(data, "genus", int, path),
            tuple(_expect(data, "homology_class", list, path)),
            None if payload is None else _map_from_json(payload, f"{path}.pi1_payload"),
            bool(data.get("bounds_disk_in_handlebody", False)),
            bool(data.get("unknotted_in_ambient", False)),
            bool(data.get("fiber_framing_zero", False)),
            data.get("name"),
        )
    if kind == "surface_monodromy":
        payload = data.get("pi1_action")
        prov = tuple((from_jsonable(c, f"{path}.provenance[{i}]"), int(m))
                     for i, (c, m) in enumerate(_expect(data, "provenance", list, path)))
        return SurfaceMonodromy(
            _expect(data, "genus", int, path),
            from_jsonable(_expect(data, "action", dict, path), f"{path}.action"),
            None if payload is None else _map_from_json(payload, f"{path}.pi1_action"),
            prov,
        )
    if kind == "handlebody_monodromy":
        return HandlebodyMonodromy(
            _expect(data, "genus", int, path),
            _map_from_json(_expect(data, "pi1_action", dict, path), f"{path}.pi1_action"),
            from_jsonable(_expect(data, "boundary", dict, path), f"{path}.boundary"),
        )
    if kind == "fibered_knot":
        return FiberedKnot(
            from_jsonable(_expect(data, "ambient", dict, path), f"{path}.ambient"),
            _expect(data, "genus", int, path),
            from_jsonable(_expect(data, "monodromy", dict, path), f"{path}.monodromy"),
            data.get("label"),
        )
    if kind == "fiber_type":
        return FiberType(_expect(data, "genus", int, path), data.get("summand_label"))
    if kind == "fibered_disk":
        history = tuple((from_jsonable(c, f"{path}.twist_history[{i}]"), int(m))
                        for i, (c, m) in enumerate(_expect(data, "twist_history", list, path)))
        return FiberedDisk(
            from_jsonable(_expect(data, "ambient", dict, path), f"{path}.ambient"),
            from_jsonable(_expect(data, "fiber", dict, path), f"{path}.fiber"),
            from_jsonable(_expect(data, "monodromy", dict, path), f"{path}.monodromy"),
            history,
            data.get("label"),
        )
    if kind == "fibered_two_knot":
        return FiberedTwoKnot(
            from_jsonable(_expect(data, "ambient", dict, path), f"{path}.ambient"),
            _expect(data, "fiber_rank", int, path),
            _map_from_json(_expect(data, "monodromy_pi1", dict, path),
                           f"{path}.monodromy_pi1"),
            _expect(data, "gluck_parity", int, path),
            tuple(_expect(data, "provenance", list, path)),
            data.get("label"),
        )
    if kind == "group_presentation":
        gens = tuple(_expect(data, "generators", list, path))
        relators = tuple(word_from_text(s, gens)
                         for s in _expect(data, "relators", list, path))
        return GroupPresentation(gens, relators)
    if kind == "filling_descriptor":
        slope = _expect(data, "slope", list, path)
        return FillingDescriptor(_expect(data, "base", str, path),
                                 (int(slope[0]), int(slope[1])))
    if kind == "surgery_plan":
        entries = []
        for i, e in enumerate(_expect(data, "entries", list, path)):
            curve = e.get("curve")
            entries.append(PlanEntry(
                int(e["phase"]), str(e["torus_id"]),
                None if curve is None else from_jsonable(curve, f"{path}.entries[{i}].curve"),
                int(e["twist_sign"])))
        return SurgeryPlan(_expect(data, "source_genus", int, path),
                           _expect(data, "target_genus", int, path), tuple(entries))
    raise SchemaError(f"unknown kind {kind!r}", path)


def serialize(obj: Any) -> dict:
    return {"schema_version": SCHEMA_VERSION, "object": to_jsonable(obj)}


def deserialize(data: dict) -> Any:
    if not isinstance(data, dict):
        raise SchemaError("expected a top-level object")
    version = data.get("schema_version")
    if version != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema version {version!r}", "$.schema_version")
    return from_jsonable(_expect(data, "object", dict, "$"), "$.object")


def dumps(obj: Any) -> str:
    """Canonical byte-stable JSON text."""
    return json.dumps(serialize(obj), sort_keys=True, separators=(",", ":"))


def loads(text: str) -> Any:
    return deserialize(json.loads(text))
