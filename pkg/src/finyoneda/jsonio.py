"""JSON readers/writers for categories, functors and natural transformations."""
from __future__ import annotations

import json
from pathlib import Path

from jsonschema import Draft7Validator

from .fincat import IDENTITY_PREFIX, CategoryError, FiniteCategory, validate_category
from .functors import SetValuedFunctor, validate_functor
from .nat import NaturalTransformation

__all__ = [
    "SchemaError",
    "CATEGORY_SCHEMA",
    "FUNCTOR_SCHEMA",
    "NAT_SCHEMA",
    "canonical_dumps",
    "category_from_json",
    "category_to_json",
    "parse_category_file",
    "functor_from_json",
    "functor_to_json",
    "parse_functor_file",
    "nat_from_json",
]

_ID = {"type": "string", "minLength": 1}

CATEGORY_SCHEMA = {
    "type": "object",
    "required": ["objects", "morphisms"],
    "additionalProperties": False,
    "properties": {
        "objects": {"type": "array", "items": _ID, "uniqueItems": True},
        "morphisms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "dom", "cod"],
                "additionalProperties": False,
                "properties": {"id": _ID, "dom": _ID, "cod": _ID},
            },
        },
        "composition": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["g", "f", "result"],
                "additionalProperties": False,
                "properties": {"g": _ID, "f": _ID, "result": _ID},
            },
        },
        # optional names for identity morphisms (defaults to id_<object>)
        "identities": {"type": "object", "additionalProperties": _ID},
    },
}

FUNCTOR_SCHEMA = {
    "type": "object",
    "required": ["variance", "on_objects", "on_morphisms"],
    "additionalProperties": False,
    "properties": {
        "variance": {"enum": ["covariant", "contravariant"]},
        "on_objects": {
            "type": "object",
            "additionalProperties": {"type": "array", "items": _ID, "uniqueItems": True},
        },
        "on_morphisms": {
            "type": "object",
            "additionalProperties": {"type": "object", "additionalProperties": _ID},
        },
    },
}

NAT_SCHEMA = {
    "type": "object",
    "required": ["components"],
    "properties": {
        "components": {
            "type": "object",
            "additionalProperties": {"type": "object", "additionalProperties": _ID},
        }
    },
}


class SchemaError(ValueError):
    def __init__(self, message: str, path: str = "$"):
        super().__init__(f"{path}: {message}")
        self.path = path


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def _validate(data, schema):
    errors = sorted(Draft7Validator(schema).iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        path = "$" + "".join(
            f"[{p}]" if isinstance(p, int) else f".{p}" for p in err.absolute_path
        )
        raise SchemaError(err.message, path)


def category_from_json(data: dict) -> FiniteCategory:
    _validate(data, CATEGORY_SCHEMA)
    for i, m in enumerate(data["morphisms"]):
        if m["id"].startswith(IDENTITY_PREFIX):
            raise SchemaError(
                f"morphism id {m['id']!r} uses the reserved prefix {IDENTITY_PREFIX!r}",
                f"$.morphisms[{i}].id",
            )
    cat = FiniteCategory.from_tables(
        data["objects"],
        [(m["id"], m["dom"], m["cod"]) for m in data["morphisms"]],
        [(c["g"], c["f"], c["result"]) for c in data.get("composition", [])],
        identities=data.get("identities"),
    )
    return cat


def category_to_json(cat: FiniteCategory) -> dict:
    out = {
        "objects": list(cat.objects),
        "morphisms": [
            {"id": m, "dom": d, "cod": c}
            for m, (d, c) in cat.morphisms.items()
            if not cat.is_identity(m)
        ],
        "composition": [
            {"g": g, "f": f, "result": h}
            for (g, f), h in cat.composition.items()
            if not (cat.is_identity(g) or cat.is_identity(f))
        ],
    }
    custom = {x: i for x, i in cat.identities.items() if i != IDENTITY_PREFIX + x}
    if custom:
        out["identities"] = custom
    return out


def parse_category_file(path) -> FiniteCategory:
    """Load and validate a category file.

    Raises :class:`SchemaError` for malformed input and
    :class:`~finyoneda.fincat.CategoryError` (with a witness) for law violations.
    """
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    cat = category_from_json(data)
    report = validate_category(cat)
    if not report.ok:
        first = (report.structural + report.laws)[0]
        raise CategoryError(first.message, first.witness)
    return cat


def functor_from_json(data: dict, cat: FiniteCategory) -> SetValuedFunctor:
    _validate(data, FUNCTOR_SCHEMA)
    return SetValuedFunctor(cat, data["variance"], data["on_objects"], data["on_morphisms"])


def functor_to_json(F: SetValuedFunctor) -> dict:
    return {
        "variance": F.variance,
        "on_objects": {x: list(s) for x, s in F.on_objects.items()},
        "on_morphisms": {
            m: t for m, t in F.on_morphisms.items() if not F.base.is_identity(m)
        },
    }


def parse_functor_file(path, cat: FiniteCategory) -> SetValuedFunctor:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    F = functor_from_json(data, cat)
    report = validate_functor(F)
    if not report.ok:
        first = (report.structural + report.laws)[0]
        raise SchemaError(first.message, "$.on_morphisms")
    return F


def nat_from_json(data: dict, source: SetValuedFunctor, target: SetValuedFunctor) -> NaturalTransformation:
    _validate(data, NAT_SCHEMA)
    return NaturalTransformation(source, target, data["components"])
