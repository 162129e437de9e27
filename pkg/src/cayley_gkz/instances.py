"""Instance files and the two built-in instances.

An instance is JSON with a name, the nef-partition and optional settings::

    {"name": "...",
     "nabla_parts": [[[1, 0, 0], [0, 1, 0]], ...],      # nonzero points of each nabla_i
     "options": {"degmax": 2, "seed": 0}}

or, with an explicit fan,

    {"name": "...",
     "nef_partition": {"fan": {"dim": n, "rays": [...], "max_cones": [...]},
                       "parts": [[ray indices], ...]}}
"""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Optional

import jsonschema

from .fan import Fan
from .nef import NefPartitionData, from_nabla_parts, validate_nef_partition


class InstanceError(ValueError):
    pass


_INT_VECTOR = {"type": "array", "items": {"type": "integer"}, "minItems": 1}

SCHEMA = {
    "type": "object",
    "properties": {
        "name": {"type": "string"},
        "nabla_parts": {"type": "array", "minItems": 1,
                        "items": {"type": "array", "minItems": 1, "items": _INT_VECTOR}},
        "max_cones": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
        "nef_partition": {
            "type": "object",
            "required": ["fan", "parts"],
            "properties": {
                "fan": {"type": "object", "required": ["rays", "max_cones"],
                        "properties": {"dim": {"type": "integer", "minimum": 1},
                                       "rays": {"type": "array", "minItems": 1,
                                                "items": _INT_VECTOR},
                                       "max_cones": {"type": "array", "minItems": 1,
                                                     "items": {"type": "array",
                                                               "items": {"type": "integer",
                                                                         "minimum": 0}}}}},
                "parts": {"type": "array", "minItems": 1,
                          "items": {"type": "array", "items": {"type": "integer", "minimum": 0}}},
            },
        },
        "options": {"type": "object",
                    "properties": {"degmax": {"type": "integer", "minimum": 0},
                                   "seed": {"type": "integer"}}},
    },
    "oneOf": [{"required": ["nabla_parts"]}, {"required": ["nef_partition"]}],
}


@dataclass
class Instance:
    name: str
    npd: NefPartitionData
    options: Dict[str, int] = field(default_factory=dict)
    source: dict = field(default_factory=dict)


BUILTINS = {
    "p1-elliptic": {
        "name": "p1-elliptic",
        "nabla_parts": [[[1], [-1]]],
        "options": {"degmax": 4},
    },
    "p3-8planes": {
        "name": "p3-8planes",
        "nabla_parts": [
            [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            [[-1, 0, 0], [-1, 1, 0], [-1, 0, 1]],
            [[0, -1, 0], [1, -1, 0], [0, -1, 1]],
            [[0, 0, -1], [1, 0, -1], [0, 1, -1]],
        ],
        "options": {"degmax": 2},
    },
}


def _path(err: jsonschema.ValidationError) -> str:
    out = "$"
    for p in err.absolute_path:
        out += f"[{p}]" if isinstance(p, int) else f".{p}"
    return out


def validate_instance_json(data) -> None:
    """Raise :class:`InstanceError` naming the JSON path of the first problem."""
    validator = jsonschema.Draft202012Validator(SCHEMA)
    errors = sorted(validator.iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        raise InstanceError(f"schema error at {_path(e)}: {e.message}")
    if "nef_partition" in data:
        fan = data["nef_partition"]["fan"]
        nrays = len(fan["rays"])
        for k, c in enumerate(fan["max_cones"]):
            for t, idx in enumerate(c):
                if idx >= nrays:
                    raise InstanceError(f"schema error at $.nef_partition.fan.max_cones[{k}][{t}]: "
                                        f"ray index {idx} out of range")
        for k, p in enumerate(data["nef_partition"]["parts"]):
            for t, idx in enumerate(p):
                if idx >= nrays:
                    raise InstanceError(f"schema error at $.nef_partition.parts[{k}][{t}]: "
                                        f"ray index {idx} out of range")
        dims = {len(r) for r in fan["rays"]}
        if len(dims) != 1 or ("dim" in fan and fan["dim"] not in dims):
            raise InstanceError("schema error at $.nef_partition.fan.rays: inconsistent dimensions")
    else:
        dims = {len(u) for p in data["nabla_parts"] for u in p}
        if len(dims) != 1:
            raise InstanceError("schema error at $.nabla_parts: inconsistent dimensions")


def instance_from_json(data: dict) -> Instance:
    validate_instance_json(data)
    if "nef_partition" in data:
        nd = data["nef_partition"]
        npd = validate_nef_partition(Fan.from_json(nd["fan"]), nd["parts"])
    else:
        npd = from_nabla_parts(data["nabla_parts"], data.get("max_cones"))
    return Instance(data.get("name", "unnamed"), npd, dict(data.get("options", {})), data)


def load_instance(ref: str) -> Instance:
    """A built-in name or the path of an instance file."""
    if ref in BUILTINS:
        return instance_from_json(BUILTINS[ref])
    path = Path(ref)
    if not path.exists():
        raise InstanceError(f"{ref!r} is neither a built-in ({', '.join(BUILTINS)}) nor a file")
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise InstanceError(f"{ref}: invalid JSON ({exc})") from exc
    return instance_from_json(data)


def builtin_instance(name: str) -> Instance:
    try:
        return instance_from_json(BUILTINS[name])
    except KeyError:
        raise InstanceError(f"unknown built-in {name!r}") from None


def default_degmax(inst: Instance, override: Optional[int] = None) -> int:
    if override is not None:
        return override
    return inst.options.get("degmax", 2)
