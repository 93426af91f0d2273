"""System config files: JSON with a zipper form or a raw map list.

Zipper form::

    {"name": "gasket", "vertices": [[0, 0], ...], "signature": [1, 0, 1],
     "reflects": [false, false, false], "partition": "uniform"}

``maps`` may replace ``reflects`` (maps plus vertices and signature), or
stand alone for a plain IFS.  A map is ``{"matrix": [[a, b], [c, d]],
"translate": [tx, ty]}`` or ``{"ratio": r, "angle_deg": a, "reflect": f,
"translate": [tx, ty]}``; output always uses the matrix form.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .attractor import IFS
from .geom import Similarity2, from_params
from .zipper import Partition, Zipper, as_signature, build_planar_zipper, validate_zipper

TOP_KEYS = {"name", "vertices", "signature", "reflects", "maps", "partition", "style", "notes",
            "experimental"}
STYLE_KEYS = {"stroke_width", "padding", "colors"}


class ConfigError(ValueError):
    """Invalid config; ``where`` names the offending line or field."""

    def __init__(self, message: str, where: str | None = None):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


@dataclass
class Style:
    stroke_width: float = 0.004
    padding: float = 0.05
    colors: list[str] = field(default_factory=lambda: ["#1f3b73", "#b5482a", "#2a7a3b", "#6b3fa0"])


@dataclass
class SystemConfig:
    name: str
    zipper: Zipper | None
    ifs: IFS
    partition: Partition | None
    style: Style = field(default_factory=Style)
    notes: str = ""
    experimental: bool = False
    map_form: bool = False  # zipper given by explicit maps instead of reflect flags


def parse_map(obj, where: str) -> Similarity2:
    if not isinstance(obj, dict):
        raise ConfigError("map must be an object", where)
    keys = set(obj)
    try:
        if "matrix" in obj:
            if keys - {"matrix", "translate"}:
                raise ConfigError(f"unknown map fields {sorted(keys - {'matrix', 'translate'})}", where)
            return Similarity2(obj["matrix"], obj.get("translate", (0.0, 0.0)))
        allowed = {"ratio", "angle_deg", "reflect", "translate"}
        if keys - allowed:
            raise ConfigError(f"unknown map fields {sorted(keys - allowed)}", where)
        if "ratio" not in obj:
            raise ConfigError("map needs 'matrix' or 'ratio'", where)
        return from_params(float(obj["ratio"]), float(obj.get("angle_deg", 0.0)),
                           bool(obj.get("reflect", False)), obj.get("translate", (0.0, 0.0)))
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc), where) from None


def map_to_obj(f: Similarity2) -> dict:
    return {"matrix": f.linear.tolist(), "translate": f.translation.tolist()}


def _partition(obj, m: int) -> Partition:
    if obj is None or obj == "uniform":
        return Partition.uniform(m)
    if isinstance(obj, dict) and set(obj) == {"cuts"}:
        cuts = obj["cuts"]
    elif isinstance(obj, list):
        cuts = obj
    else:
        raise ConfigError("partition must be \"uniform\" or {\"cuts\": [...]}", "partition")
    try:
        p = Partition(tuple(cuts))
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc), "partition") from None
    if p.m != m:
        raise ConfigError(f"partition has {p.m} intervals but the zipper has {m} maps", "partition")
    return p


def config_from_dict(data: dict, zipper_tol: float = 1e-9) -> SystemConfig:
    if not isinstance(data, dict):
        raise ConfigError("config must be an object")
    unknown = set(data) - TOP_KEYS
    if unknown:
        raise ConfigError(f"unknown fields {sorted(unknown)}", sorted(unknown)[0])
    style_obj = data.get("style", {})
    if not isinstance(style_obj, dict):
        raise ConfigError("style must be an object", "style")
    if set(style_obj) - STYLE_KEYS:
        raise ConfigError(f"unknown style fields {sorted(set(style_obj) - STYLE_KEYS)}", "style")
    style = Style(**style_obj)
    name = str(data.get("name", "unnamed"))
    maps = None
    if "maps" in data:
        maps = [parse_map(obj, f"maps[{i}]") for i, obj in enumerate(data["maps"])]
    zipper = None
    partition = None
    if "vertices" in data or "signature" in data:
        if "vertices" not in data or "signature" not in data:
            raise ConfigError("zipper form needs both 'vertices' and 'signature'",
                              "vertices" if "vertices" not in data else "signature")
        try:
            sig = as_signature(data["signature"])
        except ValueError as exc:
            raise ConfigError(str(exc), "signature") from None
        try:
            if maps is None:
                zipper = build_planar_zipper(data["vertices"], sig, data.get("reflects"))
            else:
                if "reflects" in data:
                    raise ConfigError("give either 'reflects' or 'maps', not both", "reflects")
                zipper = Zipper(tuple(maps), np.array(data["vertices"], float), sig)
        except ConfigError:
            raise
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc), "vertices") from None
        rep = validate_zipper(zipper, zipper_tol)
        if not rep.passed:
            raise ConfigError("zipper conditions fail: " + "; ".join(rep.failures()), "maps")
        partition = _partition(data.get("partition"), zipper.m)
        ifs = zipper.ifs()
    else:
        if maps is None:
            raise ConfigError("config needs 'vertices'+'signature' or 'maps'")
        if "partition" in data or "reflects" in data:
            raise ConfigError("'partition'/'reflects' only apply to zipper configs",
                              "partition" if "partition" in data else "reflects")
        try:
            ifs = IFS(tuple(maps))
        except ValueError as exc:
            raise ConfigError(str(exc), "maps") from None
    return SystemConfig(name, zipper, ifs, partition, style, str(data.get("notes", "")),
                        bool(data.get("experimental", False)), maps is not None)


def load_config(path) -> SystemConfig:
    path = Path(path)
    text = path.read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(exc.msg, f"{path}:{exc.lineno}:{exc.colno}") from None
    return config_from_dict(data)


def config_to_dict(cfg: SystemConfig) -> dict:
    out: dict = {"name": cfg.name}
    if cfg.zipper is not None:
        z = cfg.zipper
        out["vertices"] = z.vertices.tolist()
        out["signature"] = list(z.signature)
        if cfg.map_form or z.reflects is None:
            out["maps"] = [map_to_obj(f) for f in z.maps]
        else:
            out["reflects"] = list(z.reflects)
        cuts = cfg.partition.cuts
        out["partition"] = "uniform" if cfg.partition == Partition.uniform(z.m) else {"cuts": list(cuts)}
    else:
        out["maps"] = [map_to_obj(f) for f in cfg.ifs.maps]
    if cfg.style != Style():
        out["style"] = asdict(cfg.style)
    if cfg.notes:
        out["notes"] = cfg.notes
    if cfg.experimental:
        out["experimental"] = True
    return out


def dumps_config(cfg: SystemConfig) -> str:
    return json.dumps(config_to_dict(cfg), sort_keys=True, indent=2) + "\n"


def entry_config(entry) -> SystemConfig:
    """A catalog entry as a config."""
    z = entry.zipper()
    return SystemConfig(entry.name, z, z.ifs(), entry.partition_obj(), Style(), entry.notes,
                        entry.experimental)
