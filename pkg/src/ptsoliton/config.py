"""Run configuration: a single YAML file plus dotted-path overrides.

Every knob that affects a run lives here and lands in the output manifest,
so identical config + seed reproduces identical tabular artifacts. Unknown
keys are rejected with the offending key and line number (typo guard).
"""
from dataclasses import dataclass, field as dc_field

import yaml

from .errors import ConfigError
from .grid import Grid
from .model import solve_constraints
from .spectra import Tolerances

FORMAT_VERSION = 1

_MODEL_KEYS = ("a", "b", "v1", "g1", "g2", "kappa", "phi0")

_SCHEMA = {
    "family": None,
    "model": {k: None for k in _MODEL_KEYS},
    "grid": {"n": None, "half_width": None},
    "tolerances": {"band_tol": None, "tail_ratio": None, "boundary_mass": None,
                   "instability_factor": None, "zero_factor": None,
                   "pair_factor": None},
    "sweep": {"parameter": None, "start": None, "stop": None, "steps": None,
              "collision_tol": None, "refine": None, "workers": None},
    "propagation": {"z_end": None, "dz": None, "sample_every": None,
                    "noise_amplitude": None},
    "output": {"directory": None, "plots": None},
    "seed": None,
}


def _defaults() -> dict:
    return {
        "family": "class1",
        "model": {k: None for k in _MODEL_KEYS},
        "grid": {"n": 512, "half_width": 16.0},
        "tolerances": Tolerances().as_dict(),
        "sweep": {"parameter": "a", "start": 0.02, "stop": 0.10, "steps": 17,
                  "collision_tol": 5e-3, "refine": False, "workers": 1},
        "propagation": {"z_end": 2.0, "dz": 2e-4, "sample_every": 10,
                        "noise_amplitude": 1e-4},
        "output": {"directory": None, "plots": True},
        "seed": 20260813,
    }


@dataclass
class RunConfig:
    data: dict = dc_field(default_factory=_defaults)

    # -- accessors ----------------------------------------------------------
    @property
    def family(self) -> str:
        return self.data["family"]

    def knowns(self) -> dict:
        return {k: float(v) for k, v in self.data["model"].items() if v is not None}

    def resolve(self):
        """solve_constraints on the configured knowns."""
        return solve_constraints(self.family, **self.knowns())

    def grid(self) -> Grid:
        g = self.data["grid"]
        return Grid(n=int(g["n"]), half_width=float(g["half_width"]))

    def tolerances(self) -> Tolerances:
        return Tolerances(**{k: float(v) for k, v in self.data["tolerances"].items()})

    def to_dict(self) -> dict:
        out = {k: (dict(v) if isinstance(v, dict) else v) for k, v in self.data.items()}
        out["format_version"] = FORMAT_VERSION
        return out

    # -- construction -------------------------------------------------------
    @classmethod
    def from_dict(cls, raw: dict, lines: dict | None = None) -> "RunConfig":
        lines = lines or {}
        data = _defaults()
        raw = dict(raw or {})
        raw.pop("format_version", None)
        for key, value in raw.items():
            if key not in _SCHEMA:
                loc = f" at line {lines[key]}" if key in lines else ""
                raise ConfigError(f"unknown key '{key}'{loc}")
            if isinstance(_SCHEMA[key], dict):
                if not isinstance(value, dict):
                    raise ConfigError(f"'{key}' must be a mapping")
                for sub, sval in value.items():
                    if sub not in _SCHEMA[key]:
                        path = f"{key}.{sub}"
                        loc = f" at line {lines[path]}" if path in lines else ""
                        raise ConfigError(f"unknown key '{path}'{loc}")
                    data[key][sub] = sval
            else:
                data[key] = value
        return cls(data=data)

    @classmethod
    def load(cls, path) -> "RunConfig":
        with open(path) as fh:
            text = fh.read()
        try:
            raw = yaml.safe_load(text)
        except yaml.YAMLError as exc:
            raise ConfigError(f"cannot parse {path}: {exc}") from exc
        return cls.from_dict(raw, _key_lines(text))

    def save(self, path):
        with open(path, "w") as fh:
            yaml.safe_dump(self.to_dict(), fh, sort_keys=True)

    def apply_overrides(self, overrides):
        """Apply `--set section.key=value` strings; values parse as YAML."""
        for item in overrides or []:
            if "=" not in item:
                raise ConfigError(f"override '{item}' is not of the form key=value")
            path, _, raw_value = item.partition("=")
            try:
                value = yaml.safe_load(raw_value)
            except yaml.YAMLError as exc:
                raise ConfigError(f"cannot parse override value '{raw_value}'") from exc
            parts = path.strip().split(".")
            node = _SCHEMA
            for part in parts[:-1]:
                if not isinstance(node, dict) or part not in node:
                    raise ConfigError(f"unknown key '{path.strip()}'")
                node = node[part]
            if not isinstance(node, dict) or parts[-1] not in node:
                raise ConfigError(f"unknown key '{path.strip()}'")
            target = self.data
            for part in parts[:-1]:
                target = target[part]
            target[parts[-1]] = value
        return self


def _key_lines(text: str) -> dict:
    """Map of 'key' and 'section.key' to 1-based line numbers."""
    try:
        root = yaml.compose(text)
    except yaml.YAMLError:
        return {}
    lines = {}
    if root is None or not hasattr(root, "value"):
        return lines
    if not isinstance(root, yaml.MappingNode):
        return lines
    for key_node, val_node in root.value:
        key = str(key_node.value)
        lines[key] = key_node.start_mark.line + 1
        if isinstance(val_node, yaml.MappingNode):
            for sub_node, _ in val_node.value:
                lines[f"{key}.{sub_node.value}"] = sub_node.start_mark.line + 1
    return lines
