"""Experiment configuration: YAML files, validation and the built-in presets.

A configuration file looks like::

    name: chain3
    model: {type: chain, length: 3}          # or {type: square, rows: 3, cols: 3}
    params: {h: 1.0, U: [1.0, 0.5]}          # U may be a list to sweep it
    initial: {kets: ["011", "101"]}          # or {fermion: "c2^"}
    time: {theta_max: 4.0, points: 201}      # grid over theta = U t
    trotter: {steps: [4, 10]}                # optional scan: [1, 2, ...]
    backend: pairwise                        # or bus
    observables: [probabilities, fidelity]   # and/or populations
    sites: [2, 4]                            # populations to report
    ket_order: site1-left                    # or site1-right
    outputs: {csv: out.csv, json: out.json}

Every error names the file, the line and the dotted field path.
"""

from __future__ import annotations

import copy
import math
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any

import yaml

from .compiler import BACKENDS
from .errors import ConfigError
from .fermion import FermionOperator
from .statevector import KET_ORDERS

__all__ = ["ExperimentConfig", "load_config", "parse_config", "PRESETS", "preset_config", "OBSERVABLES"]

OBSERVABLES = ("probabilities", "populations", "fidelity")
MODELS = ("chain", "square")


@dataclass(frozen=True)
class ExperimentConfig:
    """Fully resolved experiment description.

    ``theta`` is the dimensionless time ``U t``; for each swept ``U`` the
    simulated times are ``theta / U`` (or ``theta`` itself when ``U = 0``).
    """

    name: str = "custom"
    model: str = "chain"
    rows: int = 1
    cols: int = 3
    h: float = 1.0
    U: tuple[float, ...] = (1.0,)
    h_nnn: float = 0.0
    U_nnn: float = 0.0
    kets: tuple[str, ...] = ()
    fermion: str = ""
    theta_max: float = 4.0
    points: int = 201
    steps: tuple[int, ...] = (4,)
    step_scan: tuple[int, ...] = ()
    backend: str = "pairwise"
    observables: tuple[str, ...] = ("probabilities", "fidelity")
    sites: tuple[int, ...] = ()
    ket_order: str = "site1-left"
    csv: str | None = None
    json: str | None = None

    @property
    def n_sites(self) -> int:
        return self.rows * self.cols

    def to_dict(self) -> dict:
        return asdict(self)


# -- YAML with line bookkeeping ------------------------------------------------

def _plain(node: yaml.Node, path: str, lines: dict[str, int]) -> Any:
    lines[path] = node.start_mark.line + 1
    if isinstance(node, yaml.MappingNode):
        out = {}
        for k, v in node.value:
            key = str(k.value)
            sub = f"{path}.{key}" if path else key
            if key in out:
                raise ConfigError(f"line {k.start_mark.line + 1}: field '{sub}': duplicate key")
            out[key] = _plain(v, sub, lines)
            lines[sub] = k.start_mark.line + 1
        return out
    if isinstance(node, yaml.SequenceNode):
        return [_plain(v, f"{path}[{i}]", lines) for i, v in enumerate(node.value)]
    return yaml.safe_load(yaml.serialize(node))


class _Fields:
    """Typed accessors that raise :class:`ConfigError` with line numbers."""

    def __init__(self, data: dict, lines: dict[str, int], source: str):
        self.data = data
        self.lines = lines
        self.source = source

    def error(self, path: str, message: str) -> ConfigError:
        line = self.lines.get(path)
        where = f"{self.source}:{line}" if line else self.source
        return ConfigError(f"{where}: field '{path}': {message}")

    def get(self, path: str, default: Any = None) -> Any:
        cur: Any = self.data
        for part in path.split("."):
            if not isinstance(cur, dict) or part not in cur:
                return default
            cur = cur[part]
        return cur

    def number(self, path: str, default: float | None = None) -> float:
        v = self.get(path, default)
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
            raise self.error(path, f"expected a finite number, got {v!r}")
        return float(v)

    def integer(self, path: str, default: int | None = None, minimum: int = 1) -> int:
        v = self.get(path, default)
        if isinstance(v, bool) or not isinstance(v, int) or v < minimum:
            raise self.error(path, f"expected an integer >= {minimum}, got {v!r}")
        return v

    def choice(self, path: str, options: tuple[str, ...], default: str) -> str:
        v = self.get(path, default)
        if v not in options:
            raise self.error(path, f"expected one of {list(options)}, got {v!r}")
        return v

    def numbers(self, path: str, default: Any) -> tuple[float, ...]:
        v = self.get(path, default)
        items = v if isinstance(v, list) else [v]
        if not items:
            raise self.error(path, "expected at least one value")
        for i, x in enumerate(items):
            if isinstance(x, bool) or not isinstance(x, (int, float)) or not math.isfinite(x):
                raise self.error(f"{path}[{i}]" if isinstance(v, list) else path,
                                 f"expected a finite number, got {x!r}")
        return tuple(float(x) for x in items)

    def integers(self, path: str, default: Any, minimum: int = 1) -> tuple[int, ...]:
        v = self.get(path, default)
        items = v if isinstance(v, list) else [v]
        for i, x in enumerate(items):
            if isinstance(x, bool) or not isinstance(x, int) or x < minimum:
                raise self.error(f"{path}[{i}]" if isinstance(v, list) else path,
                                 f"expected an integer >= {minimum}, got {x!r}")
        return tuple(items)


_SCHEMA = {
    "name": None, "model": {"type", "length", "rows", "cols"},
    "params": {"h", "U", "h_nnn", "U_nnn"}, "initial": {"kets", "fermion"},
    "time": {"theta_max", "points"}, "trotter": {"steps", "scan"}, "backend": None,
    "observables": None, "sites": None, "ket_order": None, "outputs": {"csv", "json"},
    "preset": None,
}


def _check_keys(f: _Fields) -> None:
    for key, value in f.data.items():
        if key not in _SCHEMA:
            raise f.error(key, f"unknown field (allowed: {sorted(_SCHEMA)})")
        allowed = _SCHEMA[key]
        if allowed is not None:
            if not isinstance(value, dict):
                raise f.error(key, "expected a mapping")
            for sub in value:
                if sub not in allowed:
                    raise f.error(f"{key}.{sub}", f"unknown field (allowed: {sorted(allowed)})")


def parse_config(data: Any, lines: dict[str, int] | None = None, source: str = "<config>") -> ExperimentConfig:
    """Validate plain data (as loaded from YAML) into an :class:`ExperimentConfig`."""
    lines = lines or {}
    if not isinstance(data, dict):
        raise ConfigError(f"{source}: top level must be a mapping")
    f = _Fields(data, lines, source)
    if "preset" in data:
        f.choice("preset", tuple(PRESETS), "")
        merged = copy.deepcopy(PRESETS[data["preset"]])
        for key, value in data.items():
            if key == "preset":
                continue
            if isinstance(value, dict) and isinstance(merged.get(key), dict):
                merged[key].update(value)
            else:
                merged[key] = value
        return parse_config(merged, lines, source)
    _check_keys(f)

    model = f.choice("model.type", MODELS, "chain")
    if model == "chain":
        if "rows" in (f.get("model") or {}) or "cols" in (f.get("model") or {}):
            raise f.error("model", "a chain takes 'length', not rows/cols")
        rows, cols = 1, f.integer("model.length", 3)
    else:
        if "length" in (f.get("model") or {}):
            raise f.error("model.length", "a square lattice takes rows and cols")
        rows, cols = f.integer("model.rows", 3), f.integer("model.cols", 3)

    kets = f.get("initial.kets")
    fermion = f.get("initial.fermion")
    if (kets is None) == (fermion is None):
        raise f.error("initial", "give exactly one of 'kets' or 'fermion'")
    n = rows * cols
    if kets is not None:
        if isinstance(kets, str):
            kets = [k.strip() for k in kets.split("+")]
        if not isinstance(kets, list) or not kets:
            raise f.error("initial.kets", "expected a non-empty list of occupation kets")
        for i, k in enumerate(kets):
            k = str(k).strip("|>")
            if len(k) != n or set(k) - {"0", "1"}:
                raise f.error(f"initial.kets[{i}]", f"expected a {n}-character 0/1 ket, got {k!r}")
        kets = tuple(str(k).strip("|>") for k in kets)
    else:
        if not isinstance(fermion, str) or not fermion.strip():
            raise f.error("initial.fermion", "expected a fermionic expression such as 'c2^'")
        try:
            op = FermionOperator.from_text(fermion)
        except ValueError as exc:
            raise f.error("initial.fermion", str(exc)) from exc
        if op.max_site > n:
            raise f.error("initial.fermion", f"site {op.max_site} outside 1..{n}")
        kets = ()

    observables = f.get("observables", ["probabilities", "fidelity"])
    if not isinstance(observables, list) or not observables:
        raise f.error("observables", f"expected a list drawn from {list(OBSERVABLES)}")
    for i, o in enumerate(observables):
        if o not in OBSERVABLES:
            raise f.error(f"observables[{i}]", f"expected one of {list(OBSERVABLES)}, got {o!r}")
    sites = f.integers("sites", list(range(1, n + 1)))
    for i, s in enumerate(sites):
        if s > n:
            raise f.error(f"sites[{i}]", f"site {s} outside 1..{n}")

    outputs = f.get("outputs") or {}
    for key in ("csv", "json"):
        if key in outputs and not isinstance(outputs[key], str):
            raise f.error(f"outputs.{key}", "expected a path string")

    name = f.get("name", "custom")
    if not isinstance(name, str) or not name:
        raise f.error("name", "expected a non-empty string")

    return ExperimentConfig(
        name=name,
        model=model,
        rows=rows,
        cols=cols,
        h=f.number("params.h", 1.0),
        U=f.numbers("params.U", 1.0),
        h_nnn=f.number("params.h_nnn", 0.0),
        U_nnn=f.number("params.U_nnn", 0.0),
        kets=kets,
        fermion=fermion or "",
        theta_max=f.number("time.theta_max", 4.0),
        points=f.integer("time.points", 201, minimum=2),
        steps=f.integers("trotter.steps", [4]),
        step_scan=f.integers("trotter.scan", []),
        backend=f.choice("backend", BACKENDS, "pairwise"),
        observables=tuple(observables),
        sites=sites,
        ket_order=f.choice("ket_order", KET_ORDERS, "site1-left"),
        csv=outputs.get("csv"),
        json=outputs.get("json"),
    )


def load_config(path: str | Path) -> ExperimentConfig:
    """Read and validate a YAML configuration file.

    Raises:
        ConfigError: On YAML syntax errors or invalid fields, with the file
            name, line number and field path in the message.
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read config ({exc.strerror})") from exc
    try:
        node = yaml.compose(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        line = f":{mark.line + 1}" if mark else ""
        problem = getattr(exc, "problem", None) or str(exc)
        raise ConfigError(f"{path}{line}: YAML syntax error: {problem}") from exc
    if node is None:
        raise ConfigError(f"{path}: empty config")
    lines: dict[str, int] = {}
    data = _plain(node, "", lines)
    return parse_config(data, lines, str(path))


PRESETS: dict[str, dict] = {
    "fig1": {
        "name": "fig1",
        "model": {"type": "chain", "length": 2},
        "params": {"h": 1.0, "U": [1.0, 0.5]},
        "initial": {"kets": ["00", "10"]},
        "time": {"theta_max": 4.0, "points": 201},
        "trotter": {"steps": [4, 10]},
        "backend": "pairwise",
        "observables": ["probabilities", "fidelity"],
    },
    "fig2": {
        "name": "fig2",
        "model": {"type": "chain", "length": 3},
        "params": {"h": 1.0, "U": [1.0, 0.5]},
        "initial": {"kets": ["011", "101"]},
        "time": {"theta_max": 4.0, "points": 201},
        "trotter": {"steps": [4, 10]},
        "backend": "pairwise",
        "observables": ["probabilities", "fidelity"],
    },
    "fig3": {
        "name": "fig3",
        "model": {"type": "chain", "length": 3},
        "params": {"h": 1.0, "U": [1.0, 0.5]},
        "initial": {"kets": ["011", "101"]},
        "time": {"theta_max": 4.0, "points": 201},
        "trotter": {"steps": [4]},
        "backend": "pairwise",
        "observables": ["fidelity"],
    },
    "fig5": {
        "name": "fig5",
        "model": {"type": "square", "rows": 3, "cols": 3},
        "params": {"h": 1.0, "U": 2.0, "h_nnn": 0.2, "U_nnn": 0.4},
        "initial": {"fermion": "c2^"},
        "time": {"theta_max": 4.0, "points": 201},
        "trotter": {"steps": [10], "scan": list(range(1, 11))},
        "backend": "bus",
        "observables": ["populations", "fidelity"],
        "sites": [2, 4],
    },
}


def preset_config(name: str) -> ExperimentConfig:
    """The resolved configuration of a built-in preset."""
    if name not in PRESETS:
        raise ConfigError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
    return parse_config(copy.deepcopy(PRESETS[name]), source=f"<preset {name}>")
