"""Digital-versus-exact time-evolution experiments and their file outputs.

Each experiment sweeps a grid of ``theta = U t`` values, builds the compiled
digital circuit for every time (the gate angles depend on ``t``), runs it on
the statevector engine and compares against exact propagation.  Results are
long-format rows ``t, theta, label, value, source`` with ``source`` in
``{digital, exact}``; a JSON sidecar records the resolved configuration and a
summary.  Outputs are byte-identical across runs.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .compiler import compile_chain_step, compile_plan
from .config import ExperimentConfig, preset_config
from .fermion import FermionOperator
from .gates import Circuit
from .lattice import HubbardParams, build_chain, build_square
from .pauli import PauliSum
from .statevector import ExactPropagator, StateVector, fidelity, index_to_ket, observables, run_circuit
from .trotter import trotterize

__all__ = [
    "ExperimentResult",
    "run_experiment",
    "run_preset",
    "digital_step",
    "model_hamiltonian",
    "initial_state",
    "theta_grid",
    "COLUMNS",
]

COLUMNS = ("t", "theta", "label", "value", "source")


@dataclass
class ExperimentResult:
    """Rows in emission order plus a JSON-serializable summary."""

    config: ExperimentConfig
    rows: list[tuple[float, float, str, float, str]] = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    def add(self, t: float, theta: float, label: str, value: float, source: str) -> None:
        self.rows.append((float(t), float(theta), label, float(value), source))

    def select(self, label: str, source: str | None = None) -> np.ndarray:
        """``(theta, value)`` pairs of one series as an ``(n, 2)`` array."""
        out = [(r[1], r[3]) for r in self.rows if r[2] == label and (source is None or r[4] == source)]
        return np.array(out, dtype=float).reshape(-1, 2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(COLUMNS)
        for t, theta, label, value, source in self.rows:
            w.writerow((_fmt(t), _fmt(theta), label, _fmt(value), source))
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {"config": self.config.to_dict(), "columns": list(COLUMNS), "summary": self.summary}
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    def write(self, csv_path: str | Path | None = None, json_path: str | Path | None = None) -> list[Path]:
        """Write the CSV (and JSON sidecar); defaults come from the config."""
        csv_path = csv_path or self.config.csv or f"{self.config.name}.csv"
        json_path = json_path or self.config.json or Path(csv_path).with_suffix(".json")
        written = []
        for path, text in ((Path(csv_path), self.to_csv()), (Path(json_path), self.to_json())):
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text)
            written.append(path)
        return written


def _fmt(x: float) -> str:
    return format(x, ".15g")


def _clean(x: float) -> float:
    """Round for the JSON summary so tiny platform noise never leaks into files."""
    return float(format(x, ".12g"))


def theta_grid(theta_max: float, points: int) -> np.ndarray:
    return np.linspace(0.0, theta_max, points)


def model_hamiltonian(cfg: ExperimentConfig, U: float) -> PauliSum:
    if cfg.model == "chain":
        return build_chain(cfg.cols, cfg.h, U).to_pauli()
    params = HubbardParams(cfg.h, U, cfg.h_nnn, cfg.U_nnn)
    return build_square(cfg.rows, cfg.cols, params).to_pauli()


def initial_state(cfg: ExperimentConfig) -> StateVector:
    if cfg.kets:
        return StateVector.from_kets(list(cfg.kets), cfg.ket_order)
    return StateVector.from_fermion(FermionOperator.from_text(cfg.fermion), cfg.n_sites)


def digital_step(cfg: ExperimentConfig, H: PauliSum, U: float, t: float, steps: int) -> Circuit:
    """One compiled Trotter step for total time ``t`` split into ``steps``.

    Two- and three-site chains on the pairwise backend use the hand-ordered
    chain step; everything else compiles the default-ordered plan.
    """
    if cfg.model == "chain" and cfg.backend == "pairwise" and cfg.cols in (2, 3):
        return compile_chain_step(cfg.h, U, t, steps, three_site=cfg.cols == 3)
    return compile_plan(trotterize(H, t, steps), cfg.backend)


def _time(theta: float, U: float) -> float:
    return theta / U if U != 0 else theta


def _u_tag(U: float) -> str:
    return f"U={U:g}"


def run_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Run every (U, steps, theta) combination selected by ``cfg``."""
    result = ExperimentResult(cfg)
    psi0 = initial_state(cfg)
    grid = theta_grid(cfg.theta_max, cfg.points)
    n = cfg.n_sites
    want = set(cfg.observables)
    summary: dict = {}
    for U in cfg.U:
        H = model_hamiltonian(cfg, U)
        prop = ExactPropagator(H)
        exact = [prop.evolve(psi0, _time(th, U)) for th in grid]
        for th, s in zip(grid, exact):
            _emit_state(result, cfg, s, _time(th, U), th, _u_tag(U), "exact", want, n)
        for steps in cfg.steps:
            tag = f"{_u_tag(U)}|n={steps}"
            fids = []
            deviations = []
            for th, ex in zip(grid, exact):
                t = _time(th, U)
                dig = run_circuit(digital_step(cfg, H, U, t, steps), psi0, steps)
                _emit_state(result, cfg, dig, t, th, tag, "digital", want, n)
                if "fidelity" in want:
                    f = fidelity(ex, dig)
                    fids.append(f)
                    result.add(t, th, f"F|{tag}", f, "digital")
                if "populations" in want:
                    dev = np.abs(observables(dig)[1] - observables(ex)[1])
                    deviations.append(max(dev[s - 1] for s in cfg.sites))
            entry: dict = {}
            if fids:
                arr = np.array(fids)
                entry.update(
                    min_fidelity=_clean(arr.min()),
                    final_fidelity=_clean(arr[-1]),
                    fraction_above_0_9=_clean(np.mean(arr > 0.9)),
                )
            if deviations:
                entry["max_population_deviation"] = _clean(max(deviations))
            summary[tag] = entry
        if cfg.step_scan:
            t_end = _time(grid[-1], U)
            scan = {}
            for steps in cfg.step_scan:
                dig = run_circuit(digital_step(cfg, H, U, t_end, steps), psi0, steps)
                f = fidelity(exact[-1], dig)
                scan[str(steps)] = _clean(f)
                result.add(t_end, grid[-1], f"F_end|{_u_tag(U)}|l={steps}", f, "digital")
            summary[f"{_u_tag(U)}|scan"] = scan
    result.summary = summary
    return result


def _emit_state(result: ExperimentResult, cfg: ExperimentConfig, s: StateVector, t: float, theta: float,
                tag: str, source: str, want: set[str], n: int) -> None:
    if "probabilities" in want:
        probs = s.probabilities()
        for idx in sorted(range(1 << n), key=lambda i: index_to_ket(i, n, cfg.ket_order)):
            ket = index_to_ket(idx, n, cfg.ket_order)
            result.add(t, theta, f"P{ket}|{tag}", probs[idx], source)
    if "populations" in want:
        pops = observables(s)[1]
        for site in cfg.sites:
            result.add(t, theta, f"n{site}|{tag}", pops[site - 1], source)


def run_preset(name: str, out_dir: str | Path | None = None) -> ExperimentResult:
    """Run a built-in preset (``fig1``, ``fig2``, ``fig3``, ``fig5``).

    With ``out_dir`` the CSV and JSON sidecar are written there as
    ``<name>.csv`` and ``<name>.json``.
    """
    result = run_experiment(preset_config(name))
    if out_dir is not None:
        out = Path(out_dir)
        result.write(out / f"{name}.csv", out / f"{name}.json")
    return result
