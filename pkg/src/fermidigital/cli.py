"""Command-line front end: ``fermidigital <command> ...``.

Commands:

* ``preset NAME``      run a built-in experiment (fig1, fig2, fig3, fig5)
* ``simulate CONFIG``  run a YAML-configured experiment, write CSV + JSON
* ``compile``          print the native circuit of one Trotter step or one term
* ``count``            term counts and per-term gate costs of a square lattice
* ``schedule``         layer a compiled step (or a circuit file) onto resonators

Exit status: 0 on success, 2 on configuration or usage errors, 3 when a gate
cannot be placed on any resonator.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bus import build_architecture, count_resources, schedule
from .compiler import BACKENDS, compile_plan, compile_term
from .config import PRESETS, ExperimentConfig, load_config
from .errors import (
    CompilationError,
    ConfigError,
    ParameterError,
    SiteIndexError,
    SupportError,
    UnschedulableError,
    ValidationError,
)
from .experiments import digital_step, model_hamiltonian, run_experiment, run_preset
from .gates import Circuit
from .lattice import GROUP_ORDER, HubbardParams, build_chain, build_square
from .pauli import PauliString
from .trotter import trotterize

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_UNSCHEDULABLE = 3


def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _step_time(cfg: ExperimentConfig, U: float, time: float | None) -> float:
    if time is not None:
        return time
    return cfg.theta_max / U if U else cfg.theta_max


def cmd_preset(args: argparse.Namespace) -> int:
    result = run_preset(args.name, args.out_dir)
    print(json.dumps(result.summary, indent=2, sort_keys=True))
    print(f"wrote {Path(args.out_dir) / (args.name + '.csv')} and .json")
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    result = run_experiment(cfg)
    paths = result.write(args.csv, args.json)
    print(json.dumps(result.summary, indent=2, sort_keys=True))
    print("wrote " + " and ".join(str(p) for p in paths))
    return EXIT_OK


def _config_step(cfg: ExperimentConfig, time: float | None, steps: int | None,
                 backend: str | None, plan_only: bool) -> str:
    if backend and backend != cfg.backend:
        cfg = ExperimentConfig(**{**cfg.to_dict(), "backend": backend})
    U = cfg.U[0]
    H = model_hamiltonian(cfg, U)
    n = steps or cfg.steps[0]
    t = _step_time(cfg, U, time)
    if plan_only:
        return trotterize(H, t, n).to_text()
    return digital_step(cfg, H, U, t, n).to_text()


def cmd_compile(args: argparse.Namespace) -> int:
    if args.term:
        s = PauliString.from_text(args.term)
        circ = compile_term(s, args.angle, args.backend or "bus", s.n_qubits)
        text = circ.to_text()
    elif args.config:
        text = _config_step(load_config(args.config), args.time, args.steps, args.backend, args.plan)
    else:
        raise ConfigError("compile needs a CONFIG file or --term")
    _emit(text, args.output)
    return EXIT_OK


def cmd_count(args: argparse.Namespace) -> int:
    if args.sites is not None:
        report = count_resources(args.sites)
    else:
        report = count_resources(args.rows, args.cols if args.cols is not None else args.rows)
    _emit(report.to_text(), args.output)
    return EXIT_OK


def cmd_schedule(args: argparse.Namespace) -> int:
    arch = build_architecture(args.rows, args.cols)
    if args.circuit:
        circ = Circuit.from_text(Path(args.circuit).read_text(), arch.n_qubits)
    else:
        groups = tuple(args.group) if args.group else GROUP_ORDER
        if args.rows == 1:
            fh = build_chain(args.cols, args.h, args.U)
        else:
            fh = build_square(args.rows, args.cols, HubbardParams(args.h, args.U, args.h_nnn, args.U_nnn))
        H = fh.to_pauli(group_order=groups)
        circ = compile_plan(trotterize(H, args.time, args.steps), args.backend)
    sched = schedule(circ, arch, forbid_local_parallel=args.forbid_local_parallel)
    _emit(sched.to_text(), args.output)
    print(f"depth: {sched.depth}  gates: {len(circ)}", file=sys.stderr if args.output is None else sys.stdout)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="fermidigital",
        description="Digital simulation of Fermi-Hubbard lattices: compile, simulate, count, schedule.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("preset", help="run a built-in experiment")
    sp.add_argument("name", choices=sorted(PRESETS))
    sp.add_argument("--out-dir", default="results", help="output directory (default: results)")
    sp.set_defaults(func=cmd_preset)

    sp = sub.add_parser("simulate", help="run a YAML-configured experiment")
    sp.add_argument("config")
    sp.add_argument("--csv", help="CSV path (overrides outputs.csv)")
    sp.add_argument("--json", help="JSON sidecar path (overrides outputs.json)")
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("compile", help="print native gates of one Trotter step or one term")
    sp.add_argument("config", nargs="?")
    sp.add_argument("--term", help="single Pauli term, qubit N leftmost, e.g. ZZ or XZZX")
    sp.add_argument("--angle", type=float, default=0.1, help="angle a of exp(-i a P) for --term")
    sp.add_argument("--time", type=float, help="total time t (default theta_max / U)")
    sp.add_argument("--steps", type=int, help="Trotter steps (default: first of trotter.steps)")
    sp.add_argument("--backend", choices=BACKENDS)
    sp.add_argument("--plan", action="store_true", help="print the Trotter plan instead of gates")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_compile)

    sp = sub.add_parser("count", help="term counts and gate costs")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--sites", type=int, help="number of sites of a square lattice")
    g.add_argument("--rows", type=int)
    sp.add_argument("--cols", type=int)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("schedule", help="layer a compiled Trotter step onto the resonators")
    sp.add_argument("--rows", type=int, required=True)
    sp.add_argument("--cols", type=int, required=True)
    sp.add_argument("--circuit", help="schedule this circuit text file instead of a model step")
    sp.add_argument("--group", action="append", choices=GROUP_ORDER,
                    help="restrict the model to these term groups (repeatable)")
    sp.add_argument("--h", type=float, default=1.0)
    sp.add_argument("--U", type=float, default=2.0)
    sp.add_argument("--h-nnn", type=float, default=0.2)
    sp.add_argument("--U-nnn", type=float, default=0.4)
    sp.add_argument("--time", type=float, default=0.2)
    sp.add_argument("--steps", type=int, default=1)
    sp.add_argument("--backend", choices=BACKENDS, default="bus")
    sp.add_argument("--forbid-local-parallel", action="store_true",
                    help="at most one single-qubit gate per resonator per layer")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_schedule)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UnschedulableError as exc:
        print(f"error: unschedulable: {exc}", file=sys.stderr)
        return EXIT_UNSCHEDULABLE
    except (ConfigError, ParameterError, ValidationError, CompilationError, SupportError, SiteIndexError,
            OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
