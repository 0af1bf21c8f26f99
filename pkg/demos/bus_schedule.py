"""Resource counts and resonator-bus scheduling for square lattices.

Prints the term counts and per-term gate costs for 3x3 and 4x4 lattices, then
schedules one Trotter step of the 3x3 model onto its resonators, checks that
replaying the schedule gives the same unitary and shows the first layers.

Run with ``python3 demos/bus_schedule.py``.
"""

from __future__ import annotations

import numpy as np

from fermidigital import (
    HubbardParams,
    build_architecture,
    build_square,
    compile_plan,
    count_resources,
    schedule,
    trotterize,
)


def main() -> None:
    for side in (3, 4):
        print(count_resources(side * side).to_text(), end="\n\n")

    params = HubbardParams(1.0, 2.0, 0.2, 0.4)
    step = compile_plan(trotterize(build_square(3, 3, params).to_pauli(), 0.2, 1), "bus")
    sched = schedule(step, build_architecture(3, 3))
    replay = float(np.abs(sched.to_circuit().unitary() - step.unitary()).max())
    print(f"3x3 step: {len(step)} gates in {sched.depth} layers, replay error {replay:.1e}")
    for line in sched.to_text().splitlines()[:5]:
        print("  " + line)


if __name__ == "__main__":
    main()
