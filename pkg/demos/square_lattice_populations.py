"""3x3 lattice with next-nearest couplings: one fermion spreading from site 2.

Prints the populations of sites 2 and 4 at a few times for exact evolution and
for the ten-step bus circuit, followed by the end-of-run fidelity as a function
of the number of Trotter steps.  Takes about fifteen seconds.

Run with ``python3 demos/square_lattice_populations.py``.
"""

from __future__ import annotations

from fermidigital import preset_config, run_experiment


def main() -> None:
    cfg = preset_config("fig5")
    result = run_experiment(cfg)
    (U,) = cfg.U
    tag = f"U={U:g}"
    (steps,) = cfg.steps
    print("theta   n2 exact  n2 digital  n4 exact  n4 digital")
    exact = {s: result.select(f"n{s}|{tag}", "exact") for s in cfg.sites}
    digital = {s: result.select(f"n{s}|{tag}|n={steps}", "digital") for s in cfg.sites}
    for i in range(0, cfg.points, 25):
        theta = exact[2][i, 0]
        print(f"{theta:5.2f}   {exact[2][i, 1]:8.4f}  {digital[2][i, 1]:10.4f}  "
              f"{exact[4][i, 1]:8.4f}  {digital[4][i, 1]:10.4f}")
    print("\nfinal fidelity by Trotter steps:")
    for l, f in sorted(result.summary[f"{tag}|scan"].items(), key=lambda kv: int(kv[0])):
        print(f"  l = {int(l):2d}: F = {f:.4f}")


if __name__ == "__main__":
    main()
