"""Reduced-scale size/power study across the generating processes.

Runs the Monte Carlo harness for a selection of processes in the
conditional and unconditional equations and writes one frequency row per
(process, conditioning, test) to ``size_power.csv``.  Scaled down by
default; raise REPS/BOOT/T for publication-grade numbers.
"""

import sys

from ardlboot import BootstrapConfig, make_config, monte_carlo
from ardlboot.dataio import write_mc_csv

REPS = int(sys.argv[1]) if len(sys.argv) > 1 else 50
BOOT = 200
T = 200
WORKERS = 2

results = []
for dgp_id in ("1H", "3A", "4B", "6"):
    for conditioning in ("conditional", "unconditional"):
        config = make_config(dgp_id, "III", n_obs=T, seed=7)
        boot = BootstrapConfig(n_replicates=BOOT, alpha=0.05, seed=7)
        result = monte_carlo(
            dgp_id, "III", conditioning, REPS, config, boot, workers=WORKERS
        )
        results.append(result)
        rates = ", ".join(f"{t}={v:.3f}" for t, v in result.rejection_rates.items())
        print(f"{dgp_id:3s} {conditioning:14s} {rates}")

with open("size_power.csv", "w", newline="") as handle:
    write_mc_csv(results, handle)
print("\nwrote size_power.csv")
