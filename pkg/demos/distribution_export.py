"""Export bootstrap null distributions for external plotting.

For a cointegrated and a degenerate process, runs the bootstrap under the
conditional and the unconditional equation and writes the simulated null
distributions to CSV (one column per test).  Kernel-density plots of these
columns show how conditioning reshapes the null distributions.
"""

from ardlboot import ArdlSpec, BootstrapConfig, bootstrap_tests, make_config, simulate_dgp
from ardlboot.dataio import write_distributions_csv

config = BootstrapConfig(n_replicates=1999, alpha=0.05, seed=3)

for dgp_id in ("1H", "3A"):
    frame = simulate_dgp(make_config(dgp_id, "III", n_obs=200, seed=3))
    for conditioning in ("conditional", "unconditional"):
        spec = ArdlSpec("III", conditioning, p_y=3, p_x=(3, 3))
        report = bootstrap_tests(frame, spec, config)
        path = f"null_dist_{dgp_id}_{conditioning}.csv"
        with open(path, "w", newline="") as handle:
            write_distributions_csv(report.distributions, handle)
        print(f"wrote {path}")
