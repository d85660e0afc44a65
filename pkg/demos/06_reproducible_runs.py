"""Seeded Monte Carlo runs that do not depend on threading."""
from threeway.channels import AwgnChannelSpec
from threeway.engine import SimConfig, monte_carlo, rate_sweep
from threeway.seeding import keyed_rng, trial_seed

# Each trial draws from its own Philox stream keyed by (trial, block, purpose, node).
print(keyed_rng(trial_seed(42, 0), 1, 0, 2).standard_normal(3))
print(keyed_rng(trial_seed(42, 0), 1, 0, 2).standard_normal(3))

ch = AwgnChannelSpec.reciprocal(6, 8, 1)
cfg = SimConfig(ch, "coop_double_index", 6, (16, 16, 16), trials=40, seed=42, B=2)
one = monte_carlo(cfg)
four = monte_carlo(SimConfig(ch, "coop_double_index", 6, (16, 16, 16), trials=40, seed=42, B=2, threads=4))
print("identical across thread counts:", one.dumps() == four.dumps())
print(one.dumps()[:200], "...")

for row in rate_sweep(cfg, [0.25, 0.75, 1.25]):
    print(f"R={row.rate_nominal:.2f} (M={row.config.sizes[0]}): P_e {row.pe_hat:.3f}")
