"""Capacity of the finite-field three-way channel and a random-coding check."""
import numpy as np

from threeway.channels import FfChannelSpec
from threeway.discrete_info import Pmf, entropy, ff_mac_joint, mutual_information
from threeway.engine import SimConfig, capacity_report, monte_carlo
from threeway.galois import build_field

# GF(4) with noise confined to two symbols: each pair of rates sums to at most 1 bit.
f = build_field(2, 2)
noise = Pmf([0.5, 0.5, 0.0, 0.0])
ch = FfChannelSpec(f, np.ones((3, 3), dtype=int), (noise,) * 3)
rep = capacity_report(ch)
for c in rep["capacity_region"]["constraints"]:
    print(f"{c['label']:<28} bound {c['bound']:.4f}")
print("equal-rate capacity:", rep["equal_rate_capacity"])

# The bound equals the MAC mutual information with uniform inputs.
joint = ff_mac_joint(f, (1, 1), noise)
print("I(Xi,Xj;Yk) =", mutual_information(joint, ["Xi", "Xj"], ["Yk"]), " log2 q - H(Z) =", 2 - entropy(noise))

# Noiseless GF(2): capacity 0.5 per node.  Random codes with ML decoding work
# below it and fail above it, already at n = 16.
clean = FfChannelSpec(build_field(2), np.ones((3, 3), dtype=int), (Pmf.point(2),) * 3)
base = SimConfig(clean, "noncoop_ff", 16, (1, 1, 1), trials=300, seed=1, op_budget=1e11)
for rate in (0.25, 0.625):
    res = monte_carlo(base.with_rate(rate))
    print(f"rate {rate}: P_e = {res.pe_hat:.3f}  95% CI [{res.ci[0]:.3f}, {res.ci[1]:.3f}]")
