"""Inner and outer bounds of the phase-fading AWGN three-way channel."""
import numpy as np

from threeway.channels import AwgnChannelSpec, classify
from threeway.regions import awgn_inner, awgn_outer, c_r, c_ss, equal_rate_max, is_subset, vertices

# Reciprocal channel with pair SNRs 6, 8 and 1 (linear, not dB).
ch = AwgnChannelSpec.reciprocal(6, 8, 1)
print("classification:", classify(ch))

outer, inner = awgn_outer(ch), awgn_inner(ch)
print("\ncut-set outer bound")
for c in outer.constraints:
    print(f"  {c.label:<28} {c.bound:.4f}")
print("\nnon-cooperative inner bound")
for c in inner.constraints:
    print(f"  {c.label:<28} {c.bound:.4f}")

print("\ninner region vertices:")
print(np.round(np.array(vertices(inner)), 4))
print("inner within outer:", is_subset(inner, outer))

# The cut-set bound is tight at the equal-rate point; plain MAC decoding is not.
print(f"\nequal rate: outer {equal_rate_max(outer):.4f}, inner {equal_rate_max(inner):.4f}, C_r {c_r(ch):.4f}")

# With sender-symmetric SNRs the inner bound already meets the outer bound.
ss = AwgnChannelSpec.sender_symmetrical(4, 1, 9)
print(f"sender-symmetric: inner {equal_rate_max(awgn_inner(ss)):.5f}  outer {equal_rate_max(awgn_outer(ss)):.5f}  C_ss {c_ss(ss):.5f}")
