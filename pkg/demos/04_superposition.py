"""Power split of the superposition relay codeword."""
import numpy as np

from threeway.engine import check_superposition
from threeway.regions import optimal_alpha, r_triple_prime, superposition_max_numeric, superposition_rates

g12, g23 = 6.0, 1.0
for alpha in np.linspace(0, 1, 6):
    own, far, total = superposition_rates(g12, g23, alpha)
    print(f"alpha {alpha:.1f}: own-message rate {own:.3f}, relayed rate {far:.3f}, min {min(own, far):.3f}")

a = optimal_alpha(g12, g23)
print(f"\nbest split alpha = {a:.4f}, closed form {r_triple_prime(g12, g23):.6f}")
print("numerical maximum:", superposition_max_numeric(g12, g23))
print("half sum-rate bound:", 0.5 * np.log2(1 + g12 + g23))

# The closed form never drops below the half sum-rate bound on a wide grid.
rows, ok = check_superposition((0.01, 100), (0.01, 100), grid=100)
worst = min(rows, key=lambda r: r.margin)
print(f"\n{len(rows)} grid points, smallest margin {worst.margin:.2e} at g12={worst.g12:.3g}, g23={worst.g23:.3g}: {ok}")
