"""Finite-field arithmetic with log/antilog tables."""
import numpy as np

from threeway.galois import build_field, field_inv, field_mul

# GF(8) is built from the smallest irreducible cubic over GF(2).
f = build_field(2, 3)
print("reduction polynomial (constant term first):", f.reduction_polynomial)

# Elements are integers 0..q-1 whose base-p digits are polynomial coefficients.
table = f.mul(f.elements[:, None], f.elements[None, :])
print("multiplication table of GF(8):")
print(table)

# Every nonzero element has an inverse.
nz = f.elements[1:]
print("a * a^-1 for a = 1..7:", f.mul(nz, f.inv(nz)))
print("3 * 5 in GF(8) =", field_mul(f, 3, 5), "and 3^-1 =", field_inv(f, 3))

# Operations broadcast over numpy arrays, so whole codewords are one call.
rng = np.random.default_rng(0)
big = build_field(2, 16)
a, b = rng.integers(0, big.q, 5), rng.integers(1, big.q, 5)
print("GF(65536) quotients round-trip:", np.array_equal(big.mul(big.mul(a, big.inv(b)), b), a))
