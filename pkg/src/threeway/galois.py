"""Finite-field arithmetic over GF(q), q = p^m.

Elements are integers in ``[0, q)``.  For ``m > 1`` the base-``p`` digits
of an element are the coefficients of a polynomial over GF(p), constant
term first, so that in GF(4) ``x -> 2`` and ``x + 1 -> 3``.  Products are
taken modulo a reduction polynomial, chosen as the lexicographically
smallest monic irreducible polynomial of degree ``m`` (highest-degree
coefficient compared first), which keeps every table reproducible.

Multiplication and inversion go through exp/log tables; addition is
digit-wise mod ``p``.  All operations accept scalars or integer numpy
arrays and broadcast like ufuncs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .errors import (
    DivisionByZero,
    InvalidElement,
    NoIrreduciblePolynomial,
    NotPrime,
    OrderTooLarge,
)

MAX_ORDER = 65536


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    k = 3
    while k * k <= p:
        if p % k == 0:
            return False
        k += 2
    return True


# ----------------------------------------------------------------------
# Polynomials over GF(p), coefficient lists with the constant term first
# ----------------------------------------------------------------------
def _trim(a: list[int]) -> list[int]:
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    """Remainder of ``a`` divided by monic ``b`` over GF(p)."""
    r = [c % p for c in a]
    db = len(b) - 1
    for shift in range(len(r) - 1 - db, -1, -1):
        c = r[shift + db]
        if c:
            for k in range(db + 1):
                r[shift + k] = (r[shift + k] - c * b[k]) % p
    if db == 0:
        return [0]
    return _trim(r[:db])


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % p
    return _trim(out)


def _digits(value: int, p: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        value, d = divmod(value, p)
        out.append(d)
    return out


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Exhaustive factor search: no monic factor of degree ``1..m//2`` divides ``poly``."""
    m = len(poly) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    if poly[0] % p == 0:
        return False
    for d in range(1, m // 2 + 1):
        for low in range(p**d):
            g = _digits(low, p, d) + [1]
            if _poly_mod(poly, g, p) == [0]:
                return False
    return True


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible polynomial of degree ``m``."""
    for low in range(p**m):
        cand = _digits(low, p, m) + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise NoIrreduciblePolynomial(f"no irreducible polynomial of degree {m} over GF({p})")


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """A validated finite field GF(p^m) with its lookup tables.

    Attributes
    ----------
    p, m, q : int
        Characteristic, extension degree and order ``q = p**m``.
    reduction_polynomial : tuple of int or None
        Monic irreducible polynomial (constant term first, length ``m + 1``);
        ``None`` for prime fields.
    exp, log : ndarray
        ``exp[k] = g**k`` for a primitive element ``g`` (length ``2(q-1)``
        so sums of two logs index directly) and its inverse ``log``
        (``log[0] = -1``).
    """

    p: int
    m: int
    q: int
    reduction_polynomial: Optional[tuple[int, ...]]
    generator: int
    exp: np.ndarray = field(repr=False)
    log: np.ndarray = field(repr=False)
    digits: Optional[np.ndarray] = field(repr=False, default=None)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return (self.p, self.m, self.reduction_polynomial) == (
            other.p,
            other.m,
            other.reduction_polynomial,
        )

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.reduction_polynomial))

    @property
    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def check(self, a) -> np.ndarray:
        arr = np.asarray(a)
        if arr.dtype.kind not in "iu":
            if arr.size and not np.all(np.mod(arr, 1) == 0):
                raise InvalidElement(f"non-integer element for GF({self.q})")
            arr = arr.astype(np.int64)
        if arr.size and (arr.min() < 0 or arr.max() >= self.q):
            raise InvalidElement(f"element out of range for GF({self.q})")
        return arr.astype(np.int64, copy=False)

    def _pack(self, d: np.ndarray) -> np.ndarray:
        powers = self.p ** np.arange(self.m, dtype=np.int64)
        return d @ powers

    def add(self, a, b):
        a, b = self.check(a), self.check(b)
        if self.m == 1:
            out = (a + b) % self.p
        elif self.p == 2:
            out = a ^ b
        else:
            out = self._pack((self.digits[a] + self.digits[b]) % self.p)
        return _as_scalar(out)

    def neg(self, a):
        a = self.check(a)
        if self.m == 1:
            out = (-a) % self.p
        elif self.p == 2:
            out = a
        else:
            out = self._pack((-self.digits[a]) % self.p)
        return _as_scalar(out)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a, b = self.check(a), self.check(b)
        la, lb = self.log[a], self.log[b]
        out = np.where((a == 0) | (b == 0), 0, self.exp[np.maximum(la, 0) + np.maximum(lb, 0)])
        return _as_scalar(out)

    def inv(self, a):
        a = self.check(a)
        if np.any(a == 0):
            raise DivisionByZero("zero has no multiplicative inverse")
        out = self.exp[(self.q - 1 - self.log[a]) % (self.q - 1)]
        return _as_scalar(out)

    def to_config(self) -> dict:
        return {"p": self.p, "m": self.m}


def _as_scalar(x):
    x = np.asarray(x, dtype=np.int64)
    return int(x) if x.ndim == 0 else x


def _mul_matrix(g: int, poly: Sequence[int], p: int, m: int) -> np.ndarray:
    """Matrix over GF(p) of the linear map ``a -> g * a`` on digit vectors."""
    gd = _trim(_digits(g, p, m))
    cols = []
    for k in range(m):
        xk = [0] * k + [1]
        prod = _poly_mod(_poly_mul(gd, xk, p), poly, p)
        cols.append(prod + [0] * (m - len(prod)))
    return np.array(cols, dtype=np.int64).T


def _exp_table_extension(p: int, m: int, poly: Sequence[int]) -> tuple[int, np.ndarray]:
    q = p**m
    powers = p ** np.arange(m, dtype=np.int64)
    # x is tried first; it is primitive for most smallest irreducibles.
    candidates = [p] + [g for g in range(2, q) if g != p]
    for g in candidates:
        mat = _mul_matrix(g, poly, p, m)
        exp = np.empty(q - 1, dtype=np.int64)
        vec = np.zeros(m, dtype=np.int64)
        vec[0] = 1
        ok = True
        for k in range(q - 1):
            val = int(vec @ powers)
            if k > 0 and val == 1:
                ok = False
                break
            exp[k] = val
            vec = (mat @ vec) % p
        if ok and int(vec @ powers) == 1:
            return g, exp
    raise NoIrreduciblePolynomial(f"no primitive element found for GF({q})")


def _exp_table_prime(p: int) -> tuple[int, np.ndarray]:
    if p == 2:
        return 1, np.array([1], dtype=np.int64)
    for g in range(2, p):
        exp = np.empty(p - 1, dtype=np.int64)
        val = 1
        ok = True
        for k in range(p - 1):
            if k > 0 and val == 1:
                ok = False
                break
            exp[k] = val
            val = val * g % p
        if ok:
            return g, exp
    raise NoIrreduciblePolynomial(f"no primitive root mod {p}")  # pragma: no cover


@lru_cache(maxsize=32)
def build_field(p: int, m: int = 1) -> FieldSpec:
    """Construct GF(p^m).

    Raises
    ------
    NotPrime
        If ``p`` is not prime.
    OrderTooLarge
        If ``p**m`` exceeds 65536 (or ``m < 1``).
    """
    p, m = int(p), int(m)
    if not is_prime(p):
        raise NotPrime(f"characteristic {p} is not prime")
    if m < 1:
        raise OrderTooLarge(f"degree must be >= 1, got {m}")
    q = p**m
    if q > MAX_ORDER:
        raise OrderTooLarge(f"field order {q} exceeds {MAX_ORDER}")

    if m == 1:
        poly = None
        gen, exp = _exp_table_prime(p)
        digits = None
    else:
        poly = smallest_irreducible(p, m)
        gen, exp = _exp_table_extension(p, m, poly)
        digits = np.array([_digits(v, p, m) for v in range(q)], dtype=np.int64)

    log = np.full(q, -1, dtype=np.int64)
    log[exp] = np.arange(q - 1, dtype=np.int64)
    exp2 = np.concatenate([exp, exp])
    exp2.setflags(write=False)
    log.setflags(write=False)
    if digits is not None:
        digits.setflags(write=False)
    return FieldSpec(p, m, q, poly, gen, exp2, log, digits)


def field_from_config(cfg: dict) -> FieldSpec:
    return build_field(int(cfg["p"]), int(cfg.get("m", 1)))


def field_add(f: FieldSpec, a, b):
    return f.add(a, b)


def field_sub(f: FieldSpec, a, b):
    return f.sub(a, b)


def field_mul(f: FieldSpec, a, b):
    return f.mul(a, b)


def field_neg(f: FieldSpec, a):
    return f.neg(a)


def field_inv(f: FieldSpec, a):
    return f.inv(a)
