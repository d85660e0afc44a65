"""Capacity bounds and rate regions for the three-way channel.

Regions are polytopes in the non-negative orthant of ``(R1, R2, R3)``
described by constraints ``a . R <= b`` with 0/1 coefficient vectors.
Achievability statements with strict inequalities are stored as their
closures.  Every rate is in bits per channel use.

Labels use 1-based node names (``R1``, ``g12`` for the link 1 -> 2) while
array indices are 0-based like the rest of the package.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from .channels import NODES, AwgnChannelSpec, FfChannelSpec, classify, others
from .discrete_info import entropy
from .errors import (
    AlphaOutOfRange,
    ConfigError,
    NotReciprocal,
    NotSenderSymmetrical,
    UnboundedRegion,
)

DEDUP_TOL = 1e-9


class RateTriple(NamedTuple):
    r1: float
    r2: float
    r3: float


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[int, int, int]
    bound: float
    label: str = ""

    def __post_init__(self):
        c = tuple(int(a) for a in self.coeffs)
        if len(c) != 3 or any(a not in (0, 1) for a in c) or not any(c):
            raise ConfigError(f"coefficients must be a non-zero 0/1 vector, got {self.coeffs}")
        b = float(self.bound)
        if not np.isfinite(b) or b < 0:
            raise ConfigError(f"bound must be finite and non-negative, got {self.bound}")
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "bound", b)

    def to_json(self) -> dict:
        return {"coeffs": list(self.coeffs), "bound": self.bound, "label": self.label}


@dataclass(frozen=True)
class RatePolytope:
    """``{R >= 0 : a . R <= b for every constraint}``."""

    constraints: tuple[Constraint, ...]

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))

    @classmethod
    def from_pairs(cls, rows) -> "RatePolytope":
        """Build from ``(coeffs, bound)`` or ``(coeffs, bound, label)`` rows."""
        return cls(tuple(Constraint(*row) for row in rows))

    @property
    def A(self) -> np.ndarray:
        return np.array([c.coeffs for c in self.constraints], dtype=float).reshape(-1, 3)

    @property
    def b(self) -> np.ndarray:
        return np.array([c.bound for c in self.constraints], dtype=float)

    def is_bounded(self) -> bool:
        return bool(self.constraints) and bool(np.all(self.A.sum(axis=0) > 0))

    def to_json(self, with_vertices: bool = True) -> dict:
        out = {"constraints": [c.to_json() for c in self.constraints]}
        if with_vertices and self.is_bounded():
            out["vertices"] = [list(v) for v in vertices(self)]
        out["equal_rate"] = equal_rate_max(self)
        return out


def _pair_coeffs(i: int, j: int) -> tuple[int, int, int]:
    c = [0, 0, 0]
    c[i] = c[j] = 1
    return tuple(c)


def _single_coeffs(i: int) -> tuple[int, int, int]:
    c = [0, 0, 0]
    c[i] = 1
    return tuple(c)


def log2_1p(x: float) -> float:
    """``log2(1 + x)``, accurate for small ``x``."""
    return float(np.log1p(x) / np.log(2.0))


# ----------------------------------------------------------------------
# Regions
# ----------------------------------------------------------------------
def ff_outer(ch: FfChannelSpec) -> RatePolytope:
    """Cut-set region of the finite-field channel, which is also its capacity region.

    One constraint per receiver ``k``: ``R_i + R_j <= log2 q - H(Z_k)``.
    """
    log_q = float(np.log2(ch.field.q))
    rows = []
    for k in NODES:
        i, j = others(k)
        bound = max(0.0, log_q - entropy(ch.noise[k]))
        rows.append(Constraint(_pair_coeffs(i, j), bound, f"R{i+1}+R{j+1}<=log2(q)-H(Z{k+1})"))
    return RatePolytope(tuple(rows))


def awgn_outer(ch: AwgnChannelSpec) -> RatePolytope:
    """Cut-set outer bound of the phase-fading AWGN channel."""
    s = ch.snr
    rows = []
    for i in NODES:
        j, k = others(i)
        rows.append(
            Constraint(
                _single_coeffs(i),
                log2_1p(s[i, j] + s[i, k]),
                f"R{i+1}<=log2(1+g{i+1}{j+1}+g{i+1}{k+1})",
            )
        )
    for k in NODES:
        i, j = others(k)
        rows.append(
            Constraint(
                _pair_coeffs(i, j),
                log2_1p(s[i, k] + s[j, k]),
                f"R{i+1}+R{j+1}<=log2(1+g{i+1}{k+1}+g{j+1}{k+1})",
            )
        )
    return RatePolytope(tuple(rows))


def awgn_inner(ch: AwgnChannelSpec) -> RatePolytope:
    """Closure of the region reached by independent Gaussian codebooks and MAC decoding.

    For every receiver ``k``: ``R_i <= log2(1+g_ik)``, ``R_j <= log2(1+g_jk)``
    and ``R_i + R_j <= log2(1+g_ik+g_jk)``.
    """
    s = ch.snr
    rows = []
    for k in NODES:
        i, j = others(k)
        for a in (i, j):
            rows.append(
                Constraint(_single_coeffs(a), log2_1p(s[a, k]), f"R{a+1}<=log2(1+g{a+1}{k+1})")
            )
        rows.append(
            Constraint(
                _pair_coeffs(i, j),
                log2_1p(s[i, k] + s[j, k]),
                f"R{i+1}+R{j+1}<=log2(1+g{i+1}{k+1}+g{j+1}{k+1})",
            )
        )
    return RatePolytope(tuple(rows))


# ----------------------------------------------------------------------
# Polytope utilities
# ----------------------------------------------------------------------
def contains(p: RatePolytope, r: Sequence[float], tol: float = 1e-9) -> bool:
    r = np.asarray(r, dtype=float)
    if np.any(r < -tol):
        return False
    if not p.constraints:
        return True
    return bool(np.all(p.A @ r <= p.b + tol))


def vertices(p: RatePolytope) -> list[RateTriple]:
    """All vertices, found by intersecting every triple of active planes.

    The candidate planes are the constraint hyperplanes plus the three
    coordinate planes ``R_i = 0``.  Candidates violating any constraint are
    dropped and the rest deduplicated within ``1e-9``.
    """
    if not p.is_bounded():
        raise UnboundedRegion("every rate needs at least one bounding constraint")
    A = np.vstack([p.A, np.eye(3)])
    b = np.concatenate([p.b, np.zeros(3)])
    found: list[np.ndarray] = []
    for rows in itertools.combinations(range(len(b)), 3):
        M = A[list(rows)]
        if abs(np.linalg.det(M)) < 1e-12:
            continue
        v = np.linalg.solve(M, b[list(rows)])
        if not contains(p, v, tol=DEDUP_TOL):
            continue
        v = np.where(np.abs(v) < DEDUP_TOL, 0.0, v)
        if any(np.max(np.abs(v - w)) <= DEDUP_TOL for w in found):
            continue
        found.append(v)
    found.sort(key=tuple)
    return [RateTriple(*map(float, v)) for v in found]


def is_subset(inner: RatePolytope, outer: RatePolytope, tol: float = 1e-9) -> bool:
    """Vertex test; valid because both regions are convex."""
    return all(contains(outer, v, tol) for v in vertices(inner))


def equal_rate_max(p: RatePolytope) -> float:
    """Largest ``R`` with ``(R, R, R)`` in ``p``; ``inf`` if unconstrained."""
    if not p.constraints:
        return float("inf")
    return float(min(c.bound / sum(c.coeffs) for c in p.constraints))


# ----------------------------------------------------------------------
# Equal-rate capacities
# ----------------------------------------------------------------------
def c_ss(ch: AwgnChannelSpec) -> float:
    """Equal-rate capacity of a sender-symmetrical channel: ``0.5 log2(1 + 2 min_k g_k)``."""
    if not classify(ch).get("sender_symmetrical"):
        raise NotSenderSymmetrical("links into each receiver must share one SNR")
    gk = [ch.snr[others(k)[0], k] for k in NODES]
    return 0.5 * log2_1p(2.0 * min(gk))


def pair_snrs(snr) -> dict[tuple[int, int], float]:
    s = np.asarray(snr, dtype=float)
    return {(i, j): float(s[i, j]) for i in NODES for j in NODES if i < j}


def reciprocal_order(ch_or_snr) -> tuple[int, int, int]:
    """Relabeling that puts a reciprocal spec in relay order.

    Returns ``perm`` such that ``ch.permute(perm)`` has
    ``g23 <= g12 <= g13`` (1-based), i.e. new node 1 (index 0) is the node
    outside the weakest pair and acts as the relay.  Ties resolve by the
    original node indices.
    """
    snr = ch_or_snr.snr if isinstance(ch_or_snr, AwgnChannelSpec) else ch_or_snr
    pairs = sorted(pair_snrs(snr).items(), key=lambda kv: (kv[1], kv[0]))
    weakest, mid = pairs[0][0], pairs[1][0]
    relay = next(a for a in NODES if a not in weakest)
    second = next(a for a in weakest if a in mid)
    third = next(a for a in weakest if a != second)
    return (relay, second, third)


def c_r(ch: AwgnChannelSpec) -> float:
    """Equal-rate capacity of a reciprocal channel: ``0.5 log2(1 + g_mid + g_min)``.

    The pair SNRs are sorted internally; see :func:`reciprocal_order` for
    the relabeling that realizes the ordering.
    """
    if not classify(ch).get("reciprocal"):
        raise NotReciprocal("forward and backward SNRs differ on some pair")
    lo, mid, _ = sorted(pair_snrs(ch.snr).values())
    return 0.5 * log2_1p(mid + lo)


# ----------------------------------------------------------------------
# Superposition variant of the cooperative scheme
# ----------------------------------------------------------------------
def superposition_rates(g12: float, g23: float, alpha: float) -> tuple[float, float, float]:
    """``(R'(alpha), R''(alpha), sum_bound)`` for power split ``alpha``.

    ``R'`` limits the relay's own message, ``R''`` the message of the far
    node, and ``sum_bound`` limits ``2R``.
    """
    if not 0.0 <= alpha <= 1.0:
        raise AlphaOutOfRange(f"alpha must lie in [0, 1], got {alpha}")
    r1 = log2_1p(alpha * g12)
    r2 = log2_1p((1.0 - alpha) * g12) + log2_1p(g23 / (1.0 + g12))
    return r1, r2, log2_1p(g12 + g23)


def r_triple_prime(g12: float, g23: float) -> float:
    """Closed-form ``max_alpha min(R'(alpha), R''(alpha))``."""
    return log2_1p((1.0 + g12) * (g12 + g23) / (2.0 * (1.0 + g12) + g23))


def optimal_alpha(g12: float, g23: float) -> float:
    """Power split equalizing ``R'`` and ``R''``, clipped to ``[0, 1]``."""
    if g12 <= 0:
        return 0.0
    a = (1.0 + g12) * (g12 + g23) / (g12 * (2.0 * (1.0 + g12) + g23))
    return float(min(max(a, 0.0), 1.0))


def superposition_max_numeric(g12: float, g23: float, grid: int = 401) -> tuple[float, float]:
    """Numerically maximize ``min(R', R'')`` over ``alpha``: grid scan then bounded Brent.

    Returns ``(alpha, value)``.
    """

    def objective(a):
        r1, r2, _ = superposition_rates(g12, g23, a)
        return min(r1, r2)

    alphas = np.linspace(0.0, 1.0, grid)
    vals = [objective(a) for a in alphas]
    k = int(np.argmax(vals))
    lo, hi = alphas[max(k - 1, 0)], alphas[min(k + 1, grid - 1)]
    res = minimize_scalar(
        lambda a: -objective(a), bounds=(lo, hi), method="bounded", options={"xatol": 1e-14}
    )
    best_a, best = (float(res.x), -float(res.fun))
    if vals[k] > best:
        best_a, best = float(alphas[k]), float(vals[k])
    return best_a, best
