"""Exact information measures over finite alphabets (all in bits).

The joint-pmf route here is deliberately brute force: it marginalizes a
dense probability table and never uses the closed forms that the region
code relies on, so it can serve as an independent check of them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import AlphabetMismatch, AxisOverlap, InvalidPmf, ZeroGain
from .galois import FieldSpec

Axis = Union[int, str]


@dataclass(frozen=True)
class Pmf:
    """Probability mass function on ``{0, ..., K-1}``."""

    probabilities: np.ndarray

    def __post_init__(self):
        p = np.array(self.probabilities, dtype=float)
        if p.ndim != 1 or p.size == 0:
            raise InvalidPmf("pmf must be a non-empty 1-D vector")
        if not np.all(np.isfinite(p)) or np.any(p < 0):
            raise InvalidPmf("pmf entries must be finite and non-negative")
        if abs(p.sum() - 1.0) > 1e-12:
            raise InvalidPmf(f"pmf sums to {p.sum()!r}, not 1")
        p.setflags(write=False)
        object.__setattr__(self, "probabilities", p)

    @property
    def size(self) -> int:
        return self.probabilities.size

    @classmethod
    def uniform(cls, k: int) -> "Pmf":
        return cls(np.full(k, 1.0 / k))

    @classmethod
    def point(cls, k: int, at: int = 0) -> "Pmf":
        p = np.zeros(k)
        p[at] = 1.0
        return cls(p)

    def to_config(self) -> list[float]:
        return self.probabilities.tolist()


def as_pmf(p) -> Pmf:
    return p if isinstance(p, Pmf) else Pmf(np.asarray(p, dtype=float))


@dataclass(frozen=True)
class JointPmf:
    """Dense joint pmf over a tuple of finite alphabets.

    ``labels`` names the axes; axes may be referred to by label or position.
    """

    probabilities: np.ndarray
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        p = np.array(self.probabilities, dtype=float)
        if p.ndim == 0:
            raise InvalidPmf("joint pmf needs at least one axis")
        if not np.all(np.isfinite(p)) or np.any(p < 0):
            raise InvalidPmf("joint pmf entries must be finite and non-negative")
        if abs(p.sum() - 1.0) > 1e-10:
            raise InvalidPmf(f"joint pmf sums to {p.sum()!r}, not 1")
        labels = tuple(self.labels) or tuple(f"A{k}" for k in range(p.ndim))
        if len(labels) != p.ndim or len(set(labels)) != len(labels):
            raise InvalidPmf("labels must be unique, one per axis")
        p.setflags(write=False)
        object.__setattr__(self, "probabilities", p)
        object.__setattr__(self, "labels", labels)

    def axis(self, a: Axis) -> int:
        if isinstance(a, str):
            try:
                return self.labels.index(a)
            except ValueError:
                raise InvalidPmf(f"unknown axis label {a!r}") from None
        a = int(a)
        if not 0 <= a < self.probabilities.ndim:
            raise InvalidPmf(f"axis {a} out of range")
        return a

    def axes(self, group: Iterable[Axis]) -> frozenset[int]:
        if isinstance(group, (int, str)):
            group = [group]
        return frozenset(self.axis(a) for a in group)

    def marginal(self, keep: Iterable[int]) -> np.ndarray:
        keep = set(keep)
        drop = tuple(k for k in range(self.probabilities.ndim) if k not in keep)
        return self.probabilities.sum(axis=drop)


def _h(p: np.ndarray) -> float:
    p = np.asarray(p, dtype=float).ravel()
    nz = p[p > 0]
    return float(-(nz * np.log2(nz)).sum())


def entropy(p) -> float:
    """Shannon entropy in bits, with ``0 log 0 = 0``."""
    return max(_h(as_pmf(p).probabilities), 0.0)


def joint_entropy(j: JointPmf, group: Iterable[Axis]) -> float:
    axes = j.axes(group)
    if not axes:
        return 0.0
    return _h(j.marginal(axes))


def mutual_information(
    j: JointPmf,
    group_a: Iterable[Axis],
    group_b: Iterable[Axis],
    conditioned: Iterable[Axis] = (),
) -> float:
    """``I(A; B | C)`` computed from marginal entropies of ``j``."""
    a, b, c = j.axes(group_a), j.axes(group_b), j.axes(conditioned)
    if a & b or a & c or b & c:
        raise AxisOverlap("axis groups must be disjoint")
    if not a or not b:
        raise AxisOverlap("groups A and B must be non-empty")
    mi = (
        joint_entropy(j, a | c)
        + joint_entropy(j, b | c)
        - joint_entropy(j, a | b | c)
        - joint_entropy(j, c)
    )
    return max(mi, 0.0)


def ff_mac_joint(f: FieldSpec, gains: Sequence[int], noise) -> JointPmf:
    """Joint law of ``(X_i, X_j, Y_k)`` for ``Y_k = g_i X_i + g_j X_j + Z_k``.

    Inputs are independent and uniform on GF(q); ``noise`` is the pmf of
    ``Z_k``.  Built by enumerating every ``(x_i, x_j, z)`` triple.
    """
    g_i, g_j = (int(g) for g in gains)
    if g_i == 0 or g_j == 0:
        raise ZeroGain("MAC gains must be non-zero")
    f.check([g_i, g_j])
    noise = as_pmf(noise)
    if noise.size != f.q:
        raise AlphabetMismatch(f"noise pmf has {noise.size} entries, field has {f.q}")
    q = f.q
    xs = f.elements
    xi, xj, z = np.meshgrid(xs, xs, xs, indexing="ij")
    y = f.add(f.add(f.mul(g_i, xi), f.mul(g_j, xj)), z)
    weight = noise.probabilities[z] / (q * q)
    table = np.zeros((q, q, q))
    np.add.at(table, (xi, xj, y), weight)
    return JointPmf(table, ("Xi", "Xj", "Yk"))
