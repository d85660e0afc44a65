"""Three-way channel models: finite-field and phase-fading AWGN.

Nodes are indexed 0, 1, 2 in code.  Matrices are indexed ``[i, j]`` for
the link from node ``i`` to node ``j``; diagonals are unused.  Receiver
``j`` observes

    y_j[t] = sum_{i != j} G_ij[t] x_i[t] + z_j[t]

where for the AWGN model ``G_ij[t] = |G_ij| exp(1j * theta_ij[t])`` with a
fresh uniform phase per link and channel use, known only to receiver ``j``.

AWGN specs are parameterized by the received SNRs ``snr[i, j]``; gain
magnitudes are derived as ``sqrt(snr * N_j / P_i)`` so that
``|G_ij|**2 P_i / N_j`` equals the configured SNR exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .discrete_info import Pmf, as_pmf
from .errors import (
    AlphabetMismatch,
    ConfigError,
    EmptyInput,
    LengthMismatch,
    ZeroGain,
)
from .galois import FieldSpec, field_from_config

NODES = (0, 1, 2)
SYM_TOL = 1e-12


def others(k: int) -> tuple[int, int]:
    """The two nodes other than ``k``, in ascending order."""
    i, j = (a for a in NODES if a != k)
    return i, j


def _offdiag(mat, name: str) -> np.ndarray:
    arr = np.array(
        [[np.nan if v is None else v for v in row] for row in mat], dtype=float
    )
    if arr.shape != (3, 3):
        raise ConfigError(f"{name} must be a 3x3 matrix")
    np.fill_diagonal(arr, np.nan)
    return arr


@dataclass(frozen=True, eq=False)
class FfChannelSpec:
    """Finite-field three-way channel: gains ``G_ij`` and noise laws ``Z_j``."""

    field: FieldSpec
    gains: np.ndarray
    noise: tuple[Pmf, Pmf, Pmf]

    def __post_init__(self):
        g = np.array(self.gains, dtype=object)
        if g.shape != (3, 3):
            raise ConfigError("gains must be a 3x3 matrix")
        gains = np.zeros((3, 3), dtype=np.int64)
        for i in NODES:
            for j in NODES:
                if i == j:
                    continue
                if g[i, j] is None or int(g[i, j]) == 0:
                    raise ZeroGain(f"gain G[{i},{j}] must be non-zero")
                gains[i, j] = int(g[i, j])
        self.field.check(gains)
        gains.setflags(write=False)
        noise = tuple(as_pmf(z) for z in self.noise)
        if len(noise) != 3:
            raise ConfigError("need one noise pmf per receiver")
        for z in noise:
            if z.size != self.field.q:
                raise AlphabetMismatch(f"noise pmf size {z.size} != field order {self.field.q}")
        object.__setattr__(self, "gains", gains)
        object.__setattr__(self, "noise", noise)

    @classmethod
    def uniform_gains(cls, f: FieldSpec, noise=None) -> "FfChannelSpec":
        """All gains 1; noiseless unless ``noise`` (one pmf for all receivers) is given."""
        z = Pmf.point(f.q) if noise is None else as_pmf(noise)
        return cls(f, np.ones((3, 3), dtype=int), (z, z, z))

    def permute(self, perm: Sequence[int]) -> "FfChannelSpec":
        """Relabel nodes: new node ``a`` is old node ``perm[a]``."""
        perm = list(perm)
        g = self.gains[np.ix_(perm, perm)]
        return FfChannelSpec(self.field, g, tuple(self.noise[p] for p in perm))

    def to_config(self) -> dict:
        g = [[None if i == j else int(self.gains[i, j]) for j in NODES] for i in NODES]
        return {
            "model": "ff",
            "field": self.field.to_config(),
            "gains": g,
            "noise_pmfs": [z.to_config() for z in self.noise],
        }


@dataclass(frozen=True, eq=False)
class AwgnChannelSpec:
    """Phase-fading AWGN three-way channel parameterized by link SNRs."""

    snr: np.ndarray
    powers: np.ndarray = field(default_factory=lambda: np.ones(3))
    noise_powers: np.ndarray = field(default_factory=lambda: np.ones(3))

    def __post_init__(self):
        snr = _offdiag(self.snr, "snr")
        off = snr[~np.eye(3, dtype=bool)]
        if not np.all(np.isfinite(off)) or np.any(off <= 0):
            raise ConfigError("every off-diagonal SNR must be finite and positive")
        P = np.array(self.powers, dtype=float).reshape(-1)
        N = np.array(self.noise_powers, dtype=float).reshape(-1)
        if P.shape != (3,) or N.shape != (3,):
            raise ConfigError("powers and noise_powers need three entries")
        if np.any(~np.isfinite(P)) or np.any(P <= 0) or np.any(~np.isfinite(N)) or np.any(N <= 0):
            raise ConfigError("powers and noise powers must be finite and positive")
        for a in (snr, P, N):
            a.setflags(write=False)
        object.__setattr__(self, "snr", snr)
        object.__setattr__(self, "powers", P)
        object.__setattr__(self, "noise_powers", N)

    @classmethod
    def reciprocal(cls, g12: float, g13: float, g23: float, **kw) -> "AwgnChannelSpec":
        """Reciprocal spec from the three pair SNRs (1-based pair names)."""
        s = [[None, g12, g13], [g12, None, g23], [g13, g23, None]]
        return cls(s, **kw)

    @classmethod
    def sender_symmetrical(cls, g1: float, g2: float, g3: float, **kw) -> "AwgnChannelSpec":
        """Every link into receiver ``k`` has SNR ``g_k``."""
        gk = (g1, g2, g3)
        s = [[None if i == j else gk[j] for j in NODES] for i in NODES]
        return cls(s, **kw)

    @property
    def gain_magnitudes(self) -> np.ndarray:
        g = np.sqrt(self.snr * self.noise_powers[None, :] / self.powers[:, None])
        g[np.isnan(g)] = 0.0
        return g

    def permute(self, perm: Sequence[int]) -> "AwgnChannelSpec":
        """Relabel nodes: new node ``a`` is old node ``perm[a]``."""
        perm = list(perm)
        return AwgnChannelSpec(
            self.snr[np.ix_(perm, perm)], self.powers[perm], self.noise_powers[perm]
        )

    def to_config(self) -> dict:
        s = [[None if i == j else float(self.snr[i, j]) for j in NODES] for i in NODES]
        return {
            "model": "awgn",
            "snr": s,
            "powers": self.powers.tolist(),
            "noise_powers": self.noise_powers.tolist(),
        }


def classify(ch: AwgnChannelSpec) -> dict[str, bool]:
    """Sender-symmetry (``snr[i,k] == snr[j,k]``) and reciprocity (``snr[i,j] == snr[j,i]``)."""
    s = ch.snr
    ss = all(abs(s[others(k)[0], k] - s[others(k)[1], k]) <= SYM_TOL for k in NODES)
    rec = all(abs(s[i, j] - s[j, i]) <= SYM_TOL for i in NODES for j in NODES if i < j)
    return {"sender_symmetrical": ss, "reciprocal": rec}


def channel_from_config(cfg: dict):
    """Build a channel spec from its JSON form."""
    model = cfg.get("model")
    try:
        if model == "ff":
            f = field_from_config(cfg["field"])
            gains = cfg.get("gains")
            if gains is None:
                gains = np.ones((3, 3), dtype=int)
            pmfs = cfg.get("noise_pmfs")
            if pmfs is None:
                pmfs = [Pmf.point(f.q)] * 3
            elif len(pmfs) == f.q and not isinstance(pmfs[0], (list, tuple)):
                pmfs = [pmfs] * 3
            return FfChannelSpec(f, gains, tuple(pmfs))
        if model == "awgn":
            return AwgnChannelSpec(
                cfg["snr"],
                cfg.get("powers", [1.0, 1.0, 1.0]),
                cfg.get("noise_powers", [1.0, 1.0, 1.0]),
            )
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"malformed channel config: {exc}") from exc
    raise ConfigError(f"unknown channel model {model!r}")


# ----------------------------------------------------------------------
# Sampling
# ----------------------------------------------------------------------
def _same_length(xs) -> int:
    lengths = {len(x) for x in xs}
    if len(lengths) != 1:
        raise LengthMismatch(f"input lengths differ: {sorted(lengths)}")
    return lengths.pop()


def ff_transmit(ch: FfChannelSpec, x1, x2, x3, rng: np.random.Generator):
    """One use of the finite-field channel per symbol.

    Noise for receivers 0, 1, 2 is drawn in that order from ``rng``.
    """
    f = ch.field
    xs = [f.check(np.atleast_1d(x)) for x in (x1, x2, x3)]
    n = _same_length(xs)
    ys = []
    for j in NODES:
        i, k = others(j)
        z = rng.choice(f.q, size=n, p=ch.noise[j].probabilities)
        y = f.add(f.add(f.mul(ch.gains[i, j], xs[i]), f.mul(ch.gains[k, j], xs[k])), z)
        ys.append(np.atleast_1d(y))
    return tuple(ys)


@dataclass(frozen=True)
class ReceiverPhases:
    """Phases of the links into one receiver; ``theta[i]`` is link ``i -> receiver``."""

    receiver: int
    theta: np.ndarray

    def rotation(self, sender: int) -> np.ndarray:
        return np.exp(1j * self.theta[sender])


@dataclass(frozen=True)
class PhaseRealization:
    """``theta[i, j, t]`` in ``[0, 2pi)`` for every link and channel use.

    Decoders receive only :meth:`view` of their own receiver.
    """

    theta: np.ndarray

    def view(self, receiver: int) -> ReceiverPhases:
        th = self.theta[:, receiver, :].copy()
        th[receiver] = np.nan
        th.setflags(write=False)
        return ReceiverPhases(receiver, th)


@dataclass(frozen=True)
class TestHook:
    """Fixed phases and/or noise for deterministic tests. Not for simulations.

    ``phases`` broadcasts to ``(3, 3, n)`` and ``noise`` to ``(3, n)``;
    ``None`` means sample as usual.
    """

    __test__ = False

    phases: Optional[np.ndarray] = None
    noise: Optional[np.ndarray] = None


def awgn_transmit(
    ch: AwgnChannelSpec,
    x1,
    x2,
    x3,
    rng: np.random.Generator,
    test_hook: Optional[TestHook] = None,
):
    """One block over the phase-fading AWGN channel.

    Phases ``(3, 3, n)`` are drawn first, then noise ``(3, n)`` for
    receivers 0, 1, 2.  Returns ``((y1, y2, y3), PhaseRealization)``.
    """
    xs = [np.atleast_1d(np.asarray(x, dtype=complex)) for x in (x1, x2, x3)]
    n = _same_length(xs)
    hook = test_hook or TestHook()
    if hook.phases is None:
        theta = rng.uniform(0.0, 2.0 * np.pi, size=(3, 3, n))
    else:
        theta = np.mod(np.broadcast_to(np.asarray(hook.phases, dtype=float), (3, 3, n)), 2 * np.pi)
    if hook.noise is None:
        scale = np.sqrt(ch.noise_powers / 2.0)[:, None]
        z = scale * (rng.standard_normal((3, n)) + 1j * rng.standard_normal((3, n)))
    else:
        z = np.broadcast_to(np.asarray(hook.noise, dtype=complex), (3, n))
    theta = np.array(theta)
    for i in NODES:
        theta[i, i] = 0.0
    theta.setflags(write=False)

    g = ch.gain_magnitudes
    ys = []
    for j in NODES:
        i, k = others(j)
        y = (
            g[i, j] * np.exp(1j * theta[i, j]) * xs[i]
            + g[k, j] * np.exp(1j * theta[k, j]) * xs[k]
            + z[j]
        )
        ys.append(y)
    return tuple(ys), PhaseRealization(theta)


def avg_power(x) -> float:
    """Mean of ``|x[t]|**2``."""
    x = np.asarray(x)
    if x.size == 0:
        raise EmptyInput("average power of an empty vector")
    return float(np.mean(np.abs(x) ** 2))
