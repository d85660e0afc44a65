"""Monte Carlo orchestration, capacity reports and result persistence."""

from __future__ import annotations

import csv
import json
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

import numpy as np
from scipy.stats import beta

from .channels import NODES, AwgnChannelSpec, FfChannelSpec, channel_from_config, classify, others
from .codecs import coop_ops, coop_rate_bounds, run_coop, run_noncoop
from .errors import BudgetExceeded, ConfigError, IncompatibleScheme
from .regions import (
    awgn_inner,
    awgn_outer,
    c_r,
    c_ss,
    equal_rate_max,
    ff_outer,
    log2_1p,
    optimal_alpha,
    r_triple_prime,
    reciprocal_order,
)
from .seeding import trial_seed

log = logging.getLogger(__name__)

SCHEMES = ("noncoop_ff", "noncoop_awgn", "coop_double_index", "coop_superposition")
DEFAULT_OP_BUDGET = 10**10
CSV_COLUMNS = (
    "scheme",
    "n",
    "B",
    "rate_nominal",
    "rate_realized",
    "trials",
    "errors_any",
    "pe_hat",
    "ci_lo",
    "ci_hi",
    "seed",
    "wall_ms",
)

Channel = Union[FfChannelSpec, AwgnChannelSpec]


def size_for_rate(n: int, rate: float) -> int:
    """Codebook size ``round(2^(n R))``, at least 1."""
    return max(1, int(round(2.0 ** (n * rate))))


@dataclass(frozen=True)
class SimConfig:
    """One Monte Carlo experiment.

    Rates are given either as ``sizes`` (codebook sizes per node) or as a
    nominal equal ``rate`` from which sizes are derived.
    """

    channel: Channel
    scheme: str
    n: int
    sizes: tuple[int, int, int]
    trials: int = 100
    seed: int = 0
    B: int = 1
    alpha: Optional[float] = None
    rate: Optional[float] = None
    threads: int = 1
    op_budget: float = DEFAULT_OP_BUDGET
    relay: Optional[int] = None

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise IncompatibleScheme(f"unknown scheme {self.scheme!r}; choose from {SCHEMES}")
        if self.scheme == "noncoop_ff" and not isinstance(self.channel, FfChannelSpec):
            raise IncompatibleScheme("noncoop_ff needs a finite-field channel")
        if self.scheme != "noncoop_ff" and not isinstance(self.channel, AwgnChannelSpec):
            raise IncompatibleScheme(f"{self.scheme} needs an AWGN channel")
        sizes = tuple(int(M) for M in self.sizes)
        if len(sizes) != 3 or min(sizes) < 1:
            raise ConfigError(f"need three codebook sizes >= 1, got {self.sizes}")
        object.__setattr__(self, "sizes", sizes)
        if self.cooperative and len(set(sizes)) != 1:
            raise IncompatibleScheme("cooperative schemes need equal codebook sizes")
        if self.scheme == "coop_superposition":
            if self.alpha is None or not 0.0 <= self.alpha <= 1.0:
                raise ConfigError(f"coop_superposition needs alpha in [0, 1], got {self.alpha}")
        if self.n < 1 or self.trials < 1 or self.B < 1 or self.threads < 1:
            raise ConfigError("n, trials, B and threads must all be >= 1")
        if self.relay is not None and self.relay not in NODES:
            raise ConfigError(f"relay must be 0, 1 or 2, got {self.relay}")

    @property
    def cooperative(self) -> bool:
        return self.scheme.startswith("coop_")

    @property
    def ops(self) -> int:
        """Elementary metric evaluations the whole experiment needs."""
        if self.cooperative:
            return coop_ops(self.n, self.sizes[0], self.B) * self.trials
        M = self.sizes
        pairs = sum(M[i] * M[j] for k in NODES for i, j in [others(k)])
        return pairs * self.n * self.trials

    @property
    def rate_nominal(self) -> float:
        if self.rate is not None:
            return float(self.rate)
        return float(np.log2(self.sizes[0])) / self.n

    @property
    def rate_realized(self) -> float:
        return float(np.log2(self.sizes[0])) / self.n

    def with_rate(self, rate: float) -> "SimConfig":
        M = size_for_rate(self.n, rate)
        return _replace(self, sizes=(M, M, M), rate=float(rate))

    def to_json(self) -> dict:
        out = dict(self.channel.to_config())
        out.update(
            scheme=self.scheme,
            n=self.n,
            sizes=list(self.sizes),
            trials=self.trials,
            seed=self.seed,
        )
        if self.cooperative:
            out["B"] = self.B
        if self.rate is not None:
            out["rate"] = self.rate
        if self.alpha is not None:
            out["alpha"] = self.alpha
        if self.relay is not None:
            out["relay"] = self.relay
        return out


def _replace(cfg: SimConfig, **kw) -> SimConfig:
    d = {f: getattr(cfg, f) for f in cfg.__dataclass_fields__}
    d.update(kw)
    return SimConfig(**d)


def config_from_json(cfg: dict) -> SimConfig:
    """Parse a simulation config: channel fields plus scheme parameters."""
    try:
        ch = channel_from_config(cfg)
        scheme = cfg.get("scheme") or ("noncoop_ff" if cfg.get("model") == "ff" else "noncoop_awgn")
        n = int(cfg["n"])
        if "sizes" in cfg:
            sizes = tuple(int(M) for M in cfg["sizes"])
            rate = None
        elif "rates" in cfg:
            sizes = tuple(size_for_rate(n, r) for r in cfg["rates"])
            rate = None
        elif "rate" in cfg:
            rate = float(cfg["rate"])
            sizes = (size_for_rate(n, rate),) * 3
        else:
            raise ConfigError("config needs one of 'rate', 'rates' or 'sizes'")
        alpha = cfg.get("alpha")
        if scheme == "coop_superposition" and alpha is None:
            s = ch.permute(reciprocal_order(ch)).snr
            alpha = optimal_alpha(s[0, 1], s[1, 2])
        return SimConfig(
            channel=ch,
            scheme=scheme,
            n=n,
            sizes=sizes,
            trials=int(cfg.get("trials", 100)),
            seed=int(cfg.get("seed", 0)),
            B=int(cfg.get("B", 1)),
            alpha=None if alpha is None else float(alpha),
            rate=rate,
            threads=int(cfg.get("threads", 1)),
            op_budget=float(cfg.get("op_budget", DEFAULT_OP_BUDGET)),
            relay=cfg.get("relay"),
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"malformed simulation config: {exc}") from exc


def clopper_pearson(k: int, n: int, level: float = 0.95) -> tuple[float, float]:
    """Exact binomial confidence interval for ``k`` successes in ``n`` trials."""
    a = 1.0 - level
    lo = 0.0 if k == 0 else float(beta.ppf(a / 2, k, n - k + 1))
    hi = 1.0 if k == n else float(beta.ppf(1 - a / 2, k + 1, n - k))
    return lo, hi


@dataclass(frozen=True)
class SimResult:
    """Aggregated outcome of :func:`monte_carlo`.

    ``errors[(i, j)]`` counts trials where receiver ``i`` got source ``j``
    wrong (original node labels, 0-based).  ``wall_ms`` is excluded from
    comparisons and from :meth:`to_json` by default, so results are a pure
    function of the config.
    """

    config: SimConfig = field(compare=False)
    trials: int
    errors_any: int
    errors: dict
    events: dict
    pe_hat: float
    ci: tuple[float, float]
    rate_nominal: float
    rate_realized: float
    seed: int
    relay_perm: tuple[int, int, int] = (0, 1, 2)
    wall_ms: float = field(default=0.0, compare=False)

    def to_json(self, include_timing: bool = False) -> dict:
        out = {
            "config": self.config.to_json(),
            "trials": self.trials,
            "errors_any": self.errors_any,
            "errors": {f"{i}->{j}": c for (i, j), c in sorted(self.errors.items())},
            "events": dict(sorted(self.events.items())),
            "pe_hat": self.pe_hat,
            "ci": list(self.ci),
            "rate_nominal": self.rate_nominal,
            "rate_realized": self.rate_realized,
            "seed": self.seed,
            "relay_perm": list(self.relay_perm),
        }
        if include_timing:
            out["wall_ms"] = self.wall_ms
        return out

    def dumps(self) -> str:
        """Canonical JSON text (timing excluded)."""
        return json.dumps(self.to_json(), sort_keys=True)

    def csv_row(self) -> dict:
        return {
            "scheme": self.config.scheme,
            "n": self.config.n,
            "B": self.config.B if self.config.cooperative else "",
            "rate_nominal": repr(self.rate_nominal),
            "rate_realized": repr(self.rate_realized),
            "trials": self.trials,
            "errors_any": self.errors_any,
            "pe_hat": repr(self.pe_hat),
            "ci_lo": repr(self.ci[0]),
            "ci_hi": repr(self.ci[1]),
            "seed": self.seed,
            "wall_ms": f"{self.wall_ms:.1f}",
        }


def _coop_perm(cfg: SimConfig) -> tuple[int, int, int]:
    if cfg.relay is not None:
        r = cfg.relay
        return (r,) + others(r)
    if classify(cfg.channel)["reciprocal"]:
        return reciprocal_order(cfg.channel)
    return (0, 1, 2)


def _run_trial(cfg: SimConfig, channel: Channel, trial: int) -> tuple[dict, dict]:
    seed = trial_seed(cfg.seed, trial)
    if cfg.cooperative:
        scheme = "double_index" if cfg.scheme == "coop_double_index" else "superposition"
        tr = run_coop(channel, cfg.n, cfg.sizes[0], cfg.B, seed, scheme=scheme, alpha=cfg.alpha)
        return tr.errors, tr.event_counts
    out = run_noncoop(channel, cfg.n, cfg.sizes, seed)
    return out.errors, {}


def monte_carlo(cfg: SimConfig) -> SimResult:
    """Run ``cfg.trials`` independent trials and aggregate error counts.

    Trial ``t`` uses the seed derived from ``(cfg.seed, t)`` only, so the
    result does not depend on ``cfg.threads``.

    Raises
    ------
    BudgetExceeded
        If the experiment needs more than ``cfg.op_budget`` metric evaluations.
    """
    if cfg.ops > cfg.op_budget:
        raise BudgetExceeded(f"experiment needs {cfg.ops:.3g} metric operations, budget is {cfg.op_budget:.3g}")
    perm = _coop_perm(cfg) if cfg.cooperative else (0, 1, 2)
    channel = cfg.channel.permute(perm) if perm != (0, 1, 2) else cfg.channel

    t0 = time.perf_counter()
    if cfg.threads == 1:
        outcomes = [_run_trial(cfg, channel, t) for t in range(cfg.trials)]
    else:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            outcomes = list(pool.map(lambda t: _run_trial(cfg, channel, t), range(cfg.trials)))
    wall_ms = 1e3 * (time.perf_counter() - t0)

    errors = {(perm[i], perm[j]): 0 for i in NODES for j in others(i)}
    events: dict[str, int] = {}
    any_count = 0
    for errs, evs in outcomes:
        any_count += any(errs.values())
        for (i, j), e in errs.items():
            errors[(perm[i], perm[j])] += int(e)
        for name, c in evs.items():
            events[name] = events.get(name, 0) + c
    pe = any_count / cfg.trials
    log.debug("%s n=%d M=%s: %d/%d errors", cfg.scheme, cfg.n, cfg.sizes, any_count, cfg.trials)
    return SimResult(
        config=cfg,
        trials=cfg.trials,
        errors_any=any_count,
        errors=errors,
        events=events,
        pe_hat=pe,
        ci=clopper_pearson(any_count, cfg.trials),
        rate_nominal=cfg.rate_nominal,
        rate_realized=cfg.rate_realized,
        seed=cfg.seed,
        relay_perm=tuple(perm),
        wall_ms=wall_ms,
    )


def rate_sweep(cfg: SimConfig, rates: Sequence[float]) -> list[SimResult]:
    """One :func:`monte_carlo` per nominal equal rate, in grid order."""
    rates = [float(r) for r in rates]
    if not rates:
        raise ConfigError("rate grid is empty")
    if any(b < a for a, b in zip(rates, rates[1:])):
        raise ConfigError("rate grid must be ascending")
    return [monte_carlo(cfg.with_rate(r)) for r in rates]


def write_csv(results: Iterable[SimResult], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
        w.writeheader()
        for r in results:
            w.writerow(r.csv_row())


# ----------------------------------------------------------------------
# Closed-form reports
# ----------------------------------------------------------------------
def capacity_report(ch: Channel) -> dict:
    """Regions, equal-rate values and classification for one channel."""
    if isinstance(ch, FfChannelSpec):
        region = ff_outer(ch)
        return {
            "model": "ff",
            "channel": ch.to_config(),
            "capacity_region": region.to_json(),
            "equal_rate_capacity": equal_rate_max(region),
        }
    flags = classify(ch)
    outer, inner = awgn_outer(ch), awgn_inner(ch)
    rep = {
        "model": "awgn",
        "channel": ch.to_config(),
        "classification": flags,
        "outer": outer.to_json(),
        "inner": inner.to_json(),
        "equal_rate_outer": equal_rate_max(outer),
        "equal_rate_inner": equal_rate_max(inner),
    }
    if flags["sender_symmetrical"]:
        rep["c_ss"] = c_ss(ch)
    if flags["reciprocal"]:
        rep["c_r"] = c_r(ch)
        rep["relay_order"] = list(reciprocal_order(ch))
        bounds = coop_rate_bounds(ch)
        rep["coop_rate_bounds"] = [{"label": lbl, "bound": b} for lbl, b in bounds]
        rep["coop_equal_rate"] = min(b for _, b in bounds)
    return rep


@dataclass(frozen=True)
class SuperpositionRow:
    g12: float
    g23: float
    r_triple_prime: float
    half_sum: float

    @property
    def margin(self) -> float:
        return self.r_triple_prime - self.half_sum


def _grid(lo: float, hi: float, size: int, spacing: str) -> np.ndarray:
    if spacing == "log":
        return np.geomspace(lo, hi, size)
    if spacing == "linear":
        return np.linspace(lo, hi, size)
    raise ConfigError(f"spacing must be 'log' or 'linear', got {spacing!r}")


def check_superposition(
    g12_range: Sequence[float] = (0.01, 100.0),
    g23_range: Sequence[float] = (0.01, 100.0),
    grid: int = 200,
    spacing: str = "log",
    tol: float = 1e-9,
) -> tuple[list[SuperpositionRow], bool]:
    """Compare ``R'''`` with ``0.5 log2(1 + g12 + g23)`` on a grid with ``g23 <= g12``.

    Returns the evaluated rows and the verdict ``all(margin >= -tol)``.
    """
    if grid < 2:
        raise ConfigError("grid size must be >= 2")
    if min(g12_range) <= 0 or min(g23_range) <= 0:
        raise ConfigError("SNR ranges must be positive")
    rows = []
    for g12 in _grid(*g12_range, grid, spacing):
        for g23 in _grid(*g23_range, grid, spacing):
            if g23 > g12:
                continue
            rows.append(
                SuperpositionRow(float(g12), float(g23), r_triple_prime(g12, g23), 0.5 * log2_1p(g12 + g23))
            )
    return rows, all(r.margin >= -tol for r in rows)


def write_superposition_csv(rows: Iterable[SuperpositionRow], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["g12", "g23", "r_triple_prime", "half_sum", "margin"])
        for r in rows:
            w.writerow([repr(r.g12), repr(r.g23), repr(r.r_triple_prime), repr(r.half_sum), repr(r.margin)])


__all__ = [
    "SimConfig",
    "SimResult",
    "capacity_report",
    "check_superposition",
    "clopper_pearson",
    "config_from_json",
    "monte_carlo",
    "rate_sweep",
    "size_for_rate",
    "write_csv",
]
