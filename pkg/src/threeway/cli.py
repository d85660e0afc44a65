"""Command-line entry point.

Exit codes: 0 success, 1 config error, 2 budget exceeded, 3 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

import numpy as np

from .channels import channel_from_config
from .engine import (
    capacity_report,
    check_superposition,
    config_from_json,
    monte_carlo,
    rate_sweep,
    write_csv,
    write_superposition_csv,
)
from .errors import BudgetExceeded, ConfigError, InvariantViolation

EXIT_OK, EXIT_CONFIG, EXIT_BUDGET, EXIT_INVARIANT = 0, 1, 2, 3


def _load(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc


def _range(text: str, with_count: bool = False):
    parts = text.split(":")
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise ConfigError(f"bad range {text!r}") from None
    if with_count:
        if len(vals) != 3 or vals[2] < 1 or vals[2] != int(vals[2]):
            raise ConfigError(f"expected start:stop:count, got {text!r}")
        return np.linspace(vals[0], vals[1], int(vals[2])).tolist()
    if len(vals) != 2 or vals[0] > vals[1]:
        raise ConfigError(f"expected lo:hi, got {text!r}")
    return tuple(vals)


def _emit(obj: dict, out: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_capacity(args) -> int:
    ch = channel_from_config(_load(args.config))
    _emit(capacity_report(ch), args.out)
    return EXIT_OK


def _sim_config(args):
    raw = _load(args.config)
    if args.seed is not None:
        raw["seed"] = args.seed
    if args.trials is not None:
        raw["trials"] = args.trials
    if getattr(args, "threads", None) is not None:
        raw["threads"] = args.threads
    return config_from_json(raw)


def cmd_simulate(args) -> int:
    cfg = _sim_config(args)
    res = monte_carlo(cfg)
    if not 0 <= res.errors_any <= res.trials or not res.ci[0] <= res.pe_hat <= res.ci[1]:
        raise InvariantViolation(f"inconsistent result: {res.to_json()}")
    write_csv([res], args.out)
    if args.json:
        _emit(res.to_json(include_timing=True), args.json)
    print(f"{cfg.scheme}: P_e = {res.pe_hat:.4g} [{res.ci[0]:.4g}, {res.ci[1]:.4g}] over {res.trials} trials")
    return EXIT_OK


def cmd_sweep(args) -> int:
    cfg = _sim_config(args)
    results = rate_sweep(cfg, _range(args.rates, with_count=True))
    write_csv(results, args.out)
    for r in results:
        print(f"R={r.rate_nominal:.4g} (realized {r.rate_realized:.4g}): P_e = {r.pe_hat:.4g}")
    return EXIT_OK


def cmd_check_superposition(args) -> int:
    rows, ok = check_superposition(_range(args.g12), _range(args.g23), args.grid, args.spacing)
    if args.out:
        write_superposition_csv(rows, args.out)
    worst = min(rows, key=lambda r: r.margin)
    print(f"{len(rows)} points, smallest margin {worst.margin:.3g} at g12={worst.g12:.4g}, g23={worst.g23:.4g}")
    print("verdict:", "pass" if ok else "fail")
    return EXIT_OK if ok else EXIT_INVARIANT


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="threeway", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("capacity", help="closed-form regions and equal-rate capacities")
    c.add_argument("--config", required=True)
    c.add_argument("--out")
    c.set_defaults(func=cmd_capacity)

    s = sub.add_parser("simulate", help="Monte Carlo error rate of one configuration")
    s.add_argument("--config", required=True)
    s.add_argument("--out", required=True, help="CSV file")
    s.add_argument("--json", help="also write the full result as JSON")
    s.add_argument("--seed", type=int)
    s.add_argument("--trials", type=int)
    s.add_argument("--threads", type=int)
    s.set_defaults(func=cmd_simulate)

    w = sub.add_parser("sweep", help="error rate over a grid of equal rates")
    w.add_argument("--config", required=True)
    w.add_argument("--rates", required=True, help="start:stop:count")
    w.add_argument("--out", required=True)
    w.add_argument("--seed", type=int)
    w.add_argument("--trials", type=int)
    w.add_argument("--threads", type=int)
    w.set_defaults(func=cmd_sweep)

    k = sub.add_parser("check-superposition", help="grid check of the superposition rate")
    k.add_argument("--g12", default="0.01:100")
    k.add_argument("--g23", default="0.01:100")
    k.add_argument("--grid", type=int, default=200)
    k.add_argument("--spacing", choices=("log", "linear"), default="log")
    k.add_argument("--out")
    k.set_defaults(func=cmd_check_superposition)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
