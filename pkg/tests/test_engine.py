import csv
import itertools
import math

import numpy as np
import pytest
from scipy.stats import binomtest

from threeway.channels import AwgnChannelSpec, FfChannelSpec
from threeway.discrete_info import Pmf
from threeway.engine import (
    CSV_COLUMNS,
    SimConfig,
    capacity_report,
    check_superposition,
    clopper_pearson,
    config_from_json,
    monte_carlo,
    rate_sweep,
    size_for_rate,
    write_csv,
)
from threeway.errors import BudgetExceeded, ConfigError, IncompatibleScheme
from threeway.galois import build_field
from threeway.regions import awgn_inner, awgn_outer, c_r, equal_rate_max

PAPER = AwgnChannelSpec.reciprocal(6, 8, 1)
GF2_CLEAN = FfChannelSpec(build_field(2), np.ones((3, 3), dtype=int), (Pmf.point(2),) * 3)


def test_size_for_rate():
    assert size_for_rate(16, 0.25) == 16
    assert size_for_rate(16, 0.625) == 1024
    assert size_for_rate(10, 0.0) == 1
    assert size_for_rate(6, 1.7) == round(2**10.2)


def test_single_message_never_fails():
    for ch, scheme in [(GF2_CLEAN, "noncoop_ff"), (PAPER, "noncoop_awgn"), (PAPER, "coop_double_index")]:
        res = monte_carlo(SimConfig(ch, scheme, 4, (1, 1, 1), trials=20, seed=1, B=2))
        assert res.pe_hat == 0.0 and res.errors_any == 0


def test_noiseless_gf2_inside_capacity():
    res = monte_carlo(SimConfig(GF2_CLEAN, "noncoop_ff", 16, (16, 16, 16), trials=10_000, seed=42))
    assert res.pe_hat <= 0.05


def test_determinism_and_threads():
    cfg = SimConfig(PAPER, "coop_double_index", 6, (8, 8, 8), trials=30, seed=3, B=2)
    a = monte_carlo(cfg)
    b = monte_carlo(cfg)
    c = monte_carlo(SimConfig(PAPER, "coop_double_index", 6, (8, 8, 8), trials=30, seed=3, B=2, threads=4))
    assert a == b == c
    assert a.dumps() == b.dumps() == c.dumps()


def test_config_errors():
    with pytest.raises(IncompatibleScheme):
        SimConfig(GF2_CLEAN, "coop_double_index", 4, (2, 2, 2))
    with pytest.raises(IncompatibleScheme):
        SimConfig(PAPER, "noncoop_ff", 4, (2, 2, 2))
    with pytest.raises(IncompatibleScheme):
        SimConfig(PAPER, "coop_double_index", 4, (2, 4, 2))
    with pytest.raises(IncompatibleScheme):
        SimConfig(PAPER, "warp", 4, (2, 2, 2))
    with pytest.raises(ConfigError):
        SimConfig(PAPER, "coop_superposition", 4, (2, 2, 2))
    with pytest.raises(ConfigError):
        SimConfig(PAPER, "noncoop_awgn", 4, (2, 2, 2), trials=0)
    with pytest.raises(BudgetExceeded):
        monte_carlo(SimConfig(PAPER, "coop_double_index", 20, (4096,) * 3, trials=100, B=4))


def test_config_from_json():
    raw = {
        "model": "awgn",
        "snr": [[None, 6, 8], [6, None, 1], [8, 1, None]],
        "scheme": "coop_superposition",
        "n": 12,
        "B": 4,
        "rate": 0.5,
        "trials": 500,
        "seed": 42,
    }
    cfg = config_from_json(raw)
    assert cfg.sizes == (64, 64, 64) and cfg.B == 4 and cfg.seed == 42
    assert 0 < cfg.alpha <= 1
    raw["alpha"] = 0.6
    assert config_from_json(raw).alpha == 0.6
    del raw["rate"]
    with pytest.raises(ConfigError):
        config_from_json(raw)


def test_relabeling_restores_original_labels():
    # the relay here is node 2 (the node outside the weakest pair 0-1)
    ch = AwgnChannelSpec.reciprocal(1, 8, 6)
    res = monte_carlo(SimConfig(ch, "coop_double_index", 4, (16, 16, 16), trials=40, seed=2, B=2))
    assert res.relay_perm[0] == 2
    assert set(res.errors) == {(i, j) for i in range(3) for j in range(3) if i != j}
    assert all(0 <= c <= res.trials for c in res.errors.values())


def test_sweep_single_point_equals_monte_carlo():
    cfg = SimConfig(GF2_CLEAN, "noncoop_ff", 16, (1, 1, 1), trials=200, seed=9)
    (row,) = rate_sweep(cfg, [0.25])
    assert row == monte_carlo(cfg.with_rate(0.25))


def test_sweep_finite_field_threshold():
    # 1024^2 codeword pairs per receiver need more than the default operation budget
    cfg = SimConfig(GF2_CLEAN, "noncoop_ff", 16, (1, 1, 1), trials=1000, seed=42, op_budget=1e11)
    lo, hi = rate_sweep(cfg, [0.25, 0.625])
    assert lo.pe_hat < 0.05 and hi.pe_hat >= 0.5
    with pytest.raises(ConfigError):
        rate_sweep(cfg, [])
    with pytest.raises(ConfigError):
        rate_sweep(cfg, [0.5, 0.25])


@pytest.mark.slow
def test_sweep_cooperative_trend():
    # n=6 rather than 10: the relay table at rate 1.7 and n=10 would hold 2^34 codewords
    cfg = SimConfig(PAPER, "coop_double_index", 6, (1, 1, 1), trials=60, seed=7, B=4)
    rows = rate_sweep(cfg, [0.5, 1.1, 1.7])
    pe = [r.pe_hat for r in rows]
    assert pe[0] <= pe[1] < pe[2]
    assert pe[2] >= 0.2


def test_csv_output(tmp_path):
    res = monte_carlo(SimConfig(GF2_CLEAN, "noncoop_ff", 8, (4, 4, 4), trials=50, seed=0))
    path = tmp_path / "r.csv"
    write_csv([res], path)
    with open(path) as fh:
        rows = list(csv.DictReader(fh))
    assert tuple(rows[0]) == CSV_COLUMNS
    assert int(rows[0]["errors_any"]) == res.errors_any
    assert float(rows[0]["pe_hat"]) == res.pe_hat


def test_capacity_report_examples():
    rep = capacity_report(PAPER)
    assert rep["equal_rate_outer"] == pytest.approx(1.5, abs=1e-9)
    assert rep["equal_rate_inner"] == pytest.approx(1.0, abs=1e-9)
    assert rep["c_r"] == pytest.approx(1.5, abs=1e-9)
    assert rep["equal_rate_outer"] == equal_rate_max(awgn_outer(PAPER))
    assert rep["equal_rate_inner"] == equal_rate_max(awgn_inner(PAPER))
    assert rep["c_r"] == c_r(PAPER)
    assert "c_ss" not in rep

    ff = capacity_report(GF2_CLEAN)
    assert ff["equal_rate_capacity"] == 0.5
    assert all(c["bound"] == 1.0 and sum(c["coeffs"]) == 2 for c in ff["capacity_region"]["constraints"])

    sym = capacity_report(AwgnChannelSpec.reciprocal(2, 2, 2))
    assert sym["c_ss"] == pytest.approx(0.5 * math.log2(5))
    assert sym["c_r"] == pytest.approx(0.5 * math.log2(5))


def test_check_superposition_examples():
    rows, ok = check_superposition((6, 6), (1, 1), grid=2)
    assert ok and rows[0].margin == pytest.approx(math.log2(64 / 15) - 1.5)
    rows, ok = check_superposition((1e-6, 1e-2), (1e-6, 1e-2), grid=20)
    diag = [r for r in rows if r.g12 == r.g23]
    margins = [r.margin for r in sorted(diag, key=lambda r: r.g12)]
    assert all(m >= 0 for m in margins) and margins[0] < 1e-5
    rows, ok = check_superposition()
    assert ok and all(r.g23 <= r.g12 for r in rows)
    with pytest.raises(ConfigError):
        check_superposition(grid=1)


def test_clopper_pearson_matches_binomtest():
    for k, n in [(0, 10), (3, 10), (10, 10), (17, 500), (250, 500)]:
        ci = binomtest(k, n).proportion_ci(confidence_level=0.95, method="exact")
        lo, hi = clopper_pearson(k, n)
        assert lo == pytest.approx(ci.low, abs=1e-12) and hi == pytest.approx(ci.high, abs=1e-12)
        assert lo <= k / n <= hi


RIGGED_SIZES = (2, 1, 1)


def exact_rigged_error(eps):
    """P_e of the n=1 scheme over GF(2) with Bern(eps) noise and sizes (2, 1, 1).

    Codebook letters, messages and noise are all enumerated.  Each receiver
    picks the lexicographically first maximizer of P(z = y - x_i - x_j); a
    tie against a wrong hypothesis counts as an error.
    """
    pz = (1 - eps, eps)
    sizes = RIGGED_SIZES
    total = 0.0
    for letters in itertools.product((0, 1), repeat=sum(sizes)):
        cb = [letters[:2], letters[2:3], letters[3:4]]
        for w in itertools.product(*(range(M) for M in sizes)):
            x = [cb[a][w[a]] for a in range(3)]
            for z in itertools.product((0, 1), repeat=3):
                pr = 2.0 ** -sum(sizes) / np.prod(sizes) * np.prod([pz[v] for v in z])
                fail = False
                for k in range(3):
                    i, j = [a for a in range(3) if a != k]
                    y = x[i] ^ x[j] ^ z[k]
                    score = {(a, b): pz[y ^ cb[i][a] ^ cb[j][b]] for a in range(sizes[i]) for b in range(sizes[j])}
                    best = max(score.values())
                    winners = [h for h, s in score.items() if s == best]
                    if any(h != (w[i], w[j]) for h in winners):
                        fail = True
                total += pr * fail
    return total


def rigged_channel(eps):
    return FfChannelSpec(build_field(2), np.ones((3, 3), dtype=int), (Pmf([1 - eps, eps]),) * 3)


def test_rigged_channel_oracle():
    # identical codewords always tie; distinct ones fail iff noise hits receiver 1 or 2
    eps = 0.1
    assert exact_rigged_error(eps) == pytest.approx(0.5 + 0.5 * (1 - (1 - eps) ** 2))
    res = monte_carlo(SimConfig(rigged_channel(eps), "noncoop_ff", 1, RIGGED_SIZES, trials=4000, seed=0))
    assert res.ci[0] <= exact_rigged_error(eps) <= res.ci[1]


def test_ci_coverage_on_rigged_channel():
    ch = rigged_channel(0.3)
    truth = exact_rigged_error(0.3)
    covered = 0
    for meta in range(500):
        res = monte_carlo(SimConfig(ch, "noncoop_ff", 1, RIGGED_SIZES, trials=30, seed=10_000 + meta))
        covered += res.ci[0] <= truth <= res.ci[1]
    assert covered / 500 >= 0.90
