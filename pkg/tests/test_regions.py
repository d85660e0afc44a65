import itertools
import json

import numpy as np
import pytest
from scipy.optimize import linprog

from threeway.channels import AwgnChannelSpec, FfChannelSpec
from threeway.discrete_info import Pmf, entropy
from threeway.errors import AlphaOutOfRange, NotReciprocal, NotSenderSymmetrical, UnboundedRegion
from threeway.galois import build_field
from threeway.regions import (
    Constraint,
    RatePolytope,
    awgn_inner,
    awgn_outer,
    c_r,
    c_ss,
    contains,
    equal_rate_max,
    ff_outer,
    is_subset,
    optimal_alpha,
    r_triple_prime,
    reciprocal_order,
    superposition_max_numeric,
    superposition_rates,
    vertices,
)

PAPER = AwgnChannelSpec.reciprocal(6, 8, 1)
PAIRS = RatePolytope.from_pairs([((1, 1, 0), 1.0), ((0, 1, 1), 1.0), ((1, 0, 1), 1.0)])


def bounds_by_label(p):
    return {c.label: c.bound for c in p.constraints}


def random_spec(rng):
    return AwgnChannelSpec(np.where(np.eye(3, dtype=bool), np.nan, 10 ** rng.uniform(-2, 3, (3, 3))))


def test_ff_outer_examples():
    gf2 = build_field(2)
    p = ff_outer(FfChannelSpec(gf2, np.ones((3, 3), dtype=int), (Pmf.point(2),) * 3))
    assert sorted(c.coeffs for c in p.constraints) == [(0, 1, 1), (1, 0, 1), (1, 1, 0)]
    assert all(c.bound == 1.0 for c in p.constraints)
    p = ff_outer(FfChannelSpec(gf2, np.ones((3, 3), dtype=int), (Pmf.uniform(2),) * 3))
    assert all(c.bound == 0.0 for c in p.constraints)
    gf4 = build_field(2, 2)
    p = ff_outer(FfChannelSpec(gf4, np.ones((3, 3), dtype=int), (Pmf([0.5, 0.5, 0, 0]),) * 3))
    assert all(c.bound == pytest.approx(1.0) for c in p.constraints)


def test_ff_outer_matches_entropy_oracle():
    rng = np.random.default_rng(0)
    for p, m in [(2, 1), (3, 1), (2, 2), (5, 1)]:
        f = build_field(p, m)
        pmfs = []
        for _ in range(3):
            w = rng.random(f.q)
            pmfs.append(Pmf(w / w.sum()))
        poly = ff_outer(FfChannelSpec(f, np.ones((3, 3), dtype=int), tuple(pmfs)))
        for k, c in enumerate(poly.constraints):
            assert c.coeffs[k] == 0
            assert c.bound == np.log2(f.q) - entropy(pmfs[k])


def test_awgn_outer_paper_example():
    b = bounds_by_label(awgn_outer(PAPER))
    assert b["R1+R3<=log2(1+g12+g32)"] == pytest.approx(3.0)
    assert b["R1+R2<=log2(1+g13+g23)"] == pytest.approx(np.log2(10))
    assert b["R2+R3<=log2(1+g21+g31)"] == pytest.approx(np.log2(15))
    assert b["R1<=log2(1+g12+g13)"] == pytest.approx(np.log2(15))
    assert b["R2<=log2(1+g21+g23)"] == pytest.approx(3.0)
    assert b["R3<=log2(1+g31+g32)"] == pytest.approx(np.log2(10))


def test_awgn_region_limits():
    tiny = awgn_outer(AwgnChannelSpec.reciprocal(1e-12, 1e-12, 1e-12))
    assert max(c.bound for c in tiny.constraints) < 1e-11
    ones = awgn_outer(AwgnChannelSpec.reciprocal(1, 1, 1))
    assert all(c.bound == pytest.approx(np.log2(3)) for c in ones.constraints)
    threes = awgn_inner(AwgnChannelSpec.reciprocal(3, 3, 3))
    for c in threes.constraints:
        assert c.bound == pytest.approx(2.0 if sum(c.coeffs) == 1 else np.log2(7))
    huge = awgn_inner(AwgnChannelSpec.reciprocal(1e12, 1e12, 1e12))
    assert min(c.bound for c in huge.constraints) > 39


def test_awgn_inner_paper_example():
    inner = awgn_inner(PAPER)
    assert len(inner.constraints) == 9
    b = bounds_by_label(inner)
    assert b["R2<=log2(1+g23)"] == pytest.approx(1.0)
    assert b["R3<=log2(1+g32)"] == pytest.approx(1.0)
    assert equal_rate_max(inner) == pytest.approx(1.0, abs=1e-12)
    assert equal_rate_max(awgn_outer(PAPER)) == pytest.approx(1.5, abs=1e-12)


def test_contains_examples():
    assert contains(awgn_inner(PAPER), (0, 0, 0))
    assert contains(PAIRS, (0.5, 0.5, 0.5), tol=1e-9)
    assert contains(awgn_inner(PAPER), (1.0, 0.4, 0.4))
    assert not contains(PAIRS, (0.6, 0.5, 0.5))
    assert not contains(PAIRS, (-0.1, 0, 0))


def test_vertices_examples():
    v = set(vertices(PAIRS))
    for expect in [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (0.5, 0.5, 0.5)]:
        assert expect in v
    cube = RatePolytope.from_pairs([((1, 0, 0), 1.0), ((0, 1, 0), 1.0), ((0, 0, 1), 1.0)])
    assert set(vertices(cube)) == set(itertools.product((0.0, 1.0), repeat=3))
    with pytest.raises(UnboundedRegion):
        vertices(RatePolytope.from_pairs([((1, 0, 0), 2.0)]))


def test_vertices_against_linprog():
    rng = np.random.default_rng(1)
    for _ in range(50):
        ch = random_spec(rng)
        for poly in (awgn_inner(ch), awgn_outer(ch)):
            V = np.array(vertices(poly))
            for _ in range(5):
                c = rng.normal(size=3)
                lp = linprog(-c, A_ub=poly.A, b_ub=poly.b, bounds=[(0, None)] * 3, method="highs")
                assert -lp.fun == pytest.approx(np.max(V @ c), abs=1e-7)


def test_is_subset_examples():
    assert is_subset(PAIRS, PAIRS)
    twos = RatePolytope.from_pairs([((1, 1, 0), 2.0), ((0, 1, 1), 2.0), ((1, 0, 1), 2.0)])
    assert is_subset(PAIRS, twos)
    assert not is_subset(twos, PAIRS)
    assert is_subset(awgn_inner(PAPER), awgn_outer(PAPER))


def test_inner_inside_outer_random():
    rng = np.random.default_rng(2)
    for _ in range(200):
        ch = random_spec(rng)
        assert is_subset(awgn_inner(ch), awgn_outer(ch), tol=1e-9)


def test_equal_rate_max_examples():
    twos = RatePolytope.from_pairs([((1, 1, 0), 2.0), ((0, 1, 1), 2.0), ((1, 0, 1), 2.0)])
    assert equal_rate_max(twos) == 1.0


def test_c_ss_examples():
    assert c_ss(AwgnChannelSpec.sender_symmetrical(2, 2, 2)) == pytest.approx(0.5 * np.log2(5))
    assert c_ss(AwgnChannelSpec.sender_symmetrical(4, 1, 9)) == pytest.approx(0.79248, abs=1e-5)
    assert c_ss(AwgnChannelSpec.sender_symmetrical(1e-14, 1e-14, 1e-14)) == pytest.approx(0.0, abs=1e-13)
    with pytest.raises(NotSenderSymmetrical):
        c_ss(PAPER)


def test_c_r_examples():
    assert c_r(PAPER) == pytest.approx(1.5, abs=1e-12)
    assert c_r(AwgnChannelSpec.reciprocal(3, 3, 3)) == pytest.approx(0.5 * np.log2(7))
    assert c_r(AwgnChannelSpec.reciprocal(10, 2, 3)) == pytest.approx(0.5 * np.log2(6))
    with pytest.raises(NotReciprocal):
        c_r(AwgnChannelSpec.sender_symmetrical(4, 1, 9))


def test_reciprocal_order_sorts_pairs():
    rng = np.random.default_rng(3)
    for _ in range(50):
        g = rng.uniform(0.1, 10, 3)
        ch = AwgnChannelSpec.reciprocal(*g)
        s = ch.permute(reciprocal_order(ch)).snr
        assert s[1, 2] <= s[0, 1] <= s[0, 2]


def test_equal_rate_identities_random():
    rng = np.random.default_rng(4)
    for _ in range(200):
        ss = AwgnChannelSpec.sender_symmetrical(*(10 ** rng.uniform(-2, 3, 3)))
        target = c_ss(ss)
        assert equal_rate_max(awgn_inner(ss)) == pytest.approx(target, abs=1e-9)
        assert equal_rate_max(awgn_outer(ss)) == pytest.approx(target, abs=1e-9)
        rec = AwgnChannelSpec.reciprocal(*(10 ** rng.uniform(-2, 3, 3)))
        assert equal_rate_max(awgn_outer(rec)) == pytest.approx(c_r(rec), abs=1e-9)


def test_equal_rate_max_relabel_invariant():
    rng = np.random.default_rng(5)
    for _ in range(30):
        ch = random_spec(rng)
        base_o, base_i = equal_rate_max(awgn_outer(ch)), equal_rate_max(awgn_inner(ch))
        for perm in itertools.permutations(range(3)):
            p = ch.permute(perm)
            assert equal_rate_max(awgn_outer(p)) == pytest.approx(base_o, abs=1e-12)
            assert equal_rate_max(awgn_inner(p)) == pytest.approx(base_i, abs=1e-12)


def test_superposition_rate_examples():
    assert superposition_rates(6, 1, 0.0)[0] == 0.0
    r1, r2, sb = superposition_rates(6, 1, 1.0)
    assert r1 == pytest.approx(np.log2(7))
    assert r2 == pytest.approx(np.log2(8 / 7))
    for a in (0.0, 0.3, 1.0):
        assert superposition_rates(6, 1, a)[2] == pytest.approx(3.0)
    with pytest.raises(AlphaOutOfRange):
        superposition_rates(6, 1, 1.2)


def test_r_triple_prime_examples():
    assert r_triple_prime(6, 1) == pytest.approx(np.log2(64 / 15))
    assert r_triple_prime(1, 1) == pytest.approx(np.log2(1.8))
    assert r_triple_prime(1e-12, 1e-12) == pytest.approx(0.0, abs=1e-11)


def test_optimal_alpha_equalizes():
    for g12, g23 in [(6, 1), (1, 1), (100, 0.01), (0.5, 0.2)]:
        a = optimal_alpha(g12, g23)
        r1, r2, _ = superposition_rates(g12, g23, a)
        assert r1 == pytest.approx(r2, abs=1e-12)
        assert r1 == pytest.approx(r_triple_prime(g12, g23), abs=1e-12)


def test_superposition_numeric_maximization():
    rng = np.random.default_rng(6)
    for _ in range(40):
        g12 = 10 ** rng.uniform(-2, 2)
        g23 = g12 * rng.uniform(0, 1)
        _, best = superposition_max_numeric(g12, g23)
        assert best == pytest.approx(r_triple_prime(g12, g23), abs=1e-6)


def test_region_json():
    d = json.loads(json.dumps(awgn_outer(PAPER).to_json()))
    assert d["equal_rate"] == pytest.approx(1.5)
    assert {"coeffs", "bound", "label"} <= set(d["constraints"][0])
    assert len(d["vertices"]) > 0


def test_constraint_validation():
    with pytest.raises(ValueError):
        Constraint((0, 0, 0), 1.0, "empty")
    with pytest.raises(ValueError):
        Constraint((1, 0, 0), -1.0, "negative")
    with pytest.raises(ValueError):
        Constraint((1, 0, 0), float("inf"), "inf")
