import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from threeway.discrete_info import JointPmf, Pmf, entropy, ff_mac_joint, mutual_information
from threeway.errors import AlphabetMismatch, AxisOverlap, InvalidPmf, ZeroGain
from threeway.galois import build_field

H_011 = 0.49992  # -0.89 log2 0.89 - 0.11 log2 0.11, evaluated by hand


def bsc_joint(eps):
    return JointPmf(np.array([[0.5 * (1 - eps), 0.5 * eps], [0.5 * eps, 0.5 * (1 - eps)]]), ("A", "B"))


def test_entropy_examples():
    assert entropy([0.5, 0.5]) == 1.0
    assert entropy([1.0, 0.0]) == 0.0
    assert entropy([0.89, 0.11]) == pytest.approx(H_011, abs=1e-5)


def test_mutual_information_examples():
    indep = JointPmf(np.full((2, 2), 0.25))
    assert mutual_information(indep, [0], [1]) == pytest.approx(0.0, abs=1e-15)
    same = JointPmf(np.array([[0.5, 0.0], [0.0, 0.5]]))
    assert mutual_information(same, [0], [1]) == pytest.approx(1.0)
    assert mutual_information(bsc_joint(0.11), "A", "B") == pytest.approx(1 - H_011, abs=1e-5)


def test_invalid_inputs():
    with pytest.raises(InvalidPmf):
        Pmf([0.5, 0.6])
    with pytest.raises(InvalidPmf):
        entropy([-0.1, 1.1])
    with pytest.raises(InvalidPmf):
        JointPmf(np.full((2, 2), 0.3))
    with pytest.raises(AxisOverlap):
        mutual_information(bsc_joint(0.1), [0], [0, 1])


def test_ff_mac_joint_examples():
    gf2 = build_field(2)
    j = ff_mac_joint(gf2, (1, 1), [1.0, 0.0])
    # brute force over the four input pairs: Y = Xi xor Xj is a uniform bit
    assert mutual_information(j, ["Xi", "Xj"], ["Yk"]) == pytest.approx(1.0)
    j = ff_mac_joint(gf2, (1, 1), [0.5, 0.5])
    assert mutual_information(j, ["Xi", "Xj"], ["Yk"]) == pytest.approx(0.0, abs=1e-12)
    gf4 = build_field(2, 2)
    j = ff_mac_joint(gf4, (1, 1), [0.5, 0.5, 0.0, 0.0])
    assert mutual_information(j, ["Xi", "Xj"], ["Yk"]) == pytest.approx(1.0)


def test_ff_mac_joint_errors():
    gf4 = build_field(2, 2)
    with pytest.raises(ZeroGain):
        ff_mac_joint(gf4, (0, 1), Pmf.uniform(4))
    with pytest.raises(AlphabetMismatch):
        ff_mac_joint(gf4, (1, 1), Pmf.uniform(2))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(0, 1), min_size=1, max_size=12).filter(lambda v: sum(v) > 1e-3))
def test_entropy_bounds(weights):
    p = np.array(weights) / np.sum(weights)
    p = p / p.sum()
    if abs(p.sum() - 1) > 1e-12:
        return
    h = entropy(p)
    assert -1e-12 <= h <= np.log2(len(p)) + 1e-12


def test_entropy_extremes():
    for k in (2, 3, 7, 16):
        assert entropy(Pmf.uniform(k)) == pytest.approx(np.log2(k))
        assert entropy(Pmf.point(k, k - 1)) == 0.0


def random_joint(rng, shape):
    w = rng.random(shape) ** 3
    return JointPmf(w / w.sum())


def test_chain_rule_random_joints():
    rng = np.random.default_rng(5)
    for _ in range(100):
        shape = tuple(rng.integers(2, 5, size=3))
        j = random_joint(rng, shape)
        lhs = mutual_information(j, [0], [1], [2]) + mutual_information(j, [0], [2])
        assert lhs == pytest.approx(mutual_information(j, [0], [1, 2]), abs=1e-9)


def test_mac_identities_on_random_channels():
    rng = np.random.default_rng(2024)
    for _ in range(200):
        p, m = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3)][rng.integers(6)]
        f = build_field(p, m)
        gains = rng.integers(1, f.q, size=2)
        z = rng.random(f.q) ** 2
        z /= z.sum()
        z = Pmf(z / z.sum()) if abs(z.sum() - 1) <= 1e-12 else Pmf(np.round(z, 15) / np.round(z, 15).sum())
        target = np.log2(f.q) - entropy(z)
        j = ff_mac_joint(f, gains, z)
        assert mutual_information(j, ["Xi", "Xj"], ["Yk"]) == pytest.approx(target, abs=1e-9)
        assert mutual_information(j, ["Xi"], ["Yk"], ["Xj"]) == pytest.approx(target, abs=1e-9)
        assert mutual_information(j, ["Xj"], ["Yk"], ["Xi"]) == pytest.approx(target, abs=1e-9)
