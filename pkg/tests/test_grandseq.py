import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from herzlab import (
    EpsGrid,
    GrandSequenceParams,
    Sequence,
    eps_factor,
    grand_seq_norm,
    lp_seq_norm,
    nesting_report,
)
from herzlab.errors import BadExponent, BadParams
from herzlab.oracles import delta_sequence_value, grand_seq_dense


def test_lp_basics():
    assert lp_seq_norm(Sequence(np.array([1.0])), 3.7) == 1.0
    assert lp_seq_norm(Sequence(np.array([1.0, 1.0])), 2.0) == pytest.approx(math.sqrt(2))
    assert lp_seq_norm(Sequence(np.array([3.0, 4.0])), 2.0) == pytest.approx(5.0)
    with pytest.raises(BadExponent):
        lp_seq_norm(Sequence(np.array([1.0])), 0.5)


def test_sequence_index_sets():
    Sequence(np.array([0.0, 1.0]), offset=0, index_set="N")
    with pytest.raises(BadParams):
        Sequence(np.array([1.0]), offset=-1, index_set="N")
    with pytest.raises(BadParams):
        Sequence(np.array([1.0]), offset=0, index_set="Z+")
    # leading zeros outside the index set are fine
    Sequence(np.array([0.0, 0.0, 1.0]), offset=-1, index_set="Z+")


def test_sequence_json_roundtrip():
    s = Sequence(np.array([1.0, -2.0, 0.5]), offset=-4)
    assert np.array_equal(Sequence.from_json_dict(s.to_json_dict()).values,
                          s.values)


def test_zero_sequence():
    params = GrandSequenceParams(p=2.0, theta=1.0)
    assert grand_seq_norm(Sequence(np.zeros(5)), params) == 0.0


def test_delta_sequence_oracle():
    val = grand_seq_norm(Sequence(np.array([1.0])),
                         GrandSequenceParams(p=1.0, theta=1.0))
    assert val == pytest.approx(delta_sequence_value(1.0, 1.0), abs=1e-6)
    assert val == pytest.approx(1.3211, abs=5e-4)


def test_theta_scaling_of_delta_value():
    v1 = grand_seq_norm(Sequence(np.array([1.0])),
                        GrandSequenceParams(p=1.0, theta=1.0))
    v2 = grand_seq_norm(Sequence(np.array([1.0])),
                        GrandSequenceParams(p=1.0, theta=2.0))
    assert v2 == pytest.approx(v1 ** 2, rel=1e-9)


def test_eps_factor_matches_delta():
    assert eps_factor(2.0, 1.5) == pytest.approx(
        delta_sequence_value(2.0, 1.5), abs=1e-6)


def test_dense_agreement_sweep():
    rng = np.random.default_rng(8)
    combos = [(p, t) for p in (1.0, 2.0, 3.0) for t in (0.5, 1.0, 2.0)]
    for i in range(60):
        n = int(rng.integers(1, 12))
        vals = rng.uniform(-2, 2, n) * 10.0 ** rng.integers(-3, 4)
        p, theta = combos[i % len(combos)]
        a = grand_seq_norm(Sequence(vals), GrandSequenceParams(p=p, theta=theta))
        b = grand_seq_dense(vals, p, theta)
        assert a == pytest.approx(b, rel=1e-6)


def test_grid_vs_denser_grid():
    rng = np.random.default_rng(9)
    dense = EpsGrid(points=2560)
    for _ in range(30):
        vals = rng.uniform(-2, 2, int(rng.integers(1, 10)))
        seq = Sequence(vals)
        a = grand_seq_norm(seq, GrandSequenceParams(p=2.0, theta=1.0))
        b = grand_seq_norm(seq, GrandSequenceParams(p=2.0, theta=1.0,
                                                    eps_grid=dense))
        assert a == pytest.approx(b, rel=1e-6)


@settings(max_examples=40, deadline=None)
@given(c=st.floats(min_value=1e-4, max_value=1e4),
       seed=st.integers(min_value=0, max_value=2**31))
def test_homogeneity(c, seed):
    rng = np.random.default_rng(seed)
    vals = rng.uniform(-2, 2, int(rng.integers(1, 10)))
    seq = Sequence(vals)
    params = GrandSequenceParams(p=2.0, theta=1.0)
    n = grand_seq_norm(seq, params)
    if n > 0:
        assert grand_seq_norm(seq.scale(c), params) == pytest.approx(c * n, rel=1e-9)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**31))
def test_support_monotone(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 10))
    vals = rng.uniform(-2, 2, n)
    params = GrandSequenceParams(p=1.5, theta=1.0)
    base = grand_seq_norm(Sequence(vals), params)
    drop = vals.copy()
    drop[rng.integers(0, n)] = 0.0
    assert grand_seq_norm(Sequence(drop), params) <= base + 1e-12


def test_sup_limit_dominated():
    params = GrandSequenceParams(p=2.0, theta=3.0)
    for j in range(-3, 4):
        seq = Sequence.from_entries({j: 1.0})
        assert grand_seq_norm(seq, params) >= 1.0


def test_nesting_chain():
    x = Sequence(0.5 ** np.arange(10))
    rep = nesting_report(x, p=2.0, theta1=1.0, theta2=2.0, eps=0.25, delta=1.0)
    assert all(math.isfinite(v) for v in rep["ratios"].values())
    # doubling the sequence doubles every norm in the chain
    rep2 = nesting_report(x.scale(2.0), 2.0, 1.0, 2.0, 0.25, 1.0)
    for key in rep["norms"]:
        assert rep2["norms"][key] == pytest.approx(2 * rep["norms"][key], rel=1e-12)
    # delta sequence: all plain norms 1, grand values are the eps factors
    repd = nesting_report(Sequence(np.array([1.0])), 1.0, 1.0, 2.0, 0.5, 1.0)
    assert repd["norms"]["lp"] == 1.0
    assert repd["norms"]["grand_theta1"] == pytest.approx(eps_factor(1.0, 1.0), rel=1e-9)
    with pytest.raises(BadParams):
        nesting_report(x, 2.0, 2.0, 1.0, 0.25, 1.0)
    with pytest.raises(BadParams):
        nesting_report(x, 2.0, 1.0, 2.0, 0.9, 1.0)


def test_eps_grid_validation():
    with pytest.raises(BadParams):
        EpsGrid(points=100)
    with pytest.raises(BadParams):
        EpsGrid(lo=1.0, hi=0.5)
