import json
import math

import numpy as np
import pytest

import ising_proptest as ip


def test_single_edge_correlation():
    m = ip.exact_correlations(2, [(0, 1)], 0.5)
    assert m.shape == (2, 2)
    assert m[0, 1] == pytest.approx(math.tanh(0.5), abs=1e-14)


def test_weights_follow_input_order():
    m = ip.exact_correlations(3, [(1, 2), (0, 1)], 0.5, weights=[-1.0, 2.0])
    assert m[1, 2] == pytest.approx(-math.tanh(0.5), abs=1e-14)
    assert m[0, 1] == pytest.approx(math.tanh(1.0), abs=1e-14)


def test_log_partition_single_edge():
    assert ip.log_partition_function(2, [(0, 1)], 0.3) == pytest.approx(math.log(4 * math.cosh(0.3)))


def test_sample_is_deterministic_and_valid():
    a = ip.sample(4, [(0, 1), (1, 2)], 0.6, 500, seed=3)
    b = ip.sample(4, [(0, 1), (1, 2)], 0.6, 500, seed=3)
    assert a.shape == (500, 4)
    assert a.dtype == np.int8
    assert np.array_equal(a, b)
    assert set(np.unique(a)) <= {-1, 1}


def test_tests_on_triangle_data():
    spins = ip.sample(5, [(0, 1), (1, 2), (0, 2)], 0.8, 5000, seed=11)
    assert ip.cycle_test(spins, 0.8, 0.8)["psi"] == 1
    assert ip.connectivity_test(spins, 0.8)["psi"] == 0
    report = ip.fast_cycle_test(spins, 0.8, 1.0)
    assert set(report) >= {"psi", "rho", "forest", "weights"}


def test_constants():
    assert ip.tau(1000, 100, 0.05) == pytest.approx(0.14634347616995558, abs=1e-15)
    assert ip.clique_threshold(3, 0.5) == pytest.approx(0.61497945897012515, abs=1e-13)
    assert ip.T_general(1.0, 1.0, 2) == pytest.approx(9.6806935192124623e-5, rel=1e-12)


def test_experiment_csv_is_deterministic():
    cfg = {
        "family": {"kind": "path_chord", "chord": [0, 2]},
        "test": {"kind": "cycle"},
        "sweep": {"d": [6], "n": [500], "theta": [0.5, 3.0]},
        "trials": 10,
        "master_seed": 5,
    }
    a = ip.run_experiment(json.dumps(cfg))
    assert a == ip.run_experiment(json.dumps(cfg))
    assert a.splitlines()[0].startswith("d,n,theta,Theta,trials")
    assert ip.run_experiment(json.dumps(cfg), phase=True).splitlines()[0] == "theta,type1,type2,lb_verdict,ub_verdict"


def test_bad_config_raises():
    with pytest.raises(ValueError):
        ip.run_experiment("{not json")


def test_oracle_suite_passes():
    rows = ip.run_oracle_suite("edge_addition")
    assert rows and all(r["passed"] for r in rows)
