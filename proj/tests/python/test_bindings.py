import math

import pytest

plsmode = pytest.importorskip("plsmode")


def test_version():
    assert plsmode.__version__


def test_special_functions():
    assert plsmode.exp_integral_ei(-1.0) == pytest.approx(-0.21938393439552029, abs=1e-12)
    w = plsmode.w_function(1.0, 1)
    assert w.value == pytest.approx(0.5963473623231940, abs=1e-12)
    assert w.method == plsmode.WMethod.closed_form
    assert float(plsmode.w_function(2.0, 0)) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        plsmode.w_function(-1.0, 2)


def test_config_validation():
    with pytest.raises(ValueError):
        plsmode.SystemConfig(n_antennas=2, mode=3)
    cfg = plsmode.SystemConfig()
    assert cfg.n_antennas == 4 and cfg.n_users == 10
    assert cfg.eav_snr() == pytest.approx(0.01)


def test_outage_and_capacity():
    cfg = plsmode.SystemConfig(mode=2)
    closed = plsmode.outage_probability(0.5, cfg)
    quad = plsmode.outage_probability_quadrature(0.5, cfg)
    assert closed == pytest.approx(quad, abs=1e-8)

    solved = plsmode.secrecy_outage_capacity(cfg)
    assert solved.achieved_outage == pytest.approx(0.05, abs=1e-9)
    assert plsmode.sum_secrecy_outage_capacity(cfg) == pytest.approx(2 * solved.rate)

    assert plsmode.interception_interference_limited(10) == pytest.approx(1 / 11)


def test_mode_selection():
    cfg = plsmode.SystemConfig()
    d = plsmode.ams_select(cfg, plsmode.SelectStrategy.grid_scan, 0.01)
    assert 1 <= d.chosen <= 4
    best = d.per_mode_sum_capacity[d.chosen - 1]
    assert best == max(v for v in d.per_mode_sum_capacity if not math.isnan(v))
    f1 = plsmode.fixed_mode(cfg, plsmode.Scheme.FTM1)
    assert f1.chosen == 1
    assert best >= f1.per_mode_sum_capacity[0]


def test_simulator_determinism_and_agreement():
    cfg = plsmode.SystemConfig(mode=2)
    rate = plsmode.secrecy_outage_capacity(cfg).rate
    a = plsmode.run_trials(cfg, 20000, rates=[rate], seed=7, workers=1)
    b = plsmode.run_trials(cfg, 20000, rates=[rate], seed=7, workers=2)
    assert a.empirical_outage == b.empirical_outage
    assert a.mean_sum_secrecy == b.mean_sum_secrecy
    # loose 5-sigma agreement with the analytic target at this trial count
    sigma = math.sqrt(0.05 * 0.95 / a.pair_count)
    assert abs(a.empirical_outage[0] - 0.05) < 5 * sigma

    strict = plsmode.run_trials(cfg, 1000, seed=7, strict_scheduling=True)
    assert strict.trials == 1000
