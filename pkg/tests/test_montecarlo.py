import math

import numpy as np
import pytest

from coopnc.allocator import OptimizerSettings, optimize_dpc, optimize_lnc
from coopnc.model import (LINKS, STRATEGIES, ChannelRealization, FadingProfile, LinkId, OutageSpec, SnrPoint,
                          StrategyId)
from coopnc.montecarlo import (THROUGHPUT_U1, CdfResult, MonteCarloPlan, collect_samples, empirical_cdf, run_trial,
                               sample_channel, simulate_trials, sweep)
from coopnc.rates import USERS, UserId, rate_report

FAST = OptimizerSettings(grid_points_per_axis=7, refine_rounds=2)


def small_plan(**kwargs):
    values = dict(n_trials=6, master_seed=2008, snr_grid_db=(0.0, 10.0, 20.0), optimizer=FAST,
                  outage=OutageSpec(1.0))
    values.update(kwargs)
    return MonteCarloPlan(**values)


def test_plan_validation():
    plan = small_plan(strategies=(StrategyId.DPC_NC_PDF, StrategyId.RDF, StrategyId.RDF))
    assert plan.strategies == (StrategyId.RDF, StrategyId.DPC_NC_PDF)
    for kwargs in [dict(n_trials=0), dict(master_seed=-1), dict(master_seed=2 ** 64),
                   dict(snr_grid_db=()), dict(snr_grid_db=(10.0, 0.0)), dict(snr_grid_db=(0.0, 0.0)),
                   dict(snr_grid_db=(math.inf,)), dict(strategies=())]:
        with pytest.raises(ValueError):
            small_plan(**kwargs)


def test_sample_channel_is_deterministic(symmetric_profile):
    a = sample_channel(symmetric_profile, 17, 2008)
    assert a == sample_channel(symmetric_profile, 17, 2008)
    assert a != sample_channel(symmetric_profile, 18, 2008)
    assert a != sample_channel(symmetric_profile, 17, 2009)
    assert len(set(a.gains)) == len(LINKS)


def test_sample_channel_scales_with_variance(symmetric_profile):
    strong = FadingProfile.from_mapping({LinkId.S1_D1: 4.0})
    for trial in range(5):
        base = sample_channel(symmetric_profile, trial, 1)
        scaled = sample_channel(strong, trial, 1)
        assert scaled.gain(LinkId.S1_D1) == pytest.approx(2 * base.gain(LinkId.S1_D1), rel=1e-12)
        assert scaled.gain(LinkId.S2_D2) == base.gain(LinkId.S2_D2)


def test_run_trial_zero_channel():
    reports = run_trial(ChannelRealization.zero(), SnrPoint(10.0), optimizer=FAST)
    assert set(reports) == set(STRATEGIES)
    for report in reports.values():
        assert report.network_throughput == 0.0


def test_run_trial_matches_single_calls(symmetric_profile):
    snr = SnrPoint(10.0)
    for trial in range(3):
        ch = sample_channel(symmetric_profile, trial, 99)
        reports = run_trial(ch, snr, optimizer=FAST)
        assert reports[StrategyId.PDF].network_throughput >= reports[StrategyId.RDF].network_throughput
        assert reports[StrategyId.RDF] == rate_report(StrategyId.RDF, ch, snr)
        lnc = optimize_lnc(ch, snr, FAST)
        assert reports[StrategyId.LNC_RDF].network_throughput == lnc.objective
        assert reports[StrategyId.LNC_RDF].alloc == lnc.best_alloc
        dpc = optimize_dpc(ch, snr, FAST)
        assert reports[StrategyId.DPC_NC_PDF].network_throughput == dpc.objective
        assert reports[StrategyId.DPC_NC_PDF].ordering == dpc.best_ordering


def test_single_trial_sweep(symmetric_profile):
    plan = small_plan(n_trials=1)
    result = sweep(plan, symmetric_profile)
    samples = simulate_trials(plan, symmetric_profile, range(1))
    assert result.n_trials == 1
    assert len(result.entries) == 3 * len(STRATEGIES)
    for k, snr_db in enumerate(plan.snr_grid_db):
        for j, strategy in enumerate(plan.strategies):
            entry = result.entry(snr_db, strategy)
            assert entry.mean_network_throughput == samples[0, k, j, 0]
            assert entry.se_network_throughput == 0.0
            assert all(entry.se_user_throughput[u] == 0.0 for u in USERS)
            assert entry.outage_probability in (0.0, 1.0)
            assert entry.se_outage == 0.0


def test_sweep_is_reproducible(symmetric_profile):
    plan = small_plan()
    assert sweep(plan, symmetric_profile) == sweep(plan, symmetric_profile)
    np.testing.assert_array_equal(collect_samples(plan, symmetric_profile, workers=1),
                                  collect_samples(plan, symmetric_profile, workers=2))


def test_trials_do_not_depend_on_chunking(symmetric_profile):
    plan = small_plan()
    whole = simulate_trials(plan, symmetric_profile, range(plan.n_trials))
    parts = np.concatenate([simulate_trials(plan, symmetric_profile, range(0, 2)),
                            simulate_trials(plan, symmetric_profile, range(2, plan.n_trials))])
    np.testing.assert_array_equal(whole, parts)


def test_sweep_per_trial_monotone_in_snr(symmetric_profile):
    plan = small_plan(snr_grid_db=(0.0, 4.0, 8.0, 12.0, 16.0, 20.0))
    samples = simulate_trials(plan, symmetric_profile, range(plan.n_trials))
    # warm starts carry every optimum to the next SNR point
    assert np.all(np.diff(samples[..., 0], axis=1) >= -1e-12)

    result = sweep(plan, symmetric_profile)
    for strategy in result.strategies:
        curve = result.curve(strategy)
        assert all(b.mean_network_throughput >= a.mean_network_throughput - 1e-12 for a, b in zip(curve, curve[1:]))
    for strategy in (StrategyId.RDF, StrategyId.PDF):
        curve = result.curve(strategy)
        assert all(b.outage_probability <= a.outage_probability for a, b in zip(curve, curve[1:]))


def test_sweep_without_outage_spec(symmetric_profile):
    result = sweep(small_plan(outage=None, strategies=(StrategyId.RDF,)), symmetric_profile)
    assert result.strategies == (StrategyId.RDF,)
    assert all(e.outage_probability is None and e.se_outage is None for e in result.entries)


def test_outage_uses_strategy_threshold(symmetric_profile):
    plan = small_plan(n_trials=8, outage=OutageSpec(0.5))
    samples = simulate_trials(plan, symmetric_profile, range(plan.n_trials))
    result = sweep(plan, symmetric_profile)
    for k, snr_db in enumerate(plan.snr_grid_db):
        for j, strategy in enumerate(plan.strategies):
            threshold = plan.outage.threshold(strategy)
            expected = np.mean(samples[:, k, j, 3] < threshold)
            assert result.entry(snr_db, strategy).outage_per_user[UserId.USER1] == expected


def test_outage_matches_cdf_of_throughput(symmetric_profile):
    plan = small_plan(n_trials=10, snr_grid_db=(8.0, 10.0), outage=OutageSpec(1.5))
    result = sweep(plan, symmetric_profile)
    cdfs = empirical_cdf(plan, symmetric_profile, 10.0)
    # orthogonal schemes: I < r/(W/2) is the same event as I/2 < r/W
    for strategy in plan.strategies:
        expected = cdfs[strategy].probability_below(plan.outage.threshold_nc)
        assert result.entry(10.0, strategy).outage_probability == expected


def test_more_trials_extend_the_same_draws(symmetric_profile):
    short = collect_samples(small_plan(n_trials=4), symmetric_profile)
    long = collect_samples(small_plan(n_trials=8), symmetric_profile)
    np.testing.assert_array_equal(long[:4], short)


def test_cdf_result():
    cdf = CdfResult(StrategyId.RDF, [0.3, 0.1, 0.2, 0.2])
    np.testing.assert_array_equal(cdf.values, [0.1, 0.2, 0.2, 0.3])
    np.testing.assert_array_equal(cdf.ordinates, [0.25, 0.5, 0.75, 1.0])
    assert cdf.evaluate(0.2) == 0.75
    assert cdf.probability_below(0.2) == 0.25
    assert cdf.evaluate(math.inf) == 1.0
    assert cdf.evaluate(-1e-300) == 0.0
    assert cdf.median() == pytest.approx(0.2)
    assert cdf == CdfResult(StrategyId.RDF, [0.2, 0.2, 0.1, 0.3])
    assert cdf != CdfResult(StrategyId.RDF, [0.3, 0.1, 0.2, 0.25])
    assert cdf != CdfResult(StrategyId.PDF, cdf.values)
    assert cdf != CdfResult(StrategyId.RDF, [0.1, 0.2, 0.3])


def test_empirical_cdf(symmetric_profile):
    single = empirical_cdf(small_plan(n_trials=1), symmetric_profile, 10.0)
    for cdf in single.values():
        assert cdf.n == 1
        np.testing.assert_array_equal(cdf.ordinates, [1.0])

    cdfs = empirical_cdf(small_plan(n_trials=12), symmetric_profile, 10.0)
    assert list(cdfs) == list(STRATEGIES)
    for cdf in cdfs.values():
        assert np.all(np.diff(cdf.values) >= 0)
        assert np.all(np.diff(cdf.ordinates) > 0)
        assert cdf.evaluate(math.inf) == 1.0
        assert cdf.evaluate(-1e-300) == 0.0
    with pytest.raises(ValueError):
        empirical_cdf(small_plan(), symmetric_profile, math.nan)


def test_cdf_follows_the_sweep_walk(symmetric_profile):
    plan = small_plan(n_trials=6)
    samples = collect_samples(plan, symmetric_profile)
    cdfs = empirical_cdf(plan, symmetric_profile, 10.0)
    for j, strategy in enumerate(plan.strategies):
        assert cdfs[strategy] == CdfResult(strategy, samples[:, 1, j, THROUGHPUT_U1])

    # off the grid, the walk stops at the requested SNR
    between = collect_samples(small_plan(n_trials=6, snr_grid_db=(0.0, 5.0)), symmetric_profile)
    cdfs = empirical_cdf(plan, symmetric_profile, 5.0)
    for j, strategy in enumerate(plan.strategies):
        assert cdfs[strategy] == CdfResult(strategy, between[:, 1, j, THROUGHPUT_U1])


def test_channel_draws_match_golden_file(symmetric_profile, golden):
    lines = []
    for trial in range(3):
        ch = sample_channel(symmetric_profile, trial, 2008)
        for link, h in zip(LINKS, ch.gains):
            lines.append(f"{trial} {link.value} {h.real!r} {h.imag!r}\n")
    golden("channel_draws.txt", "".join(lines).encode())


@pytest.mark.slow
def test_rayleigh_sampler_statistics(symmetric_profile):
    g = np.array([sample_channel(symmetric_profile, trial, 2008).gain2(LinkId.S1_D1) for trial in range(100000)])
    assert 0.99 <= g.mean() <= 1.01
    assert np.mean(g < 1.0) == pytest.approx(1 - math.exp(-1), abs=0.005)


@pytest.mark.slow
def test_users_are_statistically_symmetric(symmetric_profile):
    plan = MonteCarloPlan(10000, 2008, (10.0,))
    result = sweep(plan, symmetric_profile, workers=4)
    for strategy in STRATEGIES:
        entry = result.entry(10.0, strategy)
        gap = entry.mean_user_throughput[UserId.USER1] - entry.mean_user_throughput[UserId.USER2]
        se = math.hypot(entry.se_user_throughput[UserId.USER1], entry.se_user_throughput[UserId.USER2])
        assert abs(gap) <= 3 * se


@pytest.mark.slow
def test_lnc_median_beats_rdf(symmetric_profile):
    plan = MonteCarloPlan(10000, 2008, (10.0,), strategies=(StrategyId.RDF, StrategyId.LNC_RDF))
    cdfs = empirical_cdf(plan, symmetric_profile, 10.0, workers=4)
    assert cdfs[StrategyId.LNC_RDF].median() > cdfs[StrategyId.RDF].median()
