import math

import numpy as np
import pytest

from coopnc.model import (LINKS, ORDERING_PAIRS, STRATEGIES, ChannelRealization, DpcOrdering, DpcOrderingPair,
                          FadingProfile, LinkId, NormMode, OutageSpec, PowerAllocation, SnrPoint, StrategyId,
                          db_to_linear)


@pytest.mark.parametrize("snr_db, rho", [(0, 1.0), (10, 10.0), (3, 1.9952623149688795)])
def test_db_to_linear(snr_db, rho):
    assert db_to_linear(snr_db).rho == pytest.approx(rho, rel=1e-12)


@pytest.mark.parametrize("bad", [math.inf, -math.inf, math.nan])
def test_db_to_linear_rejects_non_finite(bad):
    with pytest.raises(ValueError):
        db_to_linear(bad)


@pytest.mark.parametrize("snr_db", [-20.0, -3.5, 0.0, 3.0, 12.25, 40.0])
def test_db_round_trip(snr_db):
    assert SnrPoint.from_db(snr_db).db == pytest.approx(snr_db, rel=1e-12, abs=1e-12)


def test_snr_rejects_negative():
    with pytest.raises(ValueError):
        SnrPoint(-1.0)


def test_links_and_strategies():
    assert len(LINKS) == 6
    assert LinkId.S1_S2 is not LinkId.S2_S1
    assert [link.ordinal for link in LINKS] == list(range(6))
    assert len(STRATEGIES) == 4
    assert StrategyId.parse("DPC-NC-PDF") is StrategyId.DPC_NC_PDF
    with pytest.raises(ValueError):
        StrategyId.parse("af")


def test_fading_profile():
    profile = FadingProfile.symmetric()
    assert profile.is_symmetric
    assert profile.noise_variance == 1.0
    assert all(profile.variance(link) == 1.0 for link in LINKS)

    skewed = FadingProfile.from_mapping({LinkId.S1_D1: 2.0})
    assert not skewed.is_symmetric
    assert skewed.variance(LinkId.S1_D1) == 2.0
    assert skewed.variance(LinkId.S2_D2) == 1.0


@pytest.mark.parametrize("variances, noise", [((1, 1, -1, 1, 1, 1), 1.0), ((1, 1, 0, 1, 1, 1), 1.0),
                                              ((1,) * 6, 0.0), ((1,) * 5, 1.0)])
def test_fading_profile_rejects_invalid(variances, noise):
    with pytest.raises(ValueError):
        FadingProfile(variances, noise)


def test_gain2_is_squared_modulus():
    rng = np.random.default_rng(7)
    h = rng.standard_normal(6) + 1j * rng.standard_normal(6)
    ch = ChannelRealization(tuple(h))
    for link, value in zip(LINKS, h):
        assert ch.gain2(link) == pytest.approx(abs(value) ** 2, rel=1e-12)
    assert ChannelRealization.from_gain2([3, 0, 1, 0, 1, 0]).gain2(LinkId.S1_S2) == pytest.approx(3.0)


def test_channel_swap_is_involution():
    ch = ChannelRealization.from_gain2([1, 2, 3, 4, 5, 6])
    swapped = ch.swapped()
    assert swapped.gain2(LinkId.S1_S2) == pytest.approx(2)
    assert swapped.gain2(LinkId.S1_D1) == pytest.approx(6)
    assert swapped.gain2(LinkId.S1_D2) == pytest.approx(5)
    assert swapped.swapped() == ch


def test_power_allocation_constructors():
    alloc = PowerAllocation.from_angles(0.3, 1.1)
    assert alloc.satisfies(NormMode.EQUALITY)
    assert alloc.satisfies(NormMode.INEQUALITY)

    partial = PowerAllocation.from_polar(0.5, 0.2, 0.25, 1.0)
    assert partial.norm1 == pytest.approx(0.5)
    assert partial.norm2 == pytest.approx(0.25)
    assert partial.satisfies(NormMode.INEQUALITY)
    assert not partial.satisfies(NormMode.EQUALITY)

    for corner in PowerAllocation.corners():
        assert corner.satisfies(NormMode.EQUALITY)
    assert len(set(PowerAllocation.corners())) == 4
    assert PowerAllocation.tdma() == PowerAllocation(1, 0, 0, 1)
    assert PowerAllocation.equal_split().f11 == pytest.approx(1 / math.sqrt(2))


@pytest.mark.parametrize("values", [(0.9, 0.9, 0, 1), (1, 0, 0.8, 0.8), (-0.1, 0, 1, 0), (1.5, 0, 1, 0)])
def test_power_allocation_rejects_infeasible(values):
    with pytest.raises(ValueError):
        PowerAllocation(*values)


def test_power_allocation_swap():
    alloc = PowerAllocation(0.6, 0.8, 0.0, 1.0)
    assert alloc.swapped() == PowerAllocation(1.0, 0.0, 0.8, 0.6)


def test_ordering_pairs():
    assert len(ORDERING_PAIRS) == 4
    assert len(set(ORDERING_PAIRS)) == 4
    assert DpcOrderingPair.all_pairs()[0] == DpcOrderingPair(DpcOrdering.FAVOR_D1, DpcOrdering.FAVOR_D1)
    for pair in ORDERING_PAIRS:
        assert pair.swapped().swapped() == pair
    # S1 favoring D1 becomes S2 favoring D2 after relabeling
    assert DpcOrderingPair(DpcOrdering.FAVOR_D1, DpcOrdering.FAVOR_D1).swapped() == \
        DpcOrderingPair(DpcOrdering.FAVOR_D2, DpcOrdering.FAVOR_D2)
    assert DpcOrderingPair.parse("d1,d2") == DpcOrderingPair(DpcOrdering.FAVOR_D1, DpcOrdering.FAVOR_D2)
    with pytest.raises(ValueError):
        DpcOrderingPair.parse("d1")


@pytest.mark.parametrize("rate, bandwidth", [(1.0, 1.0), (1.0, 3.0), (0.7, 1e6), (123.456, 0.1)])
def test_outage_thresholds(rate, bandwidth):
    spec = OutageSpec(rate, bandwidth)
    assert spec.threshold_orthogonal == 2 * spec.threshold_nc
    assert spec.threshold_orthogonal == pytest.approx(rate / (bandwidth / 2))
    assert spec.threshold(StrategyId.RDF) == spec.threshold_orthogonal
    assert spec.threshold(StrategyId.DPC_NC_PDF) == spec.threshold_nc


@pytest.mark.parametrize("rate, bandwidth", [(0, 1), (-1, 1), (1, 0), (1, math.inf)])
def test_outage_spec_rejects_invalid(rate, bandwidth):
    with pytest.raises(ValueError):
        OutageSpec(rate, bandwidth)
