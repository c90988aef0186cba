import math

from coopnc.model import StrategyId
from coopnc.montecarlo import SweepResult

RDF, PDF, LNC, DPC = StrategyId.RDF, StrategyId.PDF, StrategyId.LNC_RDF, StrategyId.DPC_NC_PDF


def combined_se(a, b, attr):
    return math.hypot(getattr(a, attr), getattr(b, attr))


def strict_gap(high, low, mean_attr, se_attr, n_se=3.0):
    """True when high exceeds low by more than n_se combined standard errors."""
    return getattr(high, mean_attr) - getattr(low, mean_attr) > n_se * combined_se(high, low, se_attr)


def check_throughput_ordering(result: SweepResult, n_se=3.0) -> dict:
    """
    DPC-NC-PDF > LNC-RDF > PDF >= RDF in mean network throughput at every
    SNR point, strict gaps larger than n_se combined standard errors.
    """
    failures = []
    for snr_db in result.snr_grid_db:
        rdf, pdf, lnc, dpc = (result.entry(snr_db, s) for s in (RDF, PDF, LNC, DPC))
        if not strict_gap(dpc, lnc, "mean_network_throughput", "se_network_throughput", n_se):
            failures.append(f"{snr_db:g} dB: dpc-nc-pdf vs lnc-rdf")
        if not strict_gap(lnc, pdf, "mean_network_throughput", "se_network_throughput", n_se):
            failures.append(f"{snr_db:g} dB: lnc-rdf vs pdf")
        if pdf.mean_network_throughput < rdf.mean_network_throughput:
            failures.append(f"{snr_db:g} dB: pdf vs rdf")
    return {"passed": not failures, "failures": failures}


def check_outage_ordering(result: SweepResult, min_snr_db=5.0, n_se=3.0) -> dict:
    """
    NC outage below the matching classical outage (LNC vs RDF, DPC vs PDF)
    wherever the classical estimate exceeds 10 / n_trials.
    """
    failures, checked = [], 0
    floor = 10 / result.n_trials
    for snr_db in result.snr_grid_db:
        if snr_db < min_snr_db:
            continue
        for nc, classical in ((LNC, RDF), (DPC, PDF)):
            a, b = result.entry(snr_db, nc), result.entry(snr_db, classical)
            if b.outage_probability <= floor:
                continue
            checked += 1
            if not b.outage_probability - a.outage_probability > n_se * math.hypot(a.se_outage, b.se_outage):
                failures.append(f"{snr_db:g} dB: {nc.value} vs {classical.value}")
    return {"passed": not failures, "checked": checked, "failures": failures}


def check_monotonicity(result: SweepResult, n_se=3.0) -> dict:
    failures = []
    for strategy in result.strategies:
        curve = result.curve(strategy)
        for a, b in zip(curve, curve[1:]):
            if b.mean_network_throughput < a.mean_network_throughput - 1e-12:
                failures.append(f"{strategy.value}: throughput drops at {b.snr_db:g} dB")
            if a.outage_probability is not None and \
                    b.outage_probability - a.outage_probability > n_se * math.hypot(a.se_outage, b.se_outage):
                failures.append(f"{strategy.value}: outage rises at {b.snr_db:g} dB")
    return {"passed": not failures, "failures": failures}
