"""
CSV and SVG artifacts of sweeps and CDFs.

CSV is the canonical numeric output (9 significant digits, comma separated,
LF line endings, rows ordered by SNR then strategy). SVG charts are drawn
with matplotlib's SVG backend; every curve is a group whose id is
``curve-<strategy>``.
"""
import logging

import matplotlib
import numpy as np
import pandas as pd
from matplotlib.figure import Figure

from coopnc.model import STRATEGIES, StrategyId
from coopnc.montecarlo import CdfResult, SweepResult
from coopnc.rates import UserId

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = ["snr_db", "strategy", "mean_network_throughput", "se_network_throughput",
                 "mean_user_throughput", "se_user_throughput", "outage_probability"]
CDF_COLUMNS = ["strategy", "throughput", "cdf"]
FLOAT_FORMAT = "%.9g"

LABELS = {
    StrategyId.RDF: "RDF",
    StrategyId.PDF: "PDF",
    StrategyId.LNC_RDF: "Linear NC-RDF",
    StrategyId.DPC_NC_PDF: "DPC-NC-PDF",
}
STYLES = {
    StrategyId.RDF: dict(color="tab:blue", marker="o", linestyle="--"),
    StrategyId.PDF: dict(color="tab:green", marker="s", linestyle="--"),
    StrategyId.LNC_RDF: dict(color="tab:red", marker="^", linestyle="-"),
    StrategyId.DPC_NC_PDF: dict(color="tab:purple", marker="D", linestyle="-"),
}
SVG_RC = {"svg.hashsalt": "coopnc", "svg.fonttype": "none"}

PLOT_KINDS = ("throughput", "per-user", "outage")


def _cdf_mapping(result) -> dict:
    if isinstance(result, CdfResult):
        return {result.strategy: result}
    return {s: result[s] for s in STRATEGIES if s in result}


def sweep_frame(result: SweepResult) -> pd.DataFrame:
    order = {s: i for i, s in enumerate(STRATEGIES)}
    entries = sorted(result.entries, key=lambda e: (e.snr_db, order[e.strategy]))
    rows = [[e.snr_db, e.strategy.value, e.mean_network_throughput, e.se_network_throughput,
             e.mean_user_throughput[UserId.USER1], e.se_user_throughput[UserId.USER1],
             e.outage_probability if e.outage_probability is not None else np.nan]
            for e in entries]
    return pd.DataFrame(rows, columns=SWEEP_COLUMNS)


def cdf_frame(result) -> pd.DataFrame:
    frames = [pd.DataFrame({"strategy": s.value, "throughput": cdf.values, "cdf": cdf.ordinates},
                           columns=CDF_COLUMNS)
              for s, cdf in _cdf_mapping(result).items()]
    if not frames:
        return pd.DataFrame(columns=CDF_COLUMNS)
    return pd.concat(frames, ignore_index=True)


def write_csv(result, path):
    """Writes a SweepResult, a CdfResult or a strategy -> CdfResult mapping."""
    frame = sweep_frame(result) if isinstance(result, SweepResult) else cdf_frame(result)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    logger.info("Wrote %d rows to %s", len(frame), path)


def read_csv(path) -> pd.DataFrame:
    return pd.read_csv(path)


def outage_floor(n_trials: int) -> float:
    """Zero outage estimates are drawn at 1/(10 n) on the log-scale axis."""
    return 1.0 / (10 * n_trials)


def _sweep_curves(result: SweepResult, kind: str):
    for strategy in result.strategies:
        curve = result.curve(strategy)
        x = [e.snr_db for e in curve]
        if kind == "throughput":
            y = [e.mean_network_throughput for e in curve]
        elif kind == "per-user":
            y = [e.mean_user_throughput[UserId.USER1] for e in curve]
        else:
            if any(e.outage_probability is None for e in curve):
                raise ValueError("Sweep has no outage estimates, run it with an outage spec")
            floor = outage_floor(result.n_trials)
            y = [max(e.outage_probability, floor) for e in curve]
        yield strategy, x, y


def render_svg(result, path, kind: str = "throughput"):
    """
    Line chart of a sweep (``kind`` throughput, per-user or outage) or of
    per-user throughput CDFs. One polyline per strategy.
    """
    if isinstance(result, SweepResult):
        if not result.entries:
            raise ValueError("Nothing to plot, the sweep result is empty")
        if kind not in PLOT_KINDS:
            raise ValueError(f"Unknown plot kind '{kind}', choose one of: {', '.join(PLOT_KINDS)}")
        curves = list(_sweep_curves(result, kind))
        xlabel = "SNR [dB]"
        ylabel = {"throughput": "Network throughput [b/s/Hz]",
                  "per-user": "Per user throughput [b/s/Hz]",
                  "outage": "Outage probability"}[kind]
    else:
        cdfs = _cdf_mapping(result)
        if not cdfs or any(cdf.n == 0 for cdf in cdfs.values()):
            raise ValueError("Nothing to plot, the CDF result is empty")
        curves = [(s, cdf.values, cdf.ordinates) for s, cdf in cdfs.items()]
        kind = "cdf"
        xlabel, ylabel = "Per user throughput [b/s/Hz]", "CDF"

    with matplotlib.rc_context(SVG_RC):
        fig = Figure(figsize=(6.4, 4.8))
        ax = fig.add_subplot()
        for strategy, x, y in curves:
            style = dict(STYLES[strategy])
            if kind == "cdf":
                style["marker"] = None
            ax.plot(x, y, label=LABELS[strategy], gid=f"curve-{strategy.value}", **style)
        if kind == "outage":
            ax.set_yscale("log")
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        ax.grid(True, which="both", alpha=0.3)
        ax.legend()
        fig.tight_layout()
        fig.savefig(path, format="svg", metadata={"Date": None})
    logger.info("Wrote %s chart to %s", kind, path)
