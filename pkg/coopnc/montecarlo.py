"""
Monte Carlo estimation of average throughputs, per-user throughput CDFs and
outage probabilities over Rayleigh fading.

Each trial draws one channel realization that is shared by every strategy
and every SNR point (common random numbers). Draws come from counter-based
Philox substreams keyed by (master_seed, trial_index, link ordinal), so a
trial is reproducible on its own and results do not depend on the number of
worker processes.
"""
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np
from tqdm import tqdm

from coopnc.allocator import OptimizerSettings, optimize_dpc, optimize_lnc
from coopnc.model import (LINKS, STRATEGIES, ChannelRealization, FadingProfile, OutageSpec, SnrPoint,
                          StrategyId, db_to_linear)
from coopnc.rates import USERS, RateReport, UserId, rate_report

logger = logging.getLogger(__name__)

# per-trial sample layout on the last axis
NETWORK, THROUGHPUT_U1, THROUGHPUT_U2, MUTUAL_INFO_U1, MUTUAL_INFO_U2 = range(5)
_THROUGHPUT = {UserId.USER1: THROUGHPUT_U1, UserId.USER2: THROUGHPUT_U2}
_MUTUAL_INFO = {UserId.USER1: MUTUAL_INFO_U1, UserId.USER2: MUTUAL_INFO_U2}

MAX_SEED = 2 ** 64


@dataclass(frozen=True)
class MonteCarloPlan:
    n_trials: int
    master_seed: int
    snr_grid_db: tuple
    strategies: tuple = STRATEGIES
    optimizer: OptimizerSettings = OptimizerSettings()
    outage: OutageSpec = None

    def __post_init__(self):
        if int(self.n_trials) != self.n_trials or self.n_trials < 1:
            raise ValueError(f"n_trials must be an integer >= 1, got {self.n_trials}")
        if int(self.master_seed) != self.master_seed or not 0 <= self.master_seed < MAX_SEED:
            raise ValueError(f"master_seed must be a 64-bit unsigned integer, got {self.master_seed}")
        grid = tuple(float(x) for x in self.snr_grid_db)
        if not grid:
            raise ValueError("snr_grid_db must not be empty")
        if not all(math.isfinite(x) for x in grid):
            raise ValueError(f"snr_grid_db must be finite, got {grid}")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError(f"snr_grid_db must be strictly increasing, got {grid}")
        strategies = {StrategyId(s) for s in self.strategies}
        if not strategies:
            raise ValueError("At least one strategy is needed")
        object.__setattr__(self, "n_trials", int(self.n_trials))
        object.__setattr__(self, "master_seed", int(self.master_seed))
        object.__setattr__(self, "snr_grid_db", grid)
        object.__setattr__(self, "strategies", tuple(s for s in STRATEGIES if s in strategies))


@dataclass(frozen=True)
class SweepEntry:
    snr_db: float
    strategy: StrategyId
    mean_network_throughput: float
    se_network_throughput: float
    mean_user_throughput: dict
    se_user_throughput: dict
    n_trials: int
    outage_per_user: dict = None
    se_outage_per_user: dict = None

    @property
    def outage_probability(self):
        """Outage of User1, None when the plan carries no outage spec."""
        if self.outage_per_user is None:
            return None
        return self.outage_per_user[UserId.USER1]

    @property
    def se_outage(self):
        if self.se_outage_per_user is None:
            return None
        return self.se_outage_per_user[UserId.USER1]


@dataclass(frozen=True)
class SweepResult:
    entries: tuple = ()
    n_trials: int = 0

    @property
    def snr_grid_db(self) -> tuple:
        return tuple(sorted({e.snr_db for e in self.entries}))

    @property
    def strategies(self) -> tuple:
        present = {e.strategy for e in self.entries}
        return tuple(s for s in STRATEGIES if s in present)

    def entry(self, snr_db: float, strategy: StrategyId) -> SweepEntry:
        for e in self.entries:
            if e.snr_db == snr_db and e.strategy is strategy:
                return e
        raise KeyError((snr_db, strategy))

    def curve(self, strategy: StrategyId) -> tuple:
        return tuple(e for e in self.entries if e.strategy is strategy)


@dataclass(frozen=True)
class CdfResult:
    """Empirical CDF of per-user throughput samples."""
    strategy: StrategyId
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "values", np.sort(np.asarray(self.values, dtype=float)))

    def __eq__(self, other):
        if not isinstance(other, CdfResult):
            return NotImplemented
        return self.strategy is other.strategy and np.array_equal(self.values, other.values)

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def ordinates(self) -> np.ndarray:
        return np.arange(1, self.n + 1) / self.n

    def evaluate(self, x: float) -> float:
        """Fraction of samples <= x."""
        return np.searchsorted(self.values, x, side="right") / self.n

    def probability_below(self, x: float) -> float:
        """Fraction of samples < x, i.e. the outage probability at threshold x."""
        return np.searchsorted(self.values, x, side="left") / self.n

    def median(self) -> float:
        return float(np.median(self.values))


def sample_channel(profile: FadingProfile, trial_index: int, master_seed: int) -> ChannelRealization:
    """
    Draws the six complex gains of one trial. Real and imaginary parts are
    N(0, sigma_vu^2 / 2); each link has its own substream.
    """
    gains = []
    for link in LINKS:
        seq = np.random.SeedSequence([master_seed, trial_index, link.ordinal])
        rng = np.random.Generator(np.random.Philox(seq))
        re, im = rng.standard_normal(2) * math.sqrt(profile.variance(link) / 2)
        gains.append(complex(re, im))
    return ChannelRealization(tuple(gains))


def _evaluate(ch, snr, strategies, optimizer, warm_start):
    reports, allocations = {}, {}
    warm_start = warm_start or {}
    for strategy in strategies:
        seeds = [warm_start[strategy]] if strategy in warm_start else []
        if strategy is StrategyId.LNC_RDF:
            result = optimize_lnc(ch, snr, optimizer, seeds=seeds)
            reports[strategy] = rate_report(strategy, ch, snr, result.best_alloc)
            allocations[strategy] = result.best_alloc
        elif strategy is StrategyId.DPC_NC_PDF:
            result = optimize_dpc(ch, snr, optimizer, seeds=seeds)
            reports[strategy] = rate_report(strategy, ch, snr, result.best_alloc, result.best_ordering)
            allocations[strategy] = result.best_alloc
        else:
            reports[strategy] = rate_report(strategy, ch, snr)
    return reports, allocations


def run_trial(ch: ChannelRealization, snr: SnrPoint, strategies=STRATEGIES,
              optimizer: OptimizerSettings = OptimizerSettings(), warm_start=None) -> dict:
    """
    Evaluates every strategy on one channel. LNC and DPC are evaluated at the
    optimizer's allocation (and ordering); ``warm_start`` maps a strategy to an
    allocation probed in addition to the optimizer's own candidates.
    """
    reports, _ = _evaluate(ch, snr, strategies, optimizer, warm_start)
    return reports


def _report_row(report: RateReport) -> list:
    return [report.network_throughput,
            report.throughput_per_user[UserId.USER1], report.throughput_per_user[UserId.USER2],
            report.mutual_info_per_user[UserId.USER1], report.mutual_info_per_user[UserId.USER2]]


def simulate_trials(plan: MonteCarloPlan, profile: FadingProfile, trial_indices) -> np.ndarray:
    """
    Samples of the given trials, shape (trials, snr points, strategies, 5).
    Within a trial the SNR grid is walked upwards and each optimum seeds the
    next point, which keeps the optimized throughput monotone in SNR.
    """
    snrs = [db_to_linear(x) for x in plan.snr_grid_db]
    out = np.zeros((len(trial_indices), len(snrs), len(plan.strategies), 5))
    for row, trial in enumerate(trial_indices):
        ch = sample_channel(profile, trial, plan.master_seed)
        warm = None
        for k, snr in enumerate(snrs):
            reports, warm = _evaluate(ch, snr, plan.strategies, plan.optimizer, warm)
            for j, strategy in enumerate(plan.strategies):
                out[row, k, j] = _report_row(reports[strategy])
    return out


def _chunks(n_trials: int, workers: int) -> list:
    size = max(1, math.ceil(n_trials / (workers * 16)))
    return [range(start, min(start + size, n_trials)) for start in range(0, n_trials, size)]


def collect_samples(plan: MonteCarloPlan, profile: FadingProfile, workers: int = 1,
                    progress: bool = False) -> np.ndarray:
    """
    Runs all trials, optionally over a process pool. Chunks are written back
    by trial index, so the assembled array never depends on ``workers``.
    """
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    chunks = _chunks(plan.n_trials, workers)
    samples = np.zeros((plan.n_trials, len(plan.snr_grid_db), len(plan.strategies), 5))
    logger.info("Simulating %d trials at %d SNR points for %s (%d workers)", plan.n_trials,
                len(plan.snr_grid_db), ", ".join(s.value for s in plan.strategies), workers)
    with tqdm(total=plan.n_trials, disable=not progress) as pbar:
        if workers == 1:
            for chunk in chunks:
                samples[chunk.start:chunk.stop] = simulate_trials(plan, profile, chunk)
                pbar.update(len(chunk))
        else:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                futures = [pool.submit(simulate_trials, plan, profile, chunk) for chunk in chunks]
                for chunk, future in zip(chunks, futures):
                    samples[chunk.start:chunk.stop] = future.result()
                    pbar.update(len(chunk))
    return samples


def _standard_error(values: np.ndarray) -> float:
    if len(values) < 2:
        return 0.0
    return float(np.std(values, ddof=1) / math.sqrt(len(values)))


def summarize(plan: MonteCarloPlan, samples: np.ndarray) -> SweepResult:
    entries = []
    n = samples.shape[0]
    for k, snr_db in enumerate(plan.snr_grid_db):
        for j, strategy in enumerate(plan.strategies):
            s = samples[:, k, j, :]
            outage = se_outage = None
            if plan.outage is not None:
                threshold = plan.outage.threshold(strategy)
                outage, se_outage = {}, {}
                for user in USERS:
                    p = float(np.mean(s[:, _MUTUAL_INFO[user]] < threshold))
                    outage[user] = p
                    se_outage[user] = math.sqrt(p * (1 - p) / n) if n > 1 else 0.0
            entries.append(SweepEntry(
                snr_db=snr_db,
                strategy=strategy,
                mean_network_throughput=float(np.mean(s[:, NETWORK])),
                se_network_throughput=_standard_error(s[:, NETWORK]),
                mean_user_throughput={u: float(np.mean(s[:, _THROUGHPUT[u]])) for u in USERS},
                se_user_throughput={u: _standard_error(s[:, _THROUGHPUT[u]]) for u in USERS},
                n_trials=n,
                outage_per_user=outage,
                se_outage_per_user=se_outage,
            ))
    return SweepResult(tuple(entries), n)


def sweep(plan: MonteCarloPlan, profile: FadingProfile, workers: int = 1, progress: bool = False) -> SweepResult:
    """Average throughputs (and outage, if the plan has an outage spec) along the SNR grid."""
    return summarize(plan, collect_samples(plan, profile, workers, progress))


def empirical_cdf(plan: MonteCarloPlan, profile: FadingProfile, snr_db: float, workers: int = 1,
                  progress: bool = False) -> dict:
    """
    Empirical CDF of User1's throughput for every strategy of the plan at one
    SNR. Trials walk the plan's grid up to ``snr_db`` with the same warm
    starts as :func:`sweep`, so at a grid point the samples are exactly the
    ones the sweep averages.
    """
    if not math.isfinite(snr_db):
        raise ValueError(f"SNR in dB must be finite, got {snr_db}")
    walk = replace(plan, snr_grid_db=tuple(x for x in plan.snr_grid_db if x < snr_db) + (float(snr_db),))
    samples = collect_samples(walk, profile, workers, progress)
    return {strategy: CdfResult(strategy, samples[:, -1, j, THROUGHPUT_U1])
            for j, strategy in enumerate(walk.strategies)}
