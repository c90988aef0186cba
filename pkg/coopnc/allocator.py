"""
Power allocation for the network coded strategies.

The sum-rate maximisation over the precoders is non-convex (the source-relay
links depend on f11 and f22 as well), so it is solved numerically: an
exhaustive coarse grid over a box parameterisation of the feasible set,
followed by derivative-free zoom grids over boxes shrinking around the
incumbent. Ties are broken by probe order, first probed wins.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np

from coopnc.model import (ORDERING_PAIRS, ChannelRealization, DpcOrderingPair, NormMode,
                          PowerAllocation, SnrPoint, StrategyId)
from coopnc.rates import USERS, mutual_info, rate_report

logger = logging.getLogger(__name__)

HALF_PI = math.pi / 2
# zoom grid points per axis in the 4-D inequality-mode search
MAX_ZOOM_POINTS_4D = 9


@dataclass(frozen=True)
class OptimizerSettings:
    grid_points_per_axis: int = 25
    refine_rounds: int = 3
    tolerance: float = 1e-4
    norm_mode: NormMode = NormMode.EQUALITY

    def __post_init__(self):
        if isinstance(self.norm_mode, str):
            object.__setattr__(self, "norm_mode", NormMode(self.norm_mode))
        if int(self.grid_points_per_axis) != self.grid_points_per_axis or self.grid_points_per_axis < 2:
            raise ValueError(f"grid_points_per_axis must be an integer >= 2, got {self.grid_points_per_axis}")
        if int(self.refine_rounds) != self.refine_rounds or self.refine_rounds < 0:
            raise ValueError(f"refine_rounds must be an integer >= 0, got {self.refine_rounds}")
        if not math.isfinite(self.tolerance) or self.tolerance <= 0:
            raise ValueError(f"tolerance must be positive, got {self.tolerance}")
        object.__setattr__(self, "grid_points_per_axis", int(self.grid_points_per_axis))
        object.__setattr__(self, "refine_rounds", int(self.refine_rounds))


@dataclass(frozen=True)
class AllocationResult:
    best_alloc: PowerAllocation
    best_ordering: DpcOrderingPair
    objective: float
    evaluations: int


def objective_lnc(ch: ChannelRealization, snr: SnrPoint, alloc: PowerAllocation) -> float:
    """Sum of both users' LNC mutual informations, the quantity maximised for C_LNC."""
    return rate_report(StrategyId.LNC_RDF, ch, snr, alloc).network_throughput


def objective_dpc(ch: ChannelRealization, snr: SnrPoint, alloc: PowerAllocation,
                  ordering: DpcOrderingPair) -> float:
    return rate_report(StrategyId.DPC_NC_PDF, ch, snr, alloc, ordering).network_throughput


def params_to_alloc(params, mode: NormMode) -> np.ndarray:
    """
    Maps box parameters to precoder magnitudes (last axis f11, f12, f21, f22).
    Equality mode uses (theta1, theta2), inequality mode (p1, theta1, p2, theta2)
    with p_i the squared norm of F_i.
    """
    params = np.asarray(params, dtype=float)
    if mode is NormMode.EQUALITY:
        theta1, theta2 = params[..., 0], params[..., 1]
        r1 = r2 = np.ones_like(theta1)
    else:
        r1, theta1 = np.sqrt(params[..., 0]), params[..., 1]
        r2, theta2 = np.sqrt(params[..., 2]), params[..., 3]
    f = np.stack([r1 * np.cos(theta1), r1 * np.sin(theta1),
                  r2 * np.cos(theta2), r2 * np.sin(theta2)], axis=-1)
    return np.clip(f, 0.0, 1.0)


def alloc_to_params(f, mode: NormMode) -> np.ndarray:
    f = np.asarray(f, dtype=float)
    theta1 = math.atan2(f[1], f[0])
    theta2 = math.atan2(f[3], f[2])
    if mode is NormMode.EQUALITY:
        return np.array([theta1, theta2])
    return np.array([min(f[0] ** 2 + f[1] ** 2, 1.0), theta1, min(f[2] ** 2 + f[3] ** 2, 1.0), theta2])


def _upper_bounds(mode: NormMode) -> np.ndarray:
    if mode is NormMode.EQUALITY:
        return np.array([HALF_PI, HALF_PI])
    return np.array([1.0, HALF_PI, 1.0, HALF_PI])


def _lexicographic_grid(axes) -> np.ndarray:
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=-1)


class _PowerSearch:
    """
    Maximises the network throughput of one strategy for one ordering over
    the precoder magnitudes. Keeps the incumbent both as box parameters and
    as the exact allocation vector that was evaluated.
    """

    def __init__(self, strategy, g, rho, ordering, mode):
        self.strategy = strategy
        self.g = g
        self.rho = rho
        self.ordering = ordering
        self.mode = mode
        self.upper = _upper_bounds(mode)
        self.evaluations = 0
        self.best_params = None
        self.best_f = None
        self.best_value = -math.inf

    def evaluate(self, f) -> np.ndarray:
        f = np.atleast_2d(f)
        self.evaluations += f.shape[0]
        return sum(mutual_info(self.strategy, self.g, self.rho, f, self.ordering, user) for user in USERS)

    def offer(self, params, f) -> bool:
        """Evaluates the candidates in order; the first strict improvement wins."""
        values = self.evaluate(f)
        idx = int(np.argmax(values))
        if values[idx] > self.best_value:
            self.best_value = float(values[idx])
            self.best_params = np.array(params[idx], dtype=float)
            self.best_f = np.array(f[idx], dtype=float)
            return True
        return False

    def offer_allocations(self, allocs):
        for alloc in allocs:
            f = np.asarray(alloc, dtype=float)
            if not PowerAllocation.from_vector(f).satisfies(self.mode):
                logger.debug("Skipping seed %s, infeasible in %s mode", f, self.mode.value)
                continue
            self.offer(alloc_to_params(f, self.mode)[None, :], f[None, :])

    def grid(self, points_per_axis):
        axes = [np.linspace(0.0, upper, points_per_axis) for upper in self.upper]
        params = _lexicographic_grid(axes)
        self.offer(params, params_to_alloc(params, self.mode))

    def corners(self):
        if self.mode is NormMode.EQUALITY:
            params = _lexicographic_grid([[0.0, HALF_PI]] * 2)
        else:
            params = _lexicographic_grid([[1.0], [0.0, HALF_PI], [1.0], [0.0, HALF_PI]])
        self.offer(params, params_to_alloc(params, self.mode))

    def refine(self, half_width, points_per_axis, rounds, tolerance):
        """
        Zooms in on the incumbent: every round evaluates a grid over a box
        centred on it whose half-width is halved from round to round.
        """
        half_width = np.asarray(half_width, dtype=float)
        for _ in range(rounds):
            start_value = self.best_value
            lower = np.clip(self.best_params - half_width, 0.0, self.upper)
            upper = np.clip(self.best_params + half_width, 0.0, self.upper)
            axes = [np.linspace(lo, hi, points_per_axis) for lo, hi in zip(lower, upper)]
            params = _lexicographic_grid(axes)
            self.offer(params, params_to_alloc(params, self.mode))
            half_width = half_width / 2
            if self.best_value - start_value < tolerance:
                break


def _search(strategy, g, rho, ordering, settings, seeds=()) -> _PowerSearch:
    n = settings.grid_points_per_axis
    seeds = [np.asarray(s.as_vector() if isinstance(s, PowerAllocation) else s, dtype=float) for s in seeds]

    if settings.norm_mode is NormMode.INEQUALITY:
        equality = _search(strategy, g, rho, ordering,
                           OptimizerSettings(n, settings.refine_rounds, settings.tolerance, NormMode.EQUALITY),
                           seeds)
        seeds = seeds + [equality.best_f]

    search = _PowerSearch(strategy, g, rho, ordering, settings.norm_mode)
    if settings.norm_mode is NormMode.INEQUALITY:
        search.evaluations += equality.evaluations
    search.grid(n)
    search.corners()
    search.offer_allocations(seeds)
    zoom_points = n if settings.norm_mode is NormMode.EQUALITY else min(n, MAX_ZOOM_POINTS_4D)
    search.refine(search.upper / (n - 1), zoom_points, settings.refine_rounds, settings.tolerance)
    return search


def _result(strategy, ch, snr, best_f, ordering, evaluations) -> AllocationResult:
    alloc = PowerAllocation.from_vector(best_f)
    # reported objective is re-evaluated on the returned allocation
    objective = rate_report(strategy, ch, snr, alloc, ordering).network_throughput
    return AllocationResult(alloc, ordering, objective, evaluations)


def optimize_lnc(ch: ChannelRealization, snr: SnrPoint, settings: OptimizerSettings = OptimizerSettings(),
                 seeds=()) -> AllocationResult:
    """
    Maximises I_LNC(s1; y_D1) + I_LNC(s2; y_D2) over the precoders.
    ``seeds`` are extra allocations probed before refinement (used to warm
    start an SNR sweep with the previous optimum).
    """
    search = _search(StrategyId.LNC_RDF, ch.gain2_vector(), snr.rho, None, settings, seeds)
    result = _result(StrategyId.LNC_RDF, ch, snr, search.best_f, None, search.evaluations)
    logger.debug("LNC optimum %.6f at %s (%d evaluations)", result.objective, result.best_alloc,
                 result.evaluations)
    return result


def optimize_dpc(ch: ChannelRealization, snr: SnrPoint, settings: OptimizerSettings = OptimizerSettings(),
                 seeds=(), orderings=ORDERING_PAIRS) -> AllocationResult:
    """
    Runs the power search independently for every ordering pair and keeps the
    best (ordering, allocation); earlier orderings win ties.
    """
    g = ch.gain2_vector()
    best, best_ordering, evaluations = None, None, 0
    for ordering in orderings:
        search = _search(StrategyId.DPC_NC_PDF, g, snr.rho, ordering, settings, seeds)
        evaluations += search.evaluations
        if best is None or search.best_value > best.best_value:
            best, best_ordering = search, ordering
    result = _result(StrategyId.DPC_NC_PDF, ch, snr, best.best_f, best_ordering, evaluations)
    logger.debug("DPC optimum %.6f at %s / %s (%d evaluations)", result.objective, result.best_alloc,
                 result.best_ordering, result.evaluations)
    return result


def _oracle_axis(resolution: float) -> np.ndarray:
    steps = 1.0 / resolution
    if abs(steps - round(steps)) < 1e-9:
        return np.linspace(0.0, HALF_PI, int(round(steps)) + 1)
    axis = np.arange(math.floor(steps) + 1) * resolution * HALF_PI
    return np.append(axis, HALF_PI)


def oracle_grid(ch: ChannelRealization, snr: SnrPoint, resolution: float,
                strategy: StrategyId) -> AllocationResult:
    """
    Exhaustive equality-mode search, f_i1 = cos(theta_i), f_i2 = sin(theta_i),
    with theta_i stepped by resolution * pi/2. The probe order is
    lexicographic over (theta1, theta2, ordering).
    """
    if not (0 < resolution <= 0.5) or not math.isfinite(resolution):
        raise ValueError(f"Oracle resolution must lie in (0, 0.5], got {resolution}")
    if strategy not in (StrategyId.LNC_RDF, StrategyId.DPC_NC_PDF):
        raise ValueError(f"Oracle only covers lnc-rdf and dpc-nc-pdf, got {strategy.value}")

    axis = _oracle_axis(resolution)
    params = _lexicographic_grid([axis, axis])
    f = params_to_alloc(params, NormMode.EQUALITY)
    g = ch.gain2_vector()
    orderings = ORDERING_PAIRS if strategy is StrategyId.DPC_NC_PDF else (None,)
    values = np.stack([
        sum(mutual_info(strategy, g, snr.rho, f, ordering, user) for user in USERS)
        for ordering in orderings
    ], axis=-1)
    idx = int(np.argmax(values))
    point, ordering_idx = divmod(idx, len(orderings))
    return _result(strategy, ch, snr, f[point], orderings[ordering_idx], values.size)
