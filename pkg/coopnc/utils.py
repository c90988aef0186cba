"""
Run configuration: YAML loading, validation and serialization.

Schema (every key except ``seed`` and ``snr_grid_db`` is optional)::

    seed: 2008
    snr_grid_db: [0, 2, 4]
    n_trials: 10000
    strategies: [rdf, pdf, lnc-rdf, dpc-nc-pdf]
    workers: 1
    fading:
      noise_variance: 1.0
      variances: {s1-s2: 1.0, s2-s1: 1.0, s1-d1: 1.0, s1-d2: 1.0, s2-d1: 1.0, s2-d2: 1.0}
    optimizer:
      grid_points_per_axis: 25
      refine_rounds: 3
      tolerance: 1.0e-4
      norm_mode: equality
    outage:
      target_rate: 1.0
      bandwidth: 1.0
    output:
      csv: results/throughput.csv
      svg: results/throughput.svg
"""
import math
from dataclasses import dataclass, replace
from pathlib import Path

import yaml

from coopnc.allocator import OptimizerSettings
from coopnc.model import LINKS, STRATEGIES, FadingProfile, NormMode, OutageSpec, StrategyId
from coopnc.montecarlo import MAX_SEED, MonteCarloPlan

DEFAULT_N_TRIALS = 10000


class ConfigError(ValueError):
    """Invalid run configuration; ``key`` is the dotted path of the offending entry."""

    def __init__(self, message, key=None):
        self.key = key
        super().__init__(f"{key}: {message}" if key else message)


class ConfigNotFoundError(ConfigError):
    pass


class ConfigSyntaxError(ConfigError):
    pass


class ConfigValueError(ConfigError):
    pass


@dataclass(frozen=True)
class RunConfig:
    profile: FadingProfile
    plan: MonteCarloPlan
    csv_path: str = None
    svg_path: str = None
    workers: int = 1

    def with_seed(self, seed: int) -> "RunConfig":
        _check_seed(seed, "seed")
        return replace(self, plan=replace(self.plan, master_seed=seed))

    def with_outage(self, outage: OutageSpec) -> "RunConfig":
        return replace(self, plan=replace(self.plan, outage=outage))


def _check_seed(seed, key):
    if isinstance(seed, bool) or not isinstance(seed, int) or not 0 <= seed < MAX_SEED:
        raise ConfigValueError(f"must be an integer in [0, 2**64), got {seed!r}", key)


class _Section:
    """Read access to one mapping of the config that remembers which keys were used."""

    def __init__(self, data, path=""):
        if data is None:
            data = {}
        if not isinstance(data, dict):
            raise ConfigValueError(f"expected a mapping, got {type(data).__name__}", path or None)
        self.data = data
        self.path = path
        self.used = set()

    def key(self, name):
        return f"{self.path}.{name}" if self.path else name

    def get(self, name, default=None):
        self.used.add(name)
        return self.data.get(name, default)

    def required(self, name):
        if name not in self.data:
            raise ConfigValueError("missing required key", self.key(name))
        return self.get(name)

    def section(self, name):
        return _Section(self.get(name), self.key(name))

    def number(self, name, default, positive=True):
        value = self.get(name, default)
        if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
            raise ConfigValueError(f"expected a finite number, got {value!r}", self.key(name))
        if positive and value <= 0:
            raise ConfigValueError(f"must be positive, got {value!r}", self.key(name))
        return float(value)

    def integer(self, name, default, minimum):
        value = self.get(name, default)
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigValueError(f"expected an integer, got {value!r}", self.key(name))
        if value < minimum:
            raise ConfigValueError(f"must be >= {minimum}, got {value}", self.key(name))
        return value

    def path_value(self, name):
        value = self.get(name)
        if value is not None and not isinstance(value, str):
            raise ConfigValueError(f"expected a path string, got {value!r}", self.key(name))
        return value

    def finish(self):
        unknown = sorted(set(self.data) - self.used, key=str)
        if unknown:
            raise ConfigValueError("unknown key", self.key(unknown[0]))


def parse_config(data) -> RunConfig:
    """Validates a parsed YAML tree and applies the defaults."""
    root = _Section(data)

    seed = root.required("seed")
    _check_seed(seed, "seed")

    grid = root.required("snr_grid_db")
    if not isinstance(grid, list) or not grid:
        raise ConfigValueError("expected a non-empty list of numbers", "snr_grid_db")
    for i, x in enumerate(grid):
        if isinstance(x, bool) or not isinstance(x, (int, float)) or not math.isfinite(x):
            raise ConfigValueError(f"expected a finite number, got {x!r}", f"snr_grid_db[{i}]")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ConfigValueError("must be strictly increasing", "snr_grid_db")

    n_trials = root.integer("n_trials", DEFAULT_N_TRIALS, 1)
    workers = root.integer("workers", 1, 1)

    names = root.get("strategies", [s.value for s in STRATEGIES])
    if not isinstance(names, list) or not names:
        raise ConfigValueError("expected a non-empty list of strategy names", "strategies")
    strategies = []
    for i, name in enumerate(names):
        try:
            strategies.append(StrategyId.parse(str(name)))
        except ValueError as e:
            raise ConfigValueError(str(e), f"strategies[{i}]") from None

    fading = root.section("fading")
    noise = fading.number("noise_variance", 1.0)
    variances_section = fading.section("variances")
    variances = tuple(variances_section.number(link.value, 1.0) for link in LINKS)
    variances_section.finish()
    fading.finish()

    opt = root.section("optimizer")
    mode_name = opt.get("norm_mode", NormMode.EQUALITY.value)
    try:
        mode = NormMode(mode_name)
    except ValueError:
        raise ConfigValueError(f"expected equality or inequality, got {mode_name!r}",
                               opt.key("norm_mode")) from None
    optimizer = OptimizerSettings(
        grid_points_per_axis=opt.integer("grid_points_per_axis", 25, 2),
        refine_rounds=opt.integer("refine_rounds", 3, 0),
        tolerance=opt.number("tolerance", 1e-4),
        norm_mode=mode,
    )
    opt.finish()

    outage = None
    if root.get("outage") is not None:
        section = root.section("outage")
        if "target_rate" not in section.data:
            raise ConfigValueError("missing required key", section.key("target_rate"))
        outage = OutageSpec(section.number("target_rate", None), section.number("bandwidth", 1.0))
        section.finish()

    output = root.section("output")
    csv_path = output.path_value("csv")
    svg_path = output.path_value("svg")
    output.finish()
    root.finish()

    plan = MonteCarloPlan(n_trials, seed, tuple(grid), tuple(strategies), optimizer, outage)
    return RunConfig(FadingProfile(variances, noise), plan, csv_path, svg_path, workers)


def load_config(path) -> RunConfig:
    path = Path(path)
    if not path.is_file():
        raise ConfigNotFoundError(f"config file not found: {path}")
    try:
        with open(path, encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise ConfigSyntaxError(f"malformed YAML in {path}: {e}") from e
    return parse_config(data)


def dump_config(config: RunConfig) -> dict:
    """Fully populated mapping; ``parse_config(dump_config(c)) == c``."""
    plan = config.plan
    data = {
        "seed": plan.master_seed,
        "snr_grid_db": list(plan.snr_grid_db),
        "n_trials": plan.n_trials,
        "strategies": [s.value for s in plan.strategies],
        "workers": config.workers,
        "fading": {
            "noise_variance": config.profile.noise_variance,
            "variances": {link.value: config.profile.variance(link) for link in LINKS},
        },
        "optimizer": {
            "grid_points_per_axis": plan.optimizer.grid_points_per_axis,
            "refine_rounds": plan.optimizer.refine_rounds,
            "tolerance": plan.optimizer.tolerance,
            "norm_mode": plan.optimizer.norm_mode.value,
        },
    }
    if plan.outage is not None:
        data["outage"] = {"target_rate": plan.outage.target_rate, "bandwidth": plan.outage.bandwidth}
    output = {}
    if config.csv_path is not None:
        output["csv"] = config.csv_path
    if config.svg_path is not None:
        output["svg"] = config.svg_path
    if output:
        data["output"] = output
    return data


def save_config(config: RunConfig, path):
    with open(path, "w", encoding="utf-8") as f:
        yaml.safe_dump(dump_config(config), f, sort_keys=False)
