"""
Command line interface.

    coopnc throughput --config F [--csv P] [--svg P] [--kind throughput|per-user]
    coopnc outage --config F --rate r [--bandwidth W] [--csv P] [--svg P]
    coopnc cdf --config F --snr-db X [--csv P] [--svg P]
    coopnc eval --snr-db X --strategy S --gains g1,...,g6 [--alloc f11,f12,f21,f22] [--ordering p1,p2]

``--gains`` are the power gains |h|^2 in link order s1-s2, s2-s1, s1-d1,
s1-d2, s2-d1, s2-d2.
"""
import argparse
import logging
import sys

from coopnc.allocator import OptimizerSettings, objective_dpc, optimize_dpc, optimize_lnc
from coopnc.export import render_svg, write_csv
from coopnc.model import (ORDERING_PAIRS, ChannelRealization, DpcOrderingPair, NormMode, OutageSpec, PowerAllocation,
                          StrategyId, db_to_linear)
from coopnc.montecarlo import empirical_cdf, sweep
from coopnc.rates import USERS, rate_report
from coopnc.utils import ConfigError, load_config

logger = logging.getLogger("coopnc")


def _float_list(n):
    def parse(text):
        try:
            values = [float(x) for x in text.split(",")]
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected {n} comma separated numbers, got '{text}'") from None
        if len(values) != n:
            raise argparse.ArgumentTypeError(f"expected {n} comma separated numbers, got {len(values)}")
        return values
    return parse


def _strategy(text):
    try:
        return StrategyId.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _ordering(text):
    try:
        return DpcOrderingPair.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coopnc",
                                     description="Network coded cooperation simulator (RDF, PDF, LNC-RDF, DPC-NC-PDF)")
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging.")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    def add_run_args(p):
        p.add_argument("-c", "--config", required=True, help="YAML run configuration.")
        p.add_argument("--csv", default=None, help="CSV output path (defaults to output.csv of the config).")
        p.add_argument("--svg", default=None, help="SVG chart output path (defaults to output.svg of the config).")
        p.add_argument("-s", "--seed", type=int, default=None, help="Overrides the seed of the config.")
        p.add_argument("-w", "--workers", type=int, default=None, help="Worker processes (results do not change).")
        p.add_argument("-p", "--progress", action="store_true", help="Show a progress bar.")

    p = sub.add_parser("throughput", help="Average network and per-user throughput versus SNR.")
    add_run_args(p)
    p.add_argument("-k", "--kind", choices=("throughput", "per-user"), default="throughput",
                   help="Which curves the SVG shows.")

    p = sub.add_parser("outage", help="Outage probability versus SNR for a target rate.")
    add_run_args(p)
    p.add_argument("-r", "--rate", type=float, required=True, help="Target rate r in b/s.")
    p.add_argument("-b", "--bandwidth", type=float, default=None,
                   help="Bandwidth W in Hz (defaults to outage.bandwidth of the config, else 1).")

    p = sub.add_parser("cdf", help="Empirical CDF of the per-user throughput at one SNR.")
    add_run_args(p)
    p.add_argument("--snr-db", type=float, required=True, help="SNR in dB.")

    p = sub.add_parser("eval", help="Rate report of one strategy on one channel.")
    p.add_argument("--snr-db", type=float, required=True, help="SNR in dB.")
    p.add_argument("--strategy", type=_strategy, required=True, help="rdf, pdf, lnc-rdf or dpc-nc-pdf.")
    p.add_argument("--gains", type=_float_list(6), required=True,
                   help="Power gains |h|^2: s1-s2,s2-s1,s1-d1,s1-d2,s2-d1,s2-d2.")
    p.add_argument("--alloc", type=_float_list(4), default=None,
                   help="Precoder magnitudes f11,f12,f21,f22 (optimized when omitted).")
    p.add_argument("--ordering", type=_ordering, default=None,
                   help="DPC orderings of S1 and S2, e.g. d1,d2 (optimized when omitted).")
    p.add_argument("--norm-mode", choices=[m.value for m in NormMode], default=NormMode.EQUALITY.value,
                   help="Power constraint used when optimizing.")
    return parser


def _load(args):
    config = load_config(args.config)
    if args.seed is not None:
        config = config.with_seed(args.seed)
    workers = args.workers if args.workers is not None else config.workers
    csv_path = args.csv or config.csv_path
    svg_path = args.svg or config.svg_path
    if csv_path is None:
        raise ValueError("No CSV output path, pass --csv or set output.csv in the config")
    return config, workers, csv_path, svg_path


def _run_throughput(args):
    config, workers, csv_path, svg_path = _load(args)
    result = sweep(config.plan, config.profile, workers, args.progress)
    write_csv(result, csv_path)
    if svg_path:
        render_svg(result, svg_path, kind=args.kind)


def _run_outage(args):
    config, workers, csv_path, svg_path = _load(args)
    bandwidth = args.bandwidth
    if bandwidth is None:
        bandwidth = config.plan.outage.bandwidth if config.plan.outage is not None else 1.0
    config = config.with_outage(OutageSpec(args.rate, bandwidth))
    result = sweep(config.plan, config.profile, workers, args.progress)
    write_csv(result, csv_path)
    if svg_path:
        render_svg(result, svg_path, kind="outage")


def _run_cdf(args):
    config, workers, csv_path, svg_path = _load(args)
    result = empirical_cdf(config.plan, config.profile, args.snr_db, workers, args.progress)
    write_csv(result, csv_path)
    if svg_path:
        render_svg(result, svg_path)


def _run_eval(args):
    ch = ChannelRealization.from_gain2(args.gains)
    snr = db_to_linear(args.snr_db)
    strategy = args.strategy
    alloc = PowerAllocation.from_vector(args.alloc) if args.alloc is not None else None
    ordering = args.ordering
    settings = OptimizerSettings(norm_mode=NormMode(args.norm_mode))
    if strategy is StrategyId.LNC_RDF and alloc is None:
        alloc = optimize_lnc(ch, snr, settings).best_alloc
    elif strategy is StrategyId.DPC_NC_PDF and alloc is None:
        result = optimize_dpc(ch, snr, settings, orderings=ORDERING_PAIRS if ordering is None else (ordering,))
        alloc, ordering = result.best_alloc, result.best_ordering
    elif strategy is StrategyId.DPC_NC_PDF and ordering is None:
        # first pair wins ties
        ordering = max(ORDERING_PAIRS, key=lambda pair: objective_dpc(ch, snr, alloc, pair))
    report = rate_report(strategy, ch, snr, alloc, ordering)

    print(f"Strategy: {strategy.value} at {args.snr_db:g} dB (rho = {snr.rho:.9g})")
    for user in USERS:
        name = f"User{user.value}"
        print(f"{name} mutual information: {report.mutual_info_per_user[user]:.9g}")
        print(f"{name} throughput: {report.throughput_per_user[user]:.9g} "
              f"({report.binding_per_user[user].value})")
    print(f"Network throughput: {report.network_throughput:.9g}")
    if report.alloc is not None:
        a = report.alloc
        print(f"Allocation: f11={a.f11:.9g} f12={a.f12:.9g} f21={a.f21:.9g} f22={a.f22:.9g}")
    if report.ordering is not None:
        print(f"Ordering: {report.ordering}")


COMMANDS = {
    "throughput": _run_throughput,
    "outage": _run_outage,
    "cdf": _run_cdf,
    "eval": _run_eval,
}


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        COMMANDS[args.command](args)
    except (ConfigError, ValueError, OSError) as e:
        logger.error("%s", e)
        return 1
    return 0


def main():
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
