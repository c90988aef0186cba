#!/usr/bin/env python
# coding: utf-8
"""
Reproduces the throughput, outage and CDF figures for one configuration and
stores CSV/SVG artifacts plus a metadata JSON with the ordering checks.

    python experiments/reproduce_figures.py -c configs/symmetric.yaml -o results
"""
import argparse
import json
import logging
import sys
from datetime import datetime
from os import makedirs, path

# appends parent path to syspath to make coopnc importable
# like it would have been installed as a package
sys.path.insert(0, path.dirname(path.dirname(path.abspath(__file__))))

from coopnc.export import render_svg, write_csv
from coopnc.model import OutageSpec
from coopnc.montecarlo import empirical_cdf, sweep
from coopnc.utils import dump_config, load_config
from utils import check_monotonicity, check_outage_ordering, check_throughput_ordering

parser = argparse.ArgumentParser(description='Figure reproduction for network coded cooperation')
parser.add_argument('-c', '--config', type=str, default="configs/symmetric.yaml",
                    help='YAML run configuration')
parser.add_argument('-o', '--output', type=str, default="results",
                    help='Directory receiving CSV, SVG and metadata files')
parser.add_argument('-s', '--seed', type=int, default=None,
                    help='Overrides the seed of the configuration')
parser.add_argument('-r', '--rate', type=float, default=1.0,
                    help='Target rate r in b/s for the outage figure')
parser.add_argument('--cdf-snr-db', type=float, default=10.0,
                    help='SNR of the CDF figure')
parser.add_argument('-w', '--workers', type=int, default=None,
                    help='Worker processes')


def main():
    args = parser.parse_args()

    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")

    config = load_config(args.config)
    if args.seed is not None:
        config = config.with_seed(args.seed)
    if config.plan.outage is None:
        config = config.with_outage(OutageSpec(args.rate))
    workers = args.workers or config.workers
    makedirs(args.output, exist_ok=True)

    # one sweep feeds the throughput, per-user and outage figures
    result = sweep(config.plan, config.profile, workers, progress=True)
    write_csv(result, path.join(args.output, "throughput.csv"))
    render_svg(result, path.join(args.output, "network_throughput.svg"), kind="throughput")
    render_svg(result, path.join(args.output, "per_user_throughput.svg"), kind="per-user")
    render_svg(result, path.join(args.output, "outage.svg"), kind="outage")

    cdfs = empirical_cdf(config.plan, config.profile, args.cdf_snr_db, workers, progress=True)
    write_csv(cdfs, path.join(args.output, "cdf.csv"))
    render_svg(cdfs, path.join(args.output, "cdf.svg"))

    metadata = {
        'description': 'Monte Carlo comparison of RDF, PDF, linear NC-RDF and DPC-NC-PDF cooperation',
        'creation_date': datetime.now().strftime("%d/%m/%Y %H:%M:%S"),
        'config': dump_config(config),
        'cdf_snr_db': args.cdf_snr_db,
        'cdf_medians': {s.value: cdf.median() for s, cdf in cdfs.items()},
        'checks': {
            'throughput_ordering': check_throughput_ordering(result),
            'outage_ordering': check_outage_ordering(result),
            'monotonicity': check_monotonicity(result),
        },
    }
    with open(path.join(args.output, "metadata.json"), 'w') as f:
        json.dump(metadata, f, indent=4)

    for name, check in metadata['checks'].items():
        print(f"{name}: {'passed' if check['passed'] else 'FAILED'}", *check['failures'], sep="\n  ")
    print(f"Finished, stored in {args.output}/")


if __name__ == "__main__":
    main()
