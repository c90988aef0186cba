"""
Runs the coopnc command line without installing the package, e.g.

    python run.py eval --snr-db 0 --strategy rdf --gains 3,0,1,0,1,0
    python run.py throughput -c configs/golden.yaml --csv throughput.csv --svg throughput.svg
"""
import sys

from coopnc.cli import cli_main


if __name__ == "__main__":
    sys.exit(cli_main())
