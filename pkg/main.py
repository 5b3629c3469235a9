"""
qc_distortion - command-line entry point

Examples:
    python main.py analyze --sing 2 4
    python main.py sweep --alphas 2 --betas 10 100 1000 --format csv --output sweep.csv
    python main.py laminate --sing 2 4 --j 10 --samples 100000
    python main.py verify -v
    python main.py --output figures figures
"""

import sys

from qcdistortion.cli import main

if __name__ == "__main__":
    sys.exit(main())
