#!/usr/bin/env python3
"""Print analytic and measured rejection statistics for every level."""

import argparse
import sys

from dilithium.cli import main as cli_main
from dilithium.params import LEVELS


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--signatures", type=int, default=200)
    parser.add_argument("--levels", type=int, nargs="*", default=list(LEVELS))
    args = parser.parse_args()
    for level in args.levels:
        rc = cli_main(["probs", "--level", str(level),
                       "--signatures", str(args.signatures)])
        if rc:
            return rc
    return 0


if __name__ == "__main__":
    sys.exit(main())
