#!/usr/bin/env python3
"""Run the signing/verification benchmark across levels and engines.

Emits one CSV table (level,engine,op,iters,median_ns,mean_ns) to stdout.
"""

import argparse
import sys

from dilithium.cli import main as cli_main
from dilithium.params import LEVELS


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--iters", type=int, default=50)
    parser.add_argument("--levels", type=int, nargs="*", default=list(LEVELS))
    parser.add_argument("--check-order", default="r0_first")
    args = parser.parse_args()
    for i, level in enumerate(args.levels):
        argv = ["bench", "--level", str(level), "--iters", str(args.iters),
                "--check-order", args.check_order]
        if i > 0:
            argv.append("--no-header")
        rc = cli_main(argv)
        if rc:
            return rc
    return 0


if __name__ == "__main__":
    sys.exit(main())
