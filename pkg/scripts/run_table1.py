#!/usr/bin/env python3
"""Reproduce the neutral-neighbor proportion table (n=8, k=4, b in 2..4).

Full scale takes a few minutes; pass --scale 0.1 for a quick look.
"""

import sys

from epiroad.cli import main

if __name__ == "__main__":
    sys.exit(main(["reproduce", "--preset", "table1", *sys.argv[1:]]))
