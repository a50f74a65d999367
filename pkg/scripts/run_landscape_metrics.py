#!/usr/bin/env python3
"""Correlation-length and adaptive-walk sweeps over (k, b) for n=10.

Runs the fig1 (random walks, tau vs k per b) and fig5 (adaptive walks,
local-optima fitness and walk length) presets. Full-scale campaigns are
20000 and 2000 walks per cell; the default here scales them down to stay
desk-friendly. Outputs land in epiroad-out/fig1 and epiroad-out/fig5.
"""

import sys

from epiroad.cli import main

if __name__ == "__main__":
    extra = sys.argv[1:]
    scale = [] if any(a.startswith("--scale") for a in extra) else ["--scale", "0.1"]
    rc = main(["reproduce", "--preset", "fig1", *scale, *extra])
    if rc:
        sys.exit(rc)
    sys.exit(main(["reproduce", "--preset", "fig5", *scale, *extra]))
