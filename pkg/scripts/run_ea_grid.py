#!/usr/bin/env python3
"""EA performance sweep: success rate on n=8 (fig6) and blocks found on n=16 (fig8).

Full scale is 35 runs x 10 instances x 1000 individuals x 400 generations
per cell; the default scale of 0.05 keeps a laptop run in minutes. Results
land in epiroad-out/fig6 and epiroad-out/fig8 as ea_runs.csv / ea_summary.csv.
"""

import sys

from epiroad.cli import main

if __name__ == "__main__":
    extra = sys.argv[1:]
    scale = [] if any(a.startswith("--scale") for a in extra) else ["--scale", "0.05"]
    rc = main(["reproduce", "--preset", "fig6", *scale, *extra])
    if rc:
        sys.exit(rc)
    sys.exit(main(["reproduce", "--preset", "fig8", *scale, *extra]))
