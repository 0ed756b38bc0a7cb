"""Perforated-square eigenvalue sweep against the boundary-coupled limit.

Solves the composite Steklov problem on the unit square with a lattice of
critically scaled holes (radius beta * eps^2) for eps = 1/8, 1/16, 1/32 and
compares cluster-summed eigenvalues with the limit problem.  Writes
sweep_homog.csv / sweep_homog.svg under ./out (or $STEKLOV_LAB_OUT).

Roughly ten seconds single-process; pass --jobs to parallelise the cases.
"""

import sys

from steklov_lab.cli import main

if __name__ == "__main__":
    argv = ["sweep-homog", "--beta", "1", "--eps", "1/8,1/16,1/32", "--k", "3"]
    sys.exit(main(argv + sys.argv[1:]))
