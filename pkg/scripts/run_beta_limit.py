"""Rate of the boundary-coupled-to-Neumann limit on the unit disk.

Tracks the first nonzero eigenvalue Sigma_1(beta) through its Bessel
characterisation for beta = 10 .. 10^4 and reports the log-log slope of the
relative gap |2 pi beta Sigma_1 - mu_1| / mu_1 (observed: close to -1).
Writes sweep_beta.csv / sweep_beta.svg under ./out (or $STEKLOV_LAB_OUT).
"""

import sys

from steklov_lab.cli import main

if __name__ == "__main__":
    argv = ["sweep-beta", "--domain", "disk", "--beta", "10,100,1000,10000"]
    sys.exit(main(argv + sys.argv[1:]))
