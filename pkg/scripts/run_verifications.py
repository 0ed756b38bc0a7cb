"""Energy-inequality and scaling verifications behind the sweep results.

Runs three independent checks and exits nonzero if any reports violations:

  1. annular test-mode energy inequality over the (ell, d, r, sigma) grid;
  2. harmonic-extension energy ratios of the first perforated eigenmode;
  3. unit-cell corrector norms along the critical hole scaling.

Each check writes its own CSV under ./out (or $STEKLOV_LAB_OUT).  The last
two document measured behaviour rather than a proven bound; see the
package README for the observed numbers.
"""

import sys

from steklov_lab.cli import main

if __name__ == "__main__":
    rc = 0
    for argv in (
        ["verify-lemma31"],
        ["verify-extension", "--eps", "1/16", "--beta", "1"],
        ["cell-scaling", "--eps", "1/8,1/16,1/32,1/64", "--beta", "1"],
    ):
        rc = max(rc, main(argv + sys.argv[1:]))
    sys.exit(rc)
