#!/usr/bin/env python3
"""Transform eigenvalues by level and spin layer.

Prints c(N, n) for a grid of levels and layers, optionally at several
deformation values, showing convergence toward 1 inside the level and
the hard cutoff beyond it.

    python3 scripts/spectrum_table.py --q 1/2 --q 9/10 --levels 4
"""

import argparse
import sys

from qsphere import Berezin, GnsContext, UqActions
from qsphere.session import SessionConfig


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", action="append", default=[])
    ap.add_argument("--levels", type=int, default=4)
    ap.add_argument("--max-spin", type=int, default=None)
    ns = ap.parse_args()

    q_texts = ns.q or ["1/2"]
    top = ns.max_spin if ns.max_spin is not None else ns.levels + 1

    for q_text in q_texts:
        cfg = SessionConfig(q_text=q_text)
        alg = cfg.build_algebra()
        ber = Berezin(GnsContext(alg, UqActions(alg)))
        print(f"q = {q_text}")
        header = "  N " + "".join(f"{'c(N,%d)' % n:>14}"
                                  for n in range(top + 1))
        print(header)
        for N in range(1, ns.levels + 1):
            spec = ber.spectrum(N, max_spin=max(top, N))
            cells = "".join(
                f"{float(spec.eigenvalue(n).to_complex().real):>14.10f}"
                for n in range(top + 1))
            print(f"{N:>3} {cells}")
        print()
    return 0


if __name__ == "__main__":
    sys.exit(main())
