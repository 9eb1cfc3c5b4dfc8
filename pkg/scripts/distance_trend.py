#!/usr/bin/env python3
"""Distance lower bounds across levels, printed as a small table.

Reproduces the level trend: the certified bound and the worst probe
defect ratio both shrink as the level grows.

    python3 scripts/distance_trend.py --q 1/2 --levels 5 --M 4
"""

import argparse
import sys

from qsphere.session import SessionConfig
from qsphere.suites import theoremb_rows


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", default="1/2")
    ap.add_argument("--levels", type=int, default=5)
    ap.add_argument("--M", type=int, default=4)
    ap.add_argument("--trunc", type=int, default=200)
    ap.add_argument("--restarts", type=int, default=8)
    ap.add_argument("--seed", type=int, default=0)
    ns = ap.parse_args()

    cfg = SessionConfig(q_text=ns.q, norm_truncation=ns.trunc,
                        search_truncation=ns.M, restarts=ns.restarts,
                        seed=ns.seed)
    rows = theoremb_rows(cfg, range(1, ns.levels + 1))

    print(f"{'N':>3} {'dist_lb':>12} {'heuristic':>12} "
          f"{'r_max':>12} {'lip_slack_min':>14}")
    for r in rows:
        print(f"{r['N']:>3} {r['dist_lb']:>12.8f} "
              f"{r['dist_heuristic']:>12.8f} {r['max_probe_ratio']:>12.8f} "
              f"{r['min_lipSlack']:>14.8f}")

    drops = all(rows[i + 1]["dist_lb"] <= rows[i]["dist_lb"] + cfg.trend_tol
                for i in range(len(rows) - 1))
    print("\ntrend non-increasing:", "yes" if drops else "NO")
    return 0 if drops else 1


if __name__ == "__main__":
    sys.exit(main())
