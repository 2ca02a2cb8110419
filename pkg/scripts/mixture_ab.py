"""Compare the two seven-component scenarios at matched sample counts."""

import argparse
from pathlib import Path

from pcfgmm.analysis import theorem1_bounds
from pcfgmm.experiments import Scenario, load_scenario, run_scenario, summarize
from pcfgmm.mixture import pcf

ROOT = Path(__file__).resolve().parent.parent


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[10**6])
    ap.add_argument("--trials", type=int)
    ap.add_argument("--threads", type=int, default=4)
    args = ap.parse_args()

    a = load_scenario(ROOT / "scenarios" / "mixtureA.json")
    b = load_scenario(ROOT / "scenarios" / "mixtureB.json")
    for s in (a, b):
        rep = theorem1_bounds(s.mixture())
        print(f"{s.name}: min_pcf {pcf(s.mixture()).min_pcf:.4e}, max error coeff {rep.theorem1_error_coeff:.4e}")
    print("n, median_A, median_B, flags_A, flags_B")
    for n in args.n:
        row = []
        flags = []
        for s in (a, b):
            t = Scenario(**{**s.__dict__, "n_override": n, "trials": args.trials or s.trials})
            recs = run_scenario(t, threads=args.threads)
            row.append(summarize(recs).median_max_error)
            flags.append(sorted(r.root_flags for r in recs)[len(recs) // 2])
        print(f"{n}, {row[0]:.4f}, {row[1]:.4f}, {flags[0]}, {flags[1]}")


if __name__ == "__main__":
    main()
