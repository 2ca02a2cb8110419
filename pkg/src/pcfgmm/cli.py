"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 runtime failure.
"""

from __future__ import annotations

import argparse
import math
import sys

from .analysis import samples_cor1, samples_cor2, theorem1_bounds, wilkinson_demo
from .experiments import estimate_means, load_scenario, records_to_csv, run_scenario, summarize
from .mixture import Mixture, center, mixture_variance, pcf, variance_aware_pcf
from .sampling import load_samples


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _floats(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of numbers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pcfgmm", description="Method-of-moments learning of uniform spherical Gaussian mixtures.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("pcf", help="pair correlation factor of a set of means")
    sp.add_argument("--means", type=_floats, required=True)
    sp.add_argument("--variances", type=_floats)

    sp = sub.add_parser("bounds", help="error bounds and sample-complexity formulas")
    sp.add_argument("--means", type=_floats, required=True)
    sp.add_argument("--delta", type=float, required=True)
    sp.add_argument("--eps", type=float, required=True)

    sp = sub.add_parser("simulate", help="run a scenario battery and write CSV")
    sp.add_argument("--scenario", required=True)
    sp.add_argument("--out")
    sp.add_argument("--threads", type=int, default=1)

    sp = sub.add_parser("estimate", help="estimate means from a sample file")
    sp.add_argument("--input", required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--delta", type=float, required=True)

    sp = sub.add_parser("demo", help="sensitivity demonstrations")
    sp.add_argument("name", choices=["wilkinson"])
    return p


def _fmt_list(xs) -> str:
    return ", ".join(repr(float(x)) for x in xs)


def cmd_pcf(args, out):
    report = pcf(Mixture(tuple(args.means)))
    means = sorted(args.means)
    print(f"means: {_fmt_list(means)}", file=out)
    print(f"per_mean_pcf: {_fmt_list(report.per_mean_pcf)}", file=out)
    print(f"min_pcf: {report.min_pcf!r}", file=out)
    print(f"min_gap: {report.min_gap!r}", file=out)
    if args.variances is not None:
        # keep each variance attached to its mean through the sort
        order = sorted(range(len(args.means)), key=lambda i: args.means[i])
        if len(args.variances) != len(args.means):
            raise UsageError("--variances must have as many entries as --means")
        tilde = variance_aware_pcf([args.means[i] for i in order], [args.variances[i] for i in order])
        print(f"variance_aware_pcf: {_fmt_list(tilde)}", file=out)


def cmd_bounds(args, out):
    raw = Mixture(tuple(args.means))
    centered, shift = center(raw.means)
    mix = Mixture(tuple(centered))
    rep = theorem1_bounds(mix)
    sigma = math.sqrt(mixture_variance(mix))
    if shift:
        print(f"# means centered by subtracting {shift!r}", file=out)
    print(f"k: {mix.k}", file=out)
    print(f"sigma: {sigma!r}", file=out)
    print("mean, pcf, threshold, error_coeff", file=out)
    for mu, (p, t, c) in zip(raw.means, rep.per_mean):
        print(f"{mu!r}, {p!r}, {t!r}, {c!r}", file=out)
    print(f"theorem1_threshold: {rep.theorem1_threshold!r}", file=out)
    print(f"eps_satisfies_threshold: {args.eps < rep.theorem1_threshold}", file=out)
    print(f"c_sigma_k: {rep.c_sigma_k!r}", file=out)
    c1 = samples_cor1(args.eps, args.delta, mix)
    print(f"samples_cor1: {c1.value}{' (saturated)' if c1.saturated else ''}", file=out)
    if 0 < args.eps < 1:
        c2 = samples_cor2(args.eps, args.delta, mix.k, sigma)
        print(f"samples_cor2: {c2.value}{' (saturated)' if c2.saturated else ''}", file=out)


def cmd_simulate(args, out):
    scenario = load_scenario(args.scenario)
    records = run_scenario(scenario, threads=args.threads)
    text = records_to_csv(records, scenario.k)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
        s = summarize(records)
        print(
            f"{scenario.name}: {s.trials} trials, median max_error {s.median_max_error:.6g}, "
            f"within bound {s.within_bound_fraction:.3f}, failures {s.failures}",
            file=out,
        )
    else:
        out.write(text)


def cmd_estimate(args, out):
    samples = load_samples(args.input)
    if not 0 < args.delta < 1:
        raise UsageError("--delta must lie in (0, 1)")
    means, flagged, _ = estimate_means(samples, args.k, args.delta)
    print(",".join(f"mean_{i}" for i in range(1, args.k + 1)), file=out)
    print(",".join(repr(m) for m in means), file=out)
    if flagged:
        print(f"# {flagged} roots had non-negligible imaginary parts", file=out)


def cmd_demo(args, out):
    before, after = wilkinson_demo()
    print("Wilkinson polynomial (x-1)(x-2)...(x-20)", file=out)
    print(f"largest root, exact coefficients:          {before!r}", file=out)
    print(f"largest real root, x^19 coeff -= 2**-23:    {after!r}", file=out)


COMMANDS = {"pcf": cmd_pcf, "bounds": cmd_bounds, "simulate": cmd_simulate, "estimate": cmd_estimate, "demo": cmd_demo}


_LIST_FLAGS = ("--means", "--variances")


def _glue_list_values(argv: list[str]) -> list[str]:
    # "--means -1,0,1" would otherwise be read as an unknown flag "-1,0,1"
    out, i = [], 0
    while i < len(argv):
        if argv[i] in _LIST_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-") and (argv[i + 1][1:2].isdigit() or argv[i + 1][1:2] == "."):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    argv = _glue_list_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"pcfgmm: error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError, ArithmeticError) as exc:
        print(f"pcfgmm: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
