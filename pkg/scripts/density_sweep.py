#!/usr/bin/env python3
"""Sweep the dense window with two-anchor recipes and report the errors.

Targets are spaced uniformly across [2*v_oct + margin, 10*v_tet - margin];
each is realized as m replications of (k copies of the figure-eight FAL +
l copies of a synthetic link sitting just below the ceiling), and the row
records how close the recipe's density lands.

    python scripts/density_sweep.py --targets 100 --eps 1e-6 --out sweep.csv
"""

import argparse
import csv
import sys
from decimal import Decimal, localcontext

from fal_spectrum import BaseLink, ExactVolume, approximate_vd, builtin_catalog
from fal_spectrum.numerics import PrecisionContext, ten_v_tet, two_v_oct, v_tet


def near_ceiling_link(ctx: PrecisionContext) -> BaseLink:
    # vd_mod = (49*v_tet + (v_tet - 5e-6)) / 5 = 10*v_tet - 1e-6
    with localcontext() as c:
        c.prec = ctx.working_prec
        rem = v_tet(ctx) - Decimal("0.000005")
    return BaseLink(
        name="Ceil",
        volume=ExactVolume.from_fields("0", "49", str(rem)),
        augmentations=6,
        note="synthetic link just below the unattainable ceiling",
    )


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--targets", type=int, default=100, help="number of sweep targets")
    parser.add_argument("--eps", type=Decimal, default=Decimal("1e-6"), help="per-target tolerance")
    parser.add_argument("--margin", type=Decimal, default=Decimal("0.01"), help="gap kept to the window edges")
    parser.add_argument("--digits", type=int, default=30)
    parser.add_argument("--out", default=None, help="CSV path (stdout if omitted)")
    args = parser.parse_args(argv)

    ctx = PrecisionContext(args.digits)
    l41 = builtin_catalog()["L41"]
    ceiling = near_ceiling_link(ctx)
    with localcontext() as c:
        c.prec = ctx.working_prec
        lo = two_v_oct(ctx) + args.margin
        hi = ten_v_tet(ctx) - args.margin
        step = (hi - lo) / (args.targets - 1)
        targets = [lo + i * step for i in range(args.targets)]

    handle = open(args.out, "w", newline="", encoding="utf-8") if args.out else sys.stdout
    writer = csv.writer(handle, lineterminator="\n")
    writer.writerow(["target", "k", "l", "m", "achieved_vd", "error"])
    worst = Decimal(0)
    for target in targets:
        recipe = approximate_vd(target, l41, ceiling, args.eps, ctx)
        worst = max(worst, recipe.error)
        writer.writerow(
            [target, recipe.k, recipe.l, recipe.m, recipe.achieved_vd.evaluated, recipe.error]
        )
    if handle is not sys.stdout:
        handle.close()
        print(f"{args.targets} targets swept, worst error {worst}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
