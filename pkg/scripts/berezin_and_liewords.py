#!/usr/bin/env python3
"""Run the density pipeline and the universal Lie-word fit.

First half: for a chosen bracket coefficient phi, build the star product,
read the one-sided operator series ad_x off its tables, solve for the
finite y-operator S, and compute the density f together with tau = -S f.
The defining identity phi * (1 + dy . S) f = 1 is re-checked exactly.

Second half: fit universal coefficients Lambda_{sigma,tau} on pairs of
permutation words so that the resulting ansatz reproduces the order-(k+1)
operator for every sample bracket simultaneously.
"""

from __future__ import annotations

import argparse

from starplane import berezin_pipeline, docs, fit_lie_words, parse_poly
from starplane.docs import render
from starplane.poly import format_poly


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--phi", default="x*y", help="bracket coefficient")
    ap.add_argument("--order", type=int, default=3, help="density truncation order")
    ap.add_argument("--k", type=int, default=2, help="Lie-word fit order")
    ap.add_argument(
        "--samples",
        default="x*y,x^2*y,x*y^2,x^3*y^2",
        help="comma-separated sample brackets for the fit",
    )
    args = ap.parse_args()

    phi = parse_poly(args.phi)
    print(f"density pipeline for phi = {format_poly(phi)}, order {args.order}")
    data = berezin_pipeline(phi, args.order)
    print(render(docs.berezin_doc(data)), end="")

    samples = [parse_poly(s) for s in args.samples.split(",")]
    print()
    print(f"Lie-word fit at k = {args.k} over {len(samples)} samples")
    report = fit_lie_words(samples, args.k)
    print(render(docs.fit_report_doc(report)), end="")


if __name__ == "__main__":
    main()
