#!/usr/bin/env python3
"""Regenerate every figure dataset and the link example in one shot.

Writes CSV/JSON files (each with its reproducibility manifest) under the
output directory:

    pie_vs_nbar.csv          capacity-family PIE curves on a log nbar grid
    pie_vs_se.csv            PIE versus spectral efficiency per mode count
    rm_gm_m{1..10}.csv       RM(1,m) Green-Machine receiver curves
    rm_mpe_m{1..10}.csv      RM(1,m) minimum-error-measurement curves
    two_symbol_structured.csv / two_symbol_mpe.csv   I2/C1 ratio curves
    ber_m8.csv               uncoded / coded-DR / coded-JDR bit error rates
    link_example.json        the 1.55 um, 1 km, 200 MHz link report

Usage: python scripts/reproduce_figures.py [outdir] [--fast]
"""

import argparse
import sys
from pathlib import Path

from jdrcap.cli import main as jdrcap_main


def run(argv):
    print("jdrcap", " ".join(argv))
    code = jdrcap_main(argv)
    if code != 0:
        sys.exit(code)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("outdir", nargs="?", default="out")
    ap.add_argument("--fast", action="store_true",
                    help="coarser grids and fewer Monte Carlo trials")
    args = ap.parse_args()
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    points = "60" if args.fast else "200"
    trials = "20000" if args.fast else "200000"

    run(["limits", "--points", points, "--out", str(out / "pie_vs_nbar.csv")])
    run(["tradeoff", "--modes-list", "1,2,10,100,189", "--points", points,
         "--out", str(out / "pie_vs_se.csv")])
    for m in range(1, 11):
        run(["superchannel", "--family", "rm_gm", "--m", str(m),
             "--nbar-min", "1e-6", "--nbar-max", "2", "--points", points,
             "--out", str(out / f"rm_gm_m{m}.csv")])
        run(["superchannel", "--family", "rm_mpe", "--m", str(m),
             "--nbar-min", "1e-6", "--nbar-max", "2", "--points", points,
             "--out", str(out / f"rm_mpe_m{m}.csv")])
    for receiver in ("structured", "mpe"):
        run(["superchannel", "--family", "two_symbol", "--receiver", receiver,
             "--nbar-min", "1e-3", "--nbar-max", "2", "--points",
             "40" if args.fast else "200",
             "--out", str(out / f"two_symbol_{receiver}.csv")])
    run(["ber", "--m", "8", "--nbar-min", "1e-3", "--nbar-max", "6e-2",
         "--points", "10", "--trials", trials, "--seed", "20260810",
         "--out", str(out / "ber_m8.csv")])
    run(["link", "--wavelength", "1.55e-6", "--range", "1000", "--radii", "0.07",
         "--slot-rate", "2e8", "--pie", "10", "--se", "5",
         "--out", str(out / "link_example.json")])
    print(f"wrote {len(list(out.iterdir()))} files to {out}/")


if __name__ == "__main__":
    main()
