#!/usr/bin/env python3
"""Regenerate the CSV files under data/ from public sources.

The repository already ships the CSVs, so running this is only needed to
rebuild them from scratch. Sources:

  iris.csv    scikit-learn's bundled copy of Fisher's iris data
              (150 rows, 4 features, species name as label column).
  wdbc.csv    scikit-learn's bundled Wisconsin diagnostic breast cancer
              data (569 rows, 30 features, M/B label column).
  boston.csv  the Harrison & Rubinfeld Boston housing data as published
              in the @stdlib/datasets-harrison-boston-house-prices npm
              package (506 rows, 13 features + medv target). The file is
              copied verbatim; install the package with
                npm install @stdlib/datasets-harrison-boston-house-prices
              and point --boston-src at its data/data.csv.

Usage: fetch_data.py [--out DIR] [--boston-src PATH]
"""

import argparse
import csv
import shutil
from pathlib import Path


def write_iris(out: Path) -> None:
    from sklearn import datasets

    ir = datasets.load_iris()
    cols = ["sepal_length", "sepal_width", "petal_length", "petal_width"]
    with open(out / "iris.csv", "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(cols + ["species"])
        for x, t in zip(ir.data, ir.target):
            w.writerow([f"{v:.1f}" for v in x] + [ir.target_names[t]])


def write_wdbc(out: Path) -> None:
    from sklearn import datasets

    wd = datasets.load_breast_cancer()
    cols = [n.replace(" ", "_") for n in wd.feature_names]
    with open(out / "wdbc.csv", "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(cols + ["diagnosis"])
        for x, t in zip(wd.data, wd.target):
            # scikit-learn encodes malignant as class 0
            w.writerow([repr(float(v)) for v in x] + ["M" if t == 0 else "B"])


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=Path(__file__).resolve().parent.parent / "data", type=Path)
    ap.add_argument("--boston-src", default=None, type=Path)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    write_iris(args.out)
    write_wdbc(args.out)
    if args.boston_src is not None:
        shutil.copy(args.boston_src, args.out / "boston.csv")
    print(f"wrote datasets to {args.out}")


if __name__ == "__main__":
    main()
