#!/usr/bin/env python3
"""Magnetization determinant sweep with geometric-convergence diagnostics.

Example:
    python scripts/run_ising_study.py --q 0.5 --coupling 0.25 --n-max 14
    python scripts/run_ising_study.py --q 0.3 --coupling 0.09 --digits 80
"""

import argparse
import sys

from mpmath import mp

from thdet.config import precision_ctx
from thdet.errors import ThdetError
from thdet.ising import criticality_study
from thdet.symbols import IsingParams


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=str, required=True)
    ap.add_argument("--coupling", type=str, required=True)
    ap.add_argument("--n-min", type=int, default=1)
    ap.add_argument("--n-max", type=int, default=12)
    ap.add_argument("--digits", type=int, default=60)
    ap.add_argument("--m-order", type=int, default=64)
    ap.add_argument("--nodes", type=int, default=256)
    args = ap.parse_args()

    with precision_ctx(args.digits):
        study = criticality_study(
            IsingParams(q=mp.mpf(args.q), coupling=mp.mpf(args.coupling)),
            args.n_max, digits=args.digits, m_order=args.m_order,
            nodes=args.nodes, n_min=args.n_min,
        )
        print(f"# case = {study.case}")
        print("n, M_n, |M_n - M_(n-1)|")
        for row in study.rows:
            diff = "-" if row.diff is None else mp.nstr(row.diff, 6)
            print(f"{row.n}, {mp.nstr(row.value.real, 25)}, {diff}")
        ratio = (
            "-" if study.fitted_ratio is None else mp.nstr(study.fitted_ratio, 8)
        )
        print(f"# fitted_ratio = {ratio}")
        print(f"# max_imag_fraction = {mp.nstr(study.max_imag_fraction, 4)}")
    return 0


if __name__ == "__main__":
    try:
        sys.exit(main())
    except ThdetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        sys.exit(2)
