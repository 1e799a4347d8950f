#!/usr/bin/env python3
"""Compare exact shifted norms with the two asymptotic predictor routes.

Example:
    python scripts/run_asymp_study.py --q 0.5 --offsets 1,1 --n-min 6 --n-max 14
    python scripts/run_asymp_study.py --phi "exp(z)" --ratio "exp(0.3*(z-1/z))" \
        --offsets 0,1 --digits 80
"""

import argparse
import sys

from mpmath import mp

from thdet.asymptotics import AsymptoticEngine
from thdet.cli import parse_symbol
from thdet.config import precision_ctx
from thdet.determinants import THSystem, norm_h
from thdet.errors import DegeneratePredictor, GenericityFailed, ThdetError
from thdet.symbols import IsingParams, ising_symbols, sym_product


def build_args():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=str, default=None)
    ap.add_argument("--coupling", type=str, default=None)
    ap.add_argument("--phi", type=str, default=None)
    ap.add_argument("--ratio", type=str, default=None)
    ap.add_argument("--offsets", type=str, default="1,1")
    ap.add_argument("--n-min", type=int, default=4)
    ap.add_argument("--n-max", type=int, default=12)
    ap.add_argument("--digits", type=int, default=60)
    ap.add_argument("--m-order", type=int, default=64)
    ap.add_argument("--nodes", type=int, default=256)
    return ap.parse_args()


def main():
    args = build_args()
    dr, ds = (int(x) for x in args.offsets.split(","))
    with precision_ctx(args.digits):
        if args.q is not None:
            coupling = mp.mpf(args.coupling) if args.coupling else mp.mpf(args.q) ** 2
            syms = ising_symbols(IsingParams(q=mp.mpf(args.q), coupling=coupling))
            phi, weight, ratio = syms.phi_unit, syms.weight_unit, syms.multiplier
        else:
            phi = parse_symbol(args.phi)
            ratio = parse_symbol(args.ratio)
            weight = sym_product(ratio, phi)
        engine = AsymptoticEngine(
            phi, ratio, digits=args.digits,
            m_order=args.m_order, nodes=args.nodes,
        )
        sys_ = THSystem(
            phi=phi, weight=weight, toeplitz_offset=dr, hankel_offset=ds,
            digits=args.digits, m_order=args.m_order, nodes=args.nodes,
        )
        print(f"# offsets=({dr},{ds}) digits={args.digits} "
              f"m_order={args.m_order} nodes={args.nodes}")
        print("n, exact, model-route, closed-form, rel(model), rel(closed)")
        model_route = (
            engine.predict_h11 if (dr, ds) == (1, 1) else engine.predict_h01_model
        )
        for n in range(args.n_min, args.n_max + 1):
            exact = norm_h(sys_, n)
            values, rels = [], []
            for predict in (model_route, engine.predict_h01):
                try:
                    value = predict(n + 1)
                    values.append(mp.nstr(value.real, 20))
                    rels.append(mp.nstr(abs(value - exact) / abs(exact), 6))
                except (DegeneratePredictor, GenericityFailed) as exc:
                    values.append(f"degenerate({type(exc).__name__})")
                    rels.append("-")
            print(", ".join(
                [str(n), mp.nstr(exact.real, 20)] + values + rels
            ))
    return 0


if __name__ == "__main__":
    try:
        sys.exit(main())
    except ThdetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        sys.exit(2)
