"""Scan the first-order 3d0 admixture into the ground state versus lambda_L/a."""

import argparse

import numpy as np

from khpert.errors import PoleError
from khpert.hydrogen import rigidity_pole, rigidity_prefactor


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--min", type=float, default=0.1)
    ap.add_argument("--max", type=float, default=1000.0)
    ap.add_argument("--num", type=int, default=25)
    args = ap.parse_args()
    print(f"level crossing at lambda_L/a = {rigidity_pole():.6f}")
    print("lambdaL_over_a,peak_amplitude")
    for x in np.geomspace(args.min, args.max, args.num):
        try:
            peak = 2.0 * abs(rigidity_prefactor(x))  # max of |e^{i phi} - 1| is 2
        except PoleError:
            peak = float("inf")
        print(f"{x:.6g},{peak:.6e}")


if __name__ == "__main__":
    main()
