"""Driven two-level model: frame equivalence and harmonic parity versus drive strength."""

import argparse

import numpy as np

from khpert.twolevel import TwoLevelParams, dressed_coefficient, emission_spectrum, frame_equivalence_residual


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--omega0", type=float, default=0.37)
    ap.add_argument("--omega", type=float, default=1.0)
    ap.add_argument("--cycles", type=int, default=20)
    ap.add_argument("--floor", type=float, default=1e-6)
    args = ap.parse_args()
    print("Omega,2Omega_over_omega,J0_coefficient_eV,frame_residual,odd_orders,even_orders")
    for Om in np.linspace(0.0, 3.0, 7):
        p = TwoLevelParams(args.omega0, float(Om), args.omega)
        res = frame_equivalence_residual(p, args.cycles)
        orders = emission_spectrum(p, 64).harmonic_orders(rel_floor=args.floor)
        odd = " ".join(str(m) for m in orders if m % 2)
        even = " ".join(str(m) for m in orders if m % 2 == 0)
        print(f"{Om:.2f},{p.bessel_argument:.3f},{dressed_coefficient(0, p):.4e},{res:.2e},{odd},{even}")


if __name__ == "__main__":
    main()
