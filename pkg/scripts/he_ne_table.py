"""Helium and neon at 1.5e15 W/cm^2: parameters, ATI rate and harmonic constant."""

import argparse

from khpert import scenario
from khpert.harmonics import amplitude_constant
from khpert.rates import ati_rate_closed


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("scenarios", nargs="*", default=["he", "ne"])
    args = ap.parse_args()
    print(f"{'name':8} {'U_p/eV':>8} {'gamma':>7} {'n0':>3} {'order':>5} {'lam/a':>7} {'Gamma/eV':>9} {'C/eV^-1':>10}")
    for name in args.scenarios:
        s = scenario.load(name)
        r = s.report()
        w, Up, IB = s.laser.photon_energy_omega, s.laser.ponderomotive_Up, s.atom.ionization_IB
        G = ati_rate_closed(s.gamma, w, Up, IB).total_rate_Gamma
        C = amplitude_constant(s.atom.Z, w, Up, s.gamma)
        print(f"{r['name']:8} {Up:8.2f} {s.gamma:7.4f} {r['n0']:3d} {r['first_order']:5d} "
              f"{r['lambdaL_over_a']:7.1f} {G:9.5f} {C:10.3e}")


if __name__ == "__main__":
    main()
