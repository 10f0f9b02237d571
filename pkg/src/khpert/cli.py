"""Command-line front end.

    khpert params he
    khpert rates ne --oracle
    khpert spectrum he --rabi 0.1 --out results/
    khpert twolevel --omega0 0.37 --Omega 3 --omega 1
    khpert selftest

Files go to ``--out`` (or ``$KHPERT_OUTPUT_DIR``); without either, the main
table is printed to stdout. Exit codes: 0 success, 2 invalid scenario or
usage, 3 accuracy or tolerance failure, 4 physics-domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict
from pathlib import Path

import numpy as np

from . import __version__
from . import checks
from . import scenario as scn
from .errors import AccuracyError, KHError, SchemaError
from .harmonics import build_spectrum, dipole_power_spectrum, rabi_shifted_lines
from .khpotential import vk_grid_rows
from .rates import ati_rate_closed, golden_rule_consistency
from .twolevel import (
    TwoLevelParams,
    dressed_coefficient,
    emission_spectrum,
    expectation,
    propagate_dressed,
    propagate_original,
    transform_to_dressed,
)

log = logging.getLogger("khpert")

EXIT_OK = 0
EXIT_SCHEMA = 2
EXIT_ACCURACY = 3
EXIT_DOMAIN = 4
OUTPUT_ENV = "KHPERT_OUTPUT_DIR"
FRAME_TOLERANCE = 1e-8
ORACLE_TOLERANCE = 1e-2


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


def _json(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _provenance(command: str, args: argparse.Namespace, scenario=None) -> dict:
    opts = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "out", "command", "threads")}
    doc = {"tool": "khpert", "version": __version__, "command": command, "options": opts}
    if scenario is not None:
        doc["scenario"] = scenario.source
        doc["derived"] = scenario.report()
    return doc


class Output:
    """Writes named artifacts to a directory, or the primary one to stdout."""

    def __init__(self, directory):
        self.directory = Path(directory) if directory else None
        if self.directory:
            self.directory.mkdir(parents=True, exist_ok=True)

    def emit(self, files: dict, primary: str):
        if self.directory is None:
            sys.stdout.write(files[primary])
            return
        for name, text in files.items():
            (self.directory / name).write_text(text, encoding="utf-8")
        print(f"wrote {', '.join(sorted(files))} to {self.directory}")


def cmd_params(args, out: Output) -> int:
    s = scn.load(args.scenario)
    doc = {"parameters": s.report(), "provenance": _provenance("params", args, s)}
    out.emit({"params.json": _json(doc)}, "params.json")
    return EXIT_OK


def cmd_rates(args, out: Output) -> int:
    s = scn.load(args.scenario)
    w, Up, IB = s.laser.photon_energy_omega, s.laser.ponderomotive_Up, s.atom.ionization_IB
    n_max = args.n_max if args.n_max is not None else s.n_max
    rel_tol = args.rel_tol if args.rel_tol is not None else s.rel_tol
    try:
        res = ati_rate_closed(s.gamma, w, Up, IB, n_max=n_max, rel_tol=rel_tol)
    except AccuracyError as exc:
        print(f"tail-bound failure: {exc}", file=sys.stderr)
        print(f"partial sum {exc.estimate:.6e} eV, tail bound {exc.error:.6e} eV", file=sys.stderr)
        return EXIT_ACCURACY
    doc = json.loads(res.to_json())
    doc["relative_tail_bound"] = res.tail_bound / res.total_rate_Gamma
    doc["provenance"] = _provenance("rates", args, s)
    files = {"rates.csv": res.to_csv(), "rates.json": _json(doc)}
    status = EXIT_OK
    if args.oracle:
        rows = golden_rule_consistency(w, Up, IB, args.oracle_channels)
        files["oracle.csv"] = _csv(["order", "closed_form_eV", "golden_rule_eV", "relative_deviation"], rows)
        worst = max(r[3] for r in rows)
        print(f"oracle: max relative deviation {worst:.3e} over {len(rows)} channels", file=sys.stderr)
        if worst > ORACLE_TOLERANCE:
            status = EXIT_ACCURACY
    print(f"Gamma = {res.total_rate_Gamma:.6g} eV (n0 = {res.n0}, {len(res.per_channel)} channels)",
          file=sys.stderr)
    out.emit(files, "rates.csv")
    return status


def cmd_spectrum(args, out: Output) -> int:
    s = scn.load(args.scenario)
    w, Up, IB = s.laser.photon_energy_omega, s.laser.ponderomotive_Up, s.atom.ionization_IB
    damping = 0.0
    if not args.no_damping:
        damping = ati_rate_closed(s.gamma, w, Up, IB, n_max=s.n_max, rel_tol=s.rel_tol).total_rate_Gamma
    x_max = args.x_max if args.x_max is not None else s.x_max
    spec = build_spectrum(w, IB, Up, s.gamma, s.atom.Z, damping=damping, x_max=x_max,
                          provenance=_provenance("spectrum", args, s))
    if args.rabi:
        spec = rabi_shifted_lines(spec, args.rabi)
    t, sig, ps = dipole_power_spectrum(spec, w, min_cycles=args.cycles)
    keep = ps.frequency <= 1.25 * max(ln.frequency for ln in spec.lines)
    files = {
        "lines.csv": spec.to_csv(),
        "spectrum.json": spec.to_json() + "\n",
        "timeseries.csv": _csv(["t_eV-1", "dipole_x_eV-1"], zip(t, sig)),
        "fft.csv": _csv(["angular_frequency_eV", "power_eV-2"], zip(ps.frequency[keep], ps.power[keep])),
    }
    print(f"{len(spec.lines)} lines from order {spec.lines[0].order}, C = {spec.constant_C:.4e} eV^-1, "
          f"Gamma = {damping:.4g} eV", file=sys.stderr)
    out.emit(files, "lines.csv")
    return EXIT_OK


def cmd_twolevel(args, out: Output) -> int:
    params = TwoLevelParams(args.omega0, args.Omega, args.omega)
    steps = args.cycles * args.steps_per_cycle
    T = args.cycles * params.period
    psi = propagate_original(params, np.array([1.0, 0.0], dtype=complex), T, steps)
    phi = propagate_dressed(params, transform_to_dressed([1.0, 0.0], params, 0.0), T, steps, args.n_max)
    t = np.arange(steps + 1) * (T / steps)
    f = params.Omega / params.omega * np.sin(params.omega * t)
    up_dressed = np.abs(np.cos(f) * phi[:, 0] - 1j * np.sin(f) * phi[:, 1]) ** 2
    up_orig = np.abs(psi[:, 0]) ** 2
    residual = float(np.max(np.abs(up_orig - up_dressed)))
    obs = expectation(psi, args.observable)

    em = emission_spectrum(params, T_cycles=max(args.cycles, 64), observable=args.observable,
                           steps_per_cycle=args.steps_per_cycle)
    orders = em.harmonic_orders(rel_floor=args.floor)
    harm_rows = [(m, m * params.omega, em.harmonic_power(m)) for m in orders]
    stride = max(1, args.steps_per_cycle // 64)
    doc = {
        "params": asdict(params),
        "bessel_argument_2Omega_over_omega": params.bessel_argument,
        "dressed_coefficient_n0_eV": dressed_coefficient(0, params),
        "frame_residual": residual,
        "frame_tolerance": FRAME_TOLERANCE,
        "harmonic_orders": orders,
        "provenance": _provenance("twolevel", args),
    }
    files = {
        "trajectory.csv": _csv(["t_eV-1", "P_up_original", "P_up_dressed", f"{args.observable}_expectation"],
                               zip(t[::stride], up_orig[::stride], up_dressed[::stride], obs[::stride])),
        "harmonics.csv": _csv(["order", "frequency_eV", "power"], harm_rows),
        "emission.csv": _csv(["angular_frequency_eV", "power"], zip(em.spectrum.frequency, em.spectrum.power)),
        "twolevel.json": _json(doc),
    }
    print(f"frame residual {residual:.3e}; dressed n=0 coefficient {doc['dressed_coefficient_n0_eV']:.3e} eV; "
          f"harmonics {orders}", file=sys.stderr)
    out.emit(files, "harmonics.csv")
    return EXIT_OK if residual <= FRAME_TOLERANCE else EXIT_ACCURACY


def _grid_rows_for_x(job):
    x, ys, zs, kmax, lam, Z, soft = job
    return list(vk_grid_rows(kmax, [x], ys, zs, lam, Z, soft))


def _axis(spec: str, lam: float):
    start, stop, num = spec.split(":")
    return list(np.linspace(float(start), float(stop), int(num)) * lam)


def cmd_vkgrid(args, out: Output) -> int:
    s = scn.load(args.scenario)
    lam = s.laser.quiver_amplitude_lambdaL
    xs, ys, zs = (_axis(v, lam) for v in (args.x, args.y, args.z))
    soft = args.softening * lam
    jobs = [(x, ys, zs, args.kmax, lam, s.atom.Z, soft) for x in xs]
    if args.threads and args.threads > 1:
        with ProcessPoolExecutor(max_workers=args.threads) as pool:
            chunks = list(pool.map(_grid_rows_for_x, jobs))
    else:
        chunks = [_grid_rows_for_x(j) for j in jobs]
    rows = [r for chunk in chunks for r in chunk]
    out.emit({"vk_grid.csv": _csv(["k", "x_eV-1", "y_eV-1", "z_eV-1", "v_k_eV"], rows)}, "vk_grid.csv")
    return EXIT_OK


def cmd_selftest(args, out: Output) -> int:
    results = checks.run_all(set(args.criteria) if args.criteria else None)
    for r in results:
        print(r.line())
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} checks passed")
    if out.directory:
        rows = [(r.criterion, r.name, "PASS" if r.passed else "FAIL", r.detail) for r in results]
        (out.directory / "selftest.csv").write_text(_csv(["criterion", "check", "status", "detail"], rows),
                                                    encoding="utf-8")
    return EXIT_OK if passed == len(results) else EXIT_ACCURACY


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="khpert", description=__doc__.split("\n\n")[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=os.environ.get(OUTPUT_ENV),
                        help=f"output directory (default ${OUTPUT_ENV}, else stdout)")
    common.add_argument("--threads", type=int, default=1, help="worker cap for parallel grid evaluation")
    common.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("params", parents=[common], help="derived laser/atom parameters")
    sp.add_argument("scenario", help="scenario JSON path or bundled name (he, ne)")
    sp.set_defaults(func=cmd_params)

    sp = sub.add_parser("rates", parents=[common], help="above-threshold ionization rate")
    sp.add_argument("scenario")
    sp.add_argument("--n-max", type=int, default=None, help="fixed truncation (default: automatic)")
    sp.add_argument("--rel-tol", type=float, default=None, help="relative tail-bound tolerance")
    sp.add_argument("--oracle", action="store_true", help="cross-check channels with the golden rule")
    sp.add_argument("--oracle-channels", type=int, default=10)
    sp.set_defaults(func=cmd_rates)

    sp = sub.add_parser("spectrum", parents=[common], help="harmonic line table, time series and FFT")
    sp.add_argument("scenario")
    sp.add_argument("--no-damping", action="store_true", help="drop the e^{-Gamma t} envelope")
    sp.add_argument("--rabi", type=float, default=0.0, metavar="OMEGA_R", help="Rabi splitting in eV")
    sp.add_argument("--x-max", type=float, default=None, help="largest reduced energy x_n kept")
    sp.add_argument("--cycles", type=int, default=20, help="minimum optical cycles in the time series")
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("twolevel", parents=[common], help="driven two-level model in both frames")
    sp.add_argument("--omega0", type=float, default=0.37)
    sp.add_argument("--Omega", type=float, default=3.0)
    sp.add_argument("--omega", type=float, default=1.0)
    sp.add_argument("--cycles", type=int, default=64)
    sp.add_argument("--steps-per-cycle", type=int, default=512)
    sp.add_argument("--n-max", type=int, default=None, help="Jacobi-Anger truncation of the dressed Hamiltonian")
    sp.add_argument("--observable", choices=("sigma1", "sigma2", "sigma3"), default="sigma3")
    sp.add_argument("--floor", type=float, default=1e-6, help="relative power floor for harmonic peaks")
    sp.set_defaults(func=cmd_twolevel)

    sp = sub.add_parser("vkgrid", parents=[common], help="export v_k on a Cartesian grid")
    sp.add_argument("scenario")
    sp.add_argument("--kmax", type=int, default=8)
    sp.add_argument("--softening", type=float, default=1e-3, help="softening length in units of lambda_L")
    for axis, default in (("x", "-3:3:7"), ("y", "1.5:3:4"), ("z", "0:0:1")):
        sp.add_argument(f"--{axis}", default=default, help="start:stop:num in units of lambda_L")
    sp.set_defaults(func=cmd_vkgrid)

    sp = sub.add_parser("selftest", parents=[common], help="run the acceptance checks")
    sp.add_argument("--criteria", type=int, nargs="*", choices=sorted(checks.CHECKS))
    sp.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        out = Output(args.out)
        return args.func(args, out)
    except SchemaError as exc:
        for problem in exc.problems:
            print(f"schema error: {problem}", file=sys.stderr)
        return EXIT_SCHEMA
    except BrokenPipeError:
        sys.stderr.close()
        return EXIT_OK
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except KHError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
