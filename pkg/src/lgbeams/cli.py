"""Command-line surface: eval, propagate, decompose, render, verify.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O
failure, 4 numerical guard trip.
"""

from __future__ import annotations

import argparse
import csv
import sys

from .analytic import default_grid, eval_lg_mode
from .core import BeamParams, ModeIndex, make_grid, norm
from .decomposition import decompose, oam_spectrum, residual_power
from .fileio import intensity_image, phase_image, read_field, write_field, write_pgm
from .operators import oam_expectation
from .propagation import GuardError, propagate
from .spectral import center_value
from .verify import Rig, render_table, run_suite, suite_passed

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_GUARD = 4


def cmd_eval(args) -> int:
    params = BeamParams(k=args.k, b=args.b)
    grid = (make_grid(args.n, args.extent) if args.extent is not None
            else default_grid(params, z_max=args.z, n=args.n))
    field = eval_lg_mode(ModeIndex(args.l, args.p), params, grid, args.z)
    write_field(field, args.out)
    print(f"norm={norm(field):.12g} oam={oam_expectation(field):.12g}")
    return EXIT_OK


def cmd_propagate(args) -> int:
    field = read_field(args.infile)
    print(f"norm_in={norm(field):.12g}")
    center_in = abs(center_value(field.samples))
    peak = float(abs(field.samples).max()) if field.grid.n else 0.0
    for _ in range(args.steps):
        field = propagate(field, args.dz)
    write_field(field, args.out)
    print(f"norm_out={norm(field):.12g}")
    if center_in > 1e-9 * peak:  # meaningless for dark-core (vortex) input
        ratio = abs(center_value(field.samples)) / center_in
        print(f"on_axis_ratio={ratio:.12g}")
    return EXIT_OK


def cmd_decompose(args) -> int:
    field = read_field(args.infile)
    spectrum = decompose(field, args.lmax, args.pmax)
    print(f"{'l':>4} {'p':>4} {'re':>15} {'im':>15} {'power':>15}")
    for idx, c in spectrum.entries:
        print(f"{idx.l:>4} {idx.p:>4} {c.real:>15.6e} {c.imag:>15.6e} "
              f"{abs(c)**2:>15.6e}")
    captured = spectrum.power
    total = norm(field) ** 2
    print(f"captured_power={captured:.12g}")
    print(f"residual_power={residual_power(field, spectrum):.12g}")
    if total > 0 and captured < 0.999 * total:
        print("note: captured power is well below the field power; "
              "the mode window may be too small or the basis parameters "
              "mismatched", file=sys.stderr)
    powers, mean = oam_spectrum(spectrum)
    for l in sorted(powers):
        print(f"oam_power l={l:+d}: {powers[l]:.6e}")
    if mean is not None:
        print(f"oam_mean={mean:.12g}")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["l", "p", "re", "im", "power"])
            for idx, c in spectrum.entries:
                writer.writerow([idx.l, idx.p, repr(c.real), repr(c.imag),
                                 repr(abs(c) ** 2)])
    return EXIT_OK


def cmd_render(args) -> int:
    if not args.out.endswith(".pgm"):
        raise ValueError("--out must end with .pgm")
    field = read_field(args.infile)
    image = intensity_image(field) if args.what == "intensity" else phase_image(field)
    write_pgm(image, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    rig = Rig(k=args.k, b=args.b, n=args.n, extent=args.extent,
              lmax=args.lmax, pmax=args.pmax)
    if args.suite == "all":
        from .verify import SUITES
        names = list(SUITES)
    else:
        names = [args.suite]
    ok = True
    for name in names:
        checks = run_suite(name, rig)
        print(render_table(name, checks))
        ok = ok and suite_passed(checks)
    return EXIT_OK if ok else EXIT_VERIFY_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lgbeams",
        description="Beam-mode toolkit: evaluate, propagate, decompose, "
                    "render and verify transverse optical fields.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="sample an analytic mode into a field file")
    p.add_argument("--l", type=int, required=True, help="azimuthal index")
    p.add_argument("--p", type=int, required=True, help="radial index")
    p.add_argument("--k", type=float, required=True, help="wavenumber")
    p.add_argument("--b", type=float, required=True, help="Rayleigh range")
    p.add_argument("--z", type=float, default=0.0, help="plane coordinate")
    p.add_argument("--n", type=int, default=512, help="samples per axis")
    p.add_argument("--extent", type=float, default=None,
                   help="window half-width (default: 8 w(z))")
    p.add_argument("--out", required=True, help="output field file")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("propagate", help="advance a stored field along z")
    p.add_argument("--in", dest="infile", required=True, help="input field file")
    p.add_argument("--dz", type=float, required=True, help="step size")
    p.add_argument("--steps", type=int, default=1, help="number of steps")
    p.add_argument("--out", required=True, help="output field file")
    p.set_defaults(func=cmd_propagate)

    p = sub.add_parser("decompose", help="project a field onto the mode basis")
    p.add_argument("--in", dest="infile", required=True, help="input field file")
    p.add_argument("--lmax", type=int, required=True, help="max |l|")
    p.add_argument("--pmax", type=int, required=True, help="max p")
    p.add_argument("--csv", default=None, help="optional CSV export path")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("render", help="export intensity or phase as 16-bit PGM")
    p.add_argument("--in", dest="infile", required=True, help="input field file")
    p.add_argument("--what", choices=("intensity", "phase"), required=True)
    p.add_argument("--out", required=True, help="output image (.pgm)")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("verify", help="run a self-verification suite")
    p.add_argument("suite", choices=("orthonormality", "annihilation",
                                     "commutators", "synthesis", "oam",
                                     "propagation", "gouy", "residual",
                                     "decomposition", "discrepancy",
                                     "indexmap", "all"))
    p.add_argument("--k", type=float, default=2.0)
    p.add_argument("--b", type=float, default=1.0)
    p.add_argument("--n", type=int, default=512)
    p.add_argument("--extent", type=float, default=None)
    p.add_argument("--lmax", type=int, default=3)
    p.add_argument("--pmax", type=int, default=3)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
