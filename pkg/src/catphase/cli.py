"""Command-line front end: phase-space grid emission, amplifier runs,
round-trip reports, sifting studies, and the verification suite.

Exit codes: 0 success, 1 usage error, 2 numeric guard tripped,
3 verification failure.
"""

import argparse
import json
import sys
import warnings

import numpy as np

from .amplifier import AmplifierGain, amplified_p, amplify_q, sigma_of_gain
from .gendelta import AnalyticTestFunction, cancellation_factor, sift, sift_shifted_line
from .numerics import QuadratureSpec
from .quasiprob import Grid2D, p_cat_terms, p_representation_grid, q_function, wigner_fock
from .reconstruct import roundtrip_report
from .states import CatStateSpec
from .verify import run_all

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERIC = 2
EXIT_VERIFY = 3

ROUNDTRIP_FAIL_THRESHOLD = 1e-8


class UsageError(Exception):
    pass


def _add_state_args(parser):
    parser.add_argument("--alpha1", nargs=2, type=float, metavar=("RE", "IM"),
                        help="first coherent amplitude")
    parser.add_argument("--alpha2", nargs=2, type=float, metavar=("RE", "IM"),
                        help="second coherent amplitude")
    parser.add_argument("--zeta", nargs=2, type=float, metavar=("RE", "IM"),
                        help="relative coefficient of the second component")


def _add_grid_args(parser):
    parser.add_argument("--bounds", nargs=4, type=float,
                        metavar=("XMIN", "XMAX", "YMIN", "YMAX"))
    parser.add_argument("--nx", type=int)
    parser.add_argument("--ny", type=int)
    parser.add_argument("--format", choices=("csv", "json"))
    parser.add_argument("--out", help="output path; '-' or absent = stdout")
    parser.add_argument("--timestamp",
                        help="metadata timestamp string; omitted from output unless given")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="catphase",
        description="Phase-space toolkit for Schrodinger cat states")
    parser.add_argument("--config",
                        help="JSON file of argument defaults; explicit flags win")
    sub = parser.add_subparsers(dest="command")

    p_grid = sub.add_parser("grid", help="emit a sampled phase-space field")
    _add_state_args(p_grid)
    _add_grid_args(p_grid)
    p_grid.add_argument("--field",
                        choices=("q", "wigner", "p_regularized", "p_amplified"))
    p_grid.add_argument("--fock-n", type=int, help="photon number for --field wigner")
    p_grid.add_argument("--gain", type=float, help="amplitude gain for --field p_amplified")
    p_grid.add_argument("--sigma", type=float,
                        help="regularization width for --field p_regularized")

    p_amp = sub.add_parser("amplify", help="amplified Q or P field")
    _add_state_args(p_amp)
    _add_grid_args(p_amp)
    p_amp.add_argument("--gain", type=float)
    p_amp.add_argument("--field", choices=("q", "p"))

    p_rt = sub.add_parser("roundtrip", help="density-matrix round-trip report")
    _add_state_args(p_rt)
    p_rt.add_argument("--n-max", type=int)

    p_sift = sub.add_parser("sift", help="sifting study over a sigma schedule")
    p_sift.add_argument("--z0", nargs=2, type=float, metavar=("RE", "IM"))
    p_sift.add_argument("--sigma0", type=float)
    p_sift.add_argument("--levels", type=int,
                        help="number of sigma halvings in the schedule")
    p_sift.add_argument("--monomial", type=int,
                        help="test function x^N (mutually exclusive with the envelope)")
    p_sift.add_argument("--envelope-scale", type=float)
    p_sift.add_argument("--envelope-coeffs", nargs="+", type=float,
                        help="polynomial coefficients, lowest degree first")
    p_sift.add_argument("--halfwidth", type=float)
    p_sift.add_argument("--nodes", type=int)
    p_sift.add_argument("--out")

    sub.add_parser("verify", help="run every verification criterion")
    return parser


def _apply_config(args):
    if not args.config:
        return args
    with open(args.config) as fh:
        cfg = json.load(fh)
    for key, value in cfg.items():
        dest = key.replace("-", "_")
        if not hasattr(args, dest):
            raise UsageError(f"unknown config key: {key}")
        if getattr(args, dest) is None:
            setattr(args, dest, value)
    return args


def _require(args, names):
    for name in names:
        if getattr(args, name.replace("-", "_")) is None:
            raise UsageError(f"missing required option --{name}")


def _spec_from(args):
    _require(args, ["alpha1", "alpha2", "zeta"])
    return CatStateSpec(complex(*args.alpha1), complex(*args.alpha2), complex(*args.zeta))


def _grid_from(args, semantics):
    _require(args, ["bounds"])
    nx = args.nx or 201
    ny = args.ny or nx
    x0, x1, y0, y1 = args.bounds
    return Grid2D(x0, x1, y0, y1, nx, ny, axis_semantics=semantics)


def _emit_grid(grid, args, meta):
    fmt = args.format or "csv"
    if args.timestamp is not None:
        meta["timestamp"] = args.timestamp
    # complex amplitudes serialize as "re+imj" strings in both formats
    meta = {k: (str(v) if isinstance(v, complex) else v) for k, v in meta.items()}
    stream = sys.stdout if args.out in (None, "-") else open(args.out, "w")
    try:
        if fmt == "json":
            stream.write(grid.to_json(meta=meta))
            stream.write("\n")
        else:
            grid.to_csv(stream, meta=[f"{k} = {v}" for k, v in meta.items()])
            # footer diagnostics stay comment-prefixed so the file still parses
            total = grid.integrate()
            stream.write(f"# integral = {total.real!r}\n")
            w_min = float(np.min(grid.values.real))
            if w_min < 0.0:
                stream.write(f"# min = {w_min!r} (negative values present)\n")
    finally:
        if stream is not sys.stdout:
            stream.close()


def cmd_grid(args):
    _require(args, ["field"])
    field = args.field
    if field == "wigner":
        _require(args, ["fock-n"])
        grid = _grid_from(args, "xp")
        grid = wigner_fock(args.fock_n, grid)
        meta = {"field": "wigner", "fock_n": args.fock_n, "axes": "xp"}
    else:
        spec = _spec_from(args)
        grid = _grid_from(args, "alpha")
        gx, gy = grid.meshgrid()
        alpha = gx + 1j * gy
        meta = {"field": field, "alpha1": spec.alpha1, "alpha2": spec.alpha2,
                "zeta": spec.zeta, "axes": "alpha"}
        if field == "q":
            grid.values = q_function(spec, alpha).astype(complex)
        elif field == "p_regularized":
            _require(args, ["sigma"])
            grid = p_representation_grid(p_cat_terms(spec), args.sigma, grid)
            meta["sigma"] = args.sigma
        elif field == "p_amplified":
            _require(args, ["gain"])
            if args.gain <= 1.0:
                print(f"error: P-function is singular at gain {args.gain} "
                      f"(sigma_of_gain({args.gain}) = {sigma_of_gain(max(args.gain, 1.0))}); "
                      "it cannot be sampled on a grid -- use p_regularized with an "
                      "explicit sigma instead", file=sys.stderr)
                return EXIT_NUMERIC
            grid.values = amplified_p(spec, AmplifierGain(args.gain), alpha).astype(complex)
            meta["gain"] = args.gain
    _emit_grid(grid, args, meta)
    return EXIT_OK


def cmd_amplify(args):
    _require(args, ["gain", "field"])
    spec = _spec_from(args)
    grid = _grid_from(args, "alpha")
    gain = AmplifierGain(args.gain)
    gx, gy = grid.meshgrid()
    alpha = gx + 1j * gy
    if args.field == "q":
        grid.values = amplify_q(spec, gain, alpha).astype(complex)
    else:
        if args.gain <= 1.0:
            print(f"error: sigma_of_gain({args.gain}) = 0; the amplified P-function "
                  "degenerates into the singular representation at unit gain",
                  file=sys.stderr)
            return EXIT_NUMERIC
        grid.values = amplified_p(spec, gain, alpha).astype(complex)
    meta = {"field": args.field, "gain": args.gain, "sigma": gain.sigma,
            "alpha1": spec.alpha1, "alpha2": spec.alpha2, "zeta": spec.zeta,
            "axes": "alpha"}
    _emit_grid(grid, args, meta)
    return EXIT_OK


def cmd_roundtrip(args):
    spec = _spec_from(args)
    report = roundtrip_report(spec, args.n_max or 30)
    print(report.to_json())
    if report.max_abs_deviation > ROUNDTRIP_FAIL_THRESHOLD:
        return EXIT_VERIFY
    return EXIT_OK


def cmd_sift(args):
    _require(args, ["z0", "sigma0"])
    if args.monomial is not None:
        f = AnalyticTestFunction.monomial(args.monomial)
        f_desc = {"family": "monomial", "degree": args.monomial}
    else:
        _require(args, ["envelope-scale"])
        coeffs = args.envelope_coeffs or [1.0]
        f = AnalyticTestFunction.gaussian_envelope(args.envelope_scale, coeffs)
        f_desc = {"family": "gaussian_envelope", "scale": args.envelope_scale,
                  "coeffs": coeffs}
    z0 = complex(*args.z0)
    levels = args.levels or 4
    sigmas = [args.sigma0 * 2.0 ** (-k) for k in range(levels)]
    quad = QuadratureSpec(center=z0.real, halfwidth=args.halfwidth or 12.0,
                          node_count=args.nodes or 8001)
    record = {
        "z0": [z0.real, z0.imag],
        "function": f_desc,
        "sigma_schedule": sigmas,
        "direct": [],
        "shifted": [],
        "continuation": _c_pair(f(z0)),
        "cancellation_factor": [cancellation_factor(z0, s) for s in sigmas],
    }
    for s in sigmas:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            record["direct"].append(_c_pair(sift(f, z0, s, quad)))
        record["shifted"].append(_c_pair(sift_shifted_line(f, z0, s, quad)))
    text = json.dumps(record)
    if args.out and args.out != "-":
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK


def _c_pair(v):
    v = complex(v)
    return [v.real, v.imag]


def cmd_verify(_args):
    results = run_all()
    all_ok = True
    for record in results:
        status = "PASS" if record["passed"] else "FAIL"
        all_ok &= record["passed"]
        print(f"[{status}] {record['criterion']}: {record['details']}")
    return EXIT_OK if all_ok else EXIT_VERIFY


COMMANDS = {
    "grid": cmd_grid,
    "amplify": cmd_amplify,
    "roundtrip": cmd_roundtrip,
    "sift": cmd_sift,
    "verify": cmd_verify,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        args = _apply_config(args)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OverflowError, FloatingPointError) as exc:
        print(f"numeric guard: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
