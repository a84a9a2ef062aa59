"""Command-line front end emitting the capacity, tradeoff, BER, and link data.

Every subcommand writes CSV (or JSON for ``link``) with a reproducibility
manifest: the subcommand, its parameters, any seed, the tool version, and a
checksum of the emitted bytes. Reruns with an identical manifest produce
byte-identical output. Exit codes: 0 success, 2 usage error, 3 numerical
convergence failure.
"""

import argparse
import hashlib
import json
import sys
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__, capacity_limits, superchannel
from .ber_sim import hadamard_dr_ber, hadamard_jdr_ber, uncoded_bpsk_ber
from .dmc import ConvergenceError
from .link_budget import LinkParams, fresnel_number, mode_count, power_and_rate, required_modes


@dataclass(frozen=True)
class RunManifest:
    """Reproducibility record accompanying every output file."""

    subcommand: str
    parameters: dict
    seed: int | None
    version: str = __version__
    output_sha256: str = field(default="")

    def to_json(self):
        return json.dumps(asdict(self), indent=2, sort_keys=True) + "\n"


def _fmt(x):
    """Floats at 17 significant digits: enough to round-trip doubles exactly."""
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


def _csv(header, rows):
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def _emit(payload, manifest_params, subcommand, seed, out_path):
    digest = hashlib.sha256(payload.encode()).hexdigest()
    manifest = RunManifest(subcommand=subcommand, parameters=manifest_params,
                           seed=seed, output_sha256=digest)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(payload)
        with open(out_path + ".manifest.json", "w") as fh:
            fh.write(manifest.to_json())
    else:
        sys.stdout.write(payload)
        sys.stderr.write(manifest.to_json())
    return 0


def _log_grid(args):
    if args.nbar_min <= 0 or args.nbar_max <= args.nbar_min or args.points < 2:
        raise SystemExit2("need 0 < nbar-min < nbar-max and points >= 2")
    return np.geomspace(args.nbar_min, args.nbar_max, args.points)


class SystemExit2(SystemExit):
    def __init__(self, message):
        sys.stderr.write(f"error: {message}\n")
        super().__init__(2)


LIMIT_FAMILIES = ("ultimate", "holevo_bpsk", "c1_dolinar", "hadamard_envelope",
                  "rm_gm_envelope", "two_symbol")


def cmd_limits(args):
    grid = _log_grid(args)
    families = args.families.split(",") if args.families else list(LIMIT_FAMILIES)
    unknown = set(families) - set(LIMIT_FAMILIES)
    if unknown:
        raise SystemExit2(f"unknown families {sorted(unknown)}; choose from {LIMIT_FAMILIES}")
    m_range = range(1, args.m_max + 1)
    columns = {"nbar": grid}
    for fam in families:
        if fam == "ultimate":
            col = [capacity_limits.pie_ultimate(n) for n in grid]
        elif fam == "holevo_bpsk":
            col = [capacity_limits.holevo_bpsk(n) / n for n in grid]
        elif fam == "c1_dolinar":
            col = [capacity_limits.c1_bpsk_dolinar(n) / n for n in grid]
        elif fam == "hadamard_envelope":
            col = [capacity_limits.pie_envelope(n, "hadamard", m_range)[1] for n in grid]
        elif fam == "rm_gm_envelope":
            col = [capacity_limits.pie_envelope(n, "rm_gm", m_range)[1] for n in grid]
        else:
            points = superchannel.capacity_curves("two_symbol", None, grid)
            col = [pt.pie for pt in points]
        columns[fam] = col
    header = ["nbar"] + families
    rows = zip(*(columns[h] for h in header))
    payload = _csv(header, ([float(v) for v in row] for row in rows))
    params = {"nbar_min": args.nbar_min, "nbar_max": args.nbar_max,
              "points": args.points, "families": families, "m_max": args.m_max}
    return _emit(payload, params, "limits", None, args.out)


def cmd_tradeoff(args):
    try:
        modes_list = [int(tok) for tok in args.modes_list.split(",")]
    except ValueError:
        raise SystemExit2(f"bad --modes-list {args.modes_list!r}")
    if args.nr_min <= 0 or args.nr_max <= args.nr_min or args.points < 2:
        raise SystemExit2("need 0 < nr-min < nr-max and points >= 2")
    grid = np.geomspace(args.nr_min, args.nr_max, args.points)
    rows = []
    for modes in modes_list:
        for pt in capacity_limits.tradeoff_curve(modes, grid):
            rows.append([pt.modes, pt.n_r, pt.spectral_efficiency, pt.pie])
    payload = _csv(["modes", "n_r", "spectral_efficiency", "pie"], rows)
    params = {"modes_list": modes_list, "nr_min": args.nr_min,
              "nr_max": args.nr_max, "points": args.points}
    return _emit(payload, params, "tradeoff", None, args.out)


def cmd_superchannel(args):
    grid = _log_grid(args)
    if args.family != "two_symbol" and args.m is None:
        raise SystemExit2(f"family {args.family} requires --m")
    try:
        points = superchannel.capacity_curves(args.family, args.m, grid,
                                              receiver=args.receiver)
    except ValueError as exc:
        raise SystemExit2(str(exc))
    if args.family == "two_symbol":
        header = ["nbar", "bits_per_symbol", "pie", "c1", "ratio"]
        rows = []
        for pt in points:
            c1 = capacity_limits.c1_bpsk_dolinar(pt.nbar)
            rows.append([pt.nbar, pt.bits_per_symbol, pt.pie, c1, pt.bits_per_symbol / c1])
    else:
        header = ["nbar", "bits_per_symbol", "pie"]
        rows = [[pt.nbar, pt.bits_per_symbol, pt.pie] for pt in points]
    params = {"family": args.family, "m": args.m, "receiver": args.receiver,
              "nbar_min": args.nbar_min, "nbar_max": args.nbar_max, "points": args.points}
    return _emit(payload=_csv(header, rows), manifest_params=params,
                 subcommand="superchannel", seed=None, out_path=args.out)


def _child_seed(master, index):
    words = np.random.SeedSequence(entropy=master, spawn_key=(index,)).generate_state(2)
    return int(words[0]) << 32 | int(words[1])


def cmd_ber(args):
    grid = _log_grid(args)
    if args.trials < 10 ** 4:
        raise SystemExit2("need --trials >= 10000")
    seed = args.seed
    if seed is None:
        seed = int(np.random.SeedSequence().generate_state(1)[0])
        sys.stderr.write(f"generated seed: {seed}\n")
    rows = []
    for i, nbar in enumerate(grid):
        uncoded = uncoded_bpsk_ber(nbar)
        dr = hadamard_dr_ber(args.m, nbar, args.trials, _child_seed(seed, i))
        jdr = hadamard_jdr_ber(args.m, nbar)
        rows.append([float(nbar), uncoded.ber, dr.ber, dr.stderr, jdr.ber])
    payload = _csv(["nbar", "uncoded_dr", "hadamard_dr", "hadamard_dr_stderr",
                    "hadamard_jdr"], rows)
    params = {"m": args.m, "nbar_min": args.nbar_min, "nbar_max": args.nbar_max,
              "points": args.points, "trials": args.trials}
    return _emit(payload, params, "ber", seed, args.out)


def cmd_link(args):
    if (args.radii is None) == (args.areas is None):
        raise SystemExit2("give exactly one of --radii or --areas")
    def two_floats(spec, what):
        toks = spec.split(",")
        if len(toks) == 1:
            toks = toks * 2
        if len(toks) != 2:
            raise SystemExit2(f"bad {what} {spec!r}; give one value or tx,rx")
        return float(toks[0]), float(toks[1])
    n_r = args.se / args.pie
    try:
        if args.radii is not None:
            r_tx, r_rx = two_floats(args.radii, "--radii")
            params = LinkParams.from_radii(args.wavelength, args.range, r_tx, r_rx,
                                           args.slot_rate, n_r=n_r)
        else:
            a_tx, a_rx = two_floats(args.areas, "--areas")
            params = LinkParams(wavelength=args.wavelength, range=args.range,
                                tx_aperture_area=a_tx, rx_aperture_area=a_rx,
                                slot_rate=args.slot_rate, n_r=n_r)
    except ValueError as exc:
        raise SystemExit2(str(exc))
    counted = mode_count(params)
    n_r, nbar_star, modes_needed = required_modes(args.pie, args.se)
    power, rate = power_and_rate(params, args.pie)
    report = {
        "fresnel_number": fresnel_number(params),
        "mode_count": counted.modes,
        "n_r": n_r,
        "nbar_star": nbar_star,
        "modes_required": modes_needed,
        "power_watts": power,
        "rate_bps": rate,
    }
    if counted.regime_warning:
        report["regime_warning"] = counted.regime_warning
    payload = json.dumps(report, indent=2) + "\n"
    params_record = {"wavelength": args.wavelength, "range": args.range,
                     "radii": args.radii, "areas": args.areas,
                     "slot_rate": args.slot_rate, "pie": args.pie, "se": args.se}
    return _emit(payload, params_record, "link", None, args.out)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="jdrcap",
        description="Capacities and joint-detection receiver data for coherent-state optics",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_nbar_grid(p, lo, hi, points):
        p.add_argument("--nbar-min", type=float, default=lo)
        p.add_argument("--nbar-max", type=float, default=hi)
        p.add_argument("--points", type=int, default=points)

    p = sub.add_parser("limits", help="PIE of the capacity families on a log nbar grid")
    add_nbar_grid(p, 1e-6, 10.0, 200)
    p.add_argument("--families", default=None,
                   help=f"comma list from {','.join(LIMIT_FAMILIES)} (default all)")
    p.add_argument("--m-max", type=int, default=10, help="largest code order in envelopes")
    p.add_argument("--out", default=None)
    p.set_defaults(run=cmd_limits)

    p = sub.add_parser("tradeoff", help="PIE versus spectral efficiency per mode count")
    p.add_argument("--modes-list", default="1,2,10,100,189")
    p.add_argument("--nr-min", type=float, default=1e-3)
    p.add_argument("--nr-max", type=float, default=10.0)
    p.add_argument("--points", type=int, default=200)
    p.add_argument("--out", default=None)
    p.set_defaults(run=cmd_tradeoff)

    p = sub.add_parser("superchannel", help="capacity and PIE of one receiver family")
    p.add_argument("--family", required=True,
                   choices=("hadamard_jdr", "rm_gm", "rm_mpe", "two_symbol"))
    p.add_argument("--m", type=int, default=None)
    add_nbar_grid(p, 1e-6, 2.0, 100)
    p.add_argument("--receiver", choices=("structured", "mpe"), default="structured")
    p.add_argument("--out", default=None)
    p.set_defaults(run=cmd_superchannel)

    p = sub.add_parser("ber", help="bit error rates of the Hadamard code receivers")
    p.add_argument("--m", type=int, default=8)
    add_nbar_grid(p, 1e-3, 1e-1, 10)
    p.add_argument("--trials", type=int, default=100000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(run=cmd_ber)

    p = sub.add_parser("link", help="free-space link example report")
    p.add_argument("--wavelength", type=float, required=True)
    p.add_argument("--range", type=float, required=True)
    p.add_argument("--radii", default=None, help="aperture radius in m, or tx,rx")
    p.add_argument("--areas", default=None, help="aperture area in m^2, or tx,rx")
    p.add_argument("--slot-rate", type=float, required=True)
    p.add_argument("--pie", type=float, required=True)
    p.add_argument("--se", type=float, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(run=cmd_link)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except ConvergenceError as exc:
        sys.stderr.write(f"convergence failure: {exc}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
