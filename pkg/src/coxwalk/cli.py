"""Command-line front end: ``coxwalk <command> [options]``.

Exit status is 0 on success, 2 for bad arguments and 1 when a computation
fails.  The default seed is :data:`coxwalk.walker.DEFAULT_SEED`; the
``COXWALK_SEED`` environment variable replaces that default (an explicit
``--seed`` still wins).
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import CoxwalkError, DimensionMismatch, UnsupportedType
from .rational import fmt
from .roots import build_root_system
from .walker import DEFAULT_SEED


class BadArguments(Exception):
    pass


def _default_seed() -> int:
    env = os.environ.get("COXWALK_SEED")
    if env is None:
        return DEFAULT_SEED
    try:
        return int(env)
    except ValueError:
        raise BadArguments(f"COXWALK_SEED must be an integer, got {env!r}")


def _rs(args):
    if not args.type:
        raise BadArguments("--type is required")
    return build_root_system(args.type)


def _positive(value: int, name: str):
    if value is None or value < 0:
        raise BadArguments(f"{name} must be a nonnegative integer")


def _emit(args, text: str):
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------

def cmd_simulate(args):
    from . import walker as wk
    from .affine import reduced_word

    rs = _rs(args)
    steps = 10 if args.steps is None else args.steps
    _positive(steps, "--steps")
    if args.trials and args.trials > 1:
        freq = wk.empirical_chamber_frequencies(rs, steps, args.trials,
                                                args.seed, args.variant,
                                                args.threads)
        direction = wk.empirical_direction(rs, steps, args.trials, args.seed,
                                           args.variant, args.threads)
        undecided = freq.pop(None)
        _emit(args, _dump({
            "type": rs.name, "variant": args.variant, "steps": steps,
            "trials": args.trials, "seed": args.seed,
            "chambers": [{"word": w.word_str(), "frequency": f}
                         for w, f in freq.items()],
            "undecided": undecided,
            "direction": [float(f"{x:.12g}") for x in direction]}))
        return
    traj = wk.simulate(rs, steps, args.variant, args.seed)
    if args.format == "csv":
        _emit(args, traj.to_csv())
    else:
        _emit(args, _dump({"type": rs.name, "variant": args.variant,
                           "seed": args.seed, "steps": steps,
                           "final": traj.final.to_json(),
                           "generators": traj.generators,
                           "word": list(reduced_word(traj.final))}))


def cmd_stationary(args):
    from . import wchain as wc

    rs = _rs(args)
    zeta = wc.stationary(rs, args.weights)
    _emit(args, _dump({"type": rs.name, "weights": args.weights,
                       "zeta": zeta.to_json_list()}))


def cmd_psi(args):
    from . import wchain as wc

    rs = _rs(args)
    d = wc.psi(rs, wc.stationary(rs, args.weights))
    speed, speed_sq = wc.radial_speed(rs, d)
    _emit(args, _dump({"type": rs.name, "weights": args.weights,
                       "psi": d.to_json(),
                       "psi_exact": [fmt(x) for x in d.exact],
                       "radial_speed": float(f"{speed:.12g}"),
                       "radial_speed_squared": fmt(speed_sq)}))


def cmd_chambers(args):
    from . import wchain as wc

    rs = _rs(args)
    ch = wc.chamber_probabilities(rs, wc.stationary(rs, args.weights))
    out = {"type": rs.name, "weights": args.weights,
           "chambers": ch.to_json_list()}
    if args.probes:
        probes = wc.conjecture_probes(rs)
        out["probes"] = json.loads(json.dumps(probes, default=fmt))
    _emit(args, _dump(out))


def cmd_shi(args):
    from . import shi

    rs = _rs(args)
    gamma = shi.build_gamma(rs)
    if args.regions:
        _emit(args, _dump(json.loads(shi.hitting_json(gamma))))
        return
    absorbed = shi.absorption_probabilities(gamma)
    _emit(args, _dump({
        "type": rs.name,
        "vertices": len(gamma.vertices),
        "absorption": [{"word": w.word_str(), "probability": fmt(p)}
                       for w, p in absorbed.items()]}))


def cmd_cores(args):
    from . import ncore as nc

    if args.n is None or args.n < 2:
        raise BadArguments("--n must be an integer >= 2")
    steps = 0 if args.steps is None else args.steps
    _positive(steps, "--steps")
    core = nc.random_core(args.n, steps, args.seed)
    if args.format == "json":
        _emit(args, _dump({"n": args.n, "steps": steps, "seed": args.seed,
                           "rows": core.to_list(), "boxes": core.size}))
        return
    if steps == 0:
        raise BadArguments("csv/svg output needs --steps >= 1")
    profile = nc.boundary_profile(core, steps)
    if args.format == "csv":
        _emit(args, profile.to_csv())
    else:
        _emit(args, profile.to_svg())


def cmd_verify(args):
    from . import verify

    checks = verify.run_all(quick=args.quick)
    for c in checks:
        print(c.line())
    failed = [c for c in checks if c.failed]
    print(f"{len(checks) - len(failed)}/{len(checks)} checks as expected")
    if failed:
        raise SystemExit(1)


COMMANDS = {
    "simulate": cmd_simulate,
    "stationary": cmd_stationary,
    "psi": cmd_psi,
    "chambers": cmd_chambers,
    "shi": cmd_shi,
    "cores": cmd_cores,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="coxwalk",
                                description="Reduced random walks in affine "
                                            "Weyl groups.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--type", help="root system tag, e.g. A2, B3, G2")
    p.add_argument("--n", type=int, help="core modulus")
    p.add_argument("--steps", type=int, help="walk length N")
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--weights", choices=["uniform", "marks", "comarks"],
                   default="uniform")
    p.add_argument("--variant", default="free",
                   choices=["free", "delayed", "grassmannian",
                            "delayed-grassmannian"])
    p.add_argument("--format", choices=["json", "csv", "svg"], default="json")
    p.add_argument("--out", help="write output here instead of stdout")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--regions", action="store_true",
                   help="shi: region hitting probabilities")
    p.add_argument("--probes", action="store_true",
                   help="chambers: include the conjecture probe report")
    p.add_argument("--quick", action="store_true",
                   help="verify: smaller search bounds")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with status 2 on bad flags
    try:
        if args.seed is None:
            args.seed = _default_seed()
        if args.threads < 1:
            raise BadArguments("--threads must be at least 1")
        if args.trials is not None and args.trials < 1:
            raise BadArguments("--trials must be at least 1")
        COMMANDS[args.command](args)
    except (BadArguments, UnsupportedType, DimensionMismatch) as exc:
        print(f"coxwalk: error: {exc}", file=sys.stderr)
        return 2
    except CoxwalkError as exc:
        print(f"coxwalk: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
