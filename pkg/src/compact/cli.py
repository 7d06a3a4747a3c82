"""Command line entry point: ``compact solve|bench|render|catalog``."""
from __future__ import annotations

import argparse
import json
import sys
import warnings

from . import io as cio
from .scenarios import catalog, get_scenario, run_trials
from .strategies import pack

EXIT_OK, EXIT_ERROR, EXIT_INCOMPLETE = 0, 1, 2


def _u64(text):
    v = int(text)
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _add_source(p):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--scenario", metavar="PATH", help="scenario JSON file")
    src.add_argument("--catalog", metavar="NAME", help="built-in scenario name")
    p.add_argument("--seed", type=_u64, help="base RNG seed (overrides the scenario file)")
    p.add_argument("--solver", choices=["ga", "exhaustive"])
    p.add_argument("--dc-sense", choices=["max", "min"], default="max",
                   help="maximise or minimise the centre distance")
    p.add_argument("--objective", choices=["T1", "DC", "DBL", "A1"])
    p.add_argument("--strategy", choices=["concurrent", "ordered"])
    p.add_argument("--constraint-mode", choices=["constrained", "unconstrained"])
    p.add_argument("--ordering", choices=["diagonal", "area"])
    p.add_argument("--direction", choices=["descending", "ascending"])


def _load(args):
    if args.scenario:
        scen, seed = cio.load_scenario(args.scenario)
    else:
        scen, seed = get_scenario(args.catalog), 0
    over = {}
    for flag, attr in (("solver", "solver"), ("objective", "objective"),
                       ("strategy", "strategy"), ("constraint_mode", "constraint_mode")):
        if getattr(args, flag) is not None:
            over[attr] = getattr(args, flag)
    if args.ordering or args.direction:
        from .strategies import OrderingRule
        over["ordering"] = OrderingRule(args.ordering or scen.ordering.key,
                                        args.direction or scen.ordering.direction)
    if over:
        scen = scen.with_(**over)
    if args.seed is not None:
        seed = args.seed
    return scen, seed


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def cmd_solve(args):
    scen, seed = _load(args)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        arr = pack(scen, seed, args.dc_sense)
    _write(args.out, json.dumps(cio.arrangement_to_dict(arr, scen), indent=2) + "\n")
    if args.image:
        cio.render(arr, args.image, args.format)
    print(f"placed {arr.n_placed}/{len(arr.specs)}  fill {arr.filling_ratio:.4f}  "
          f"g2 {arr.g2}  success {arr.success}", file=sys.stderr)
    return EXIT_OK if arr.success else EXIT_INCOMPLETE


def cmd_bench(args):
    scen, seed = _load(args)
    if args.trials < 1:
        raise ValueError("--trials must be >= 1")
    rep = run_trials(scen, args.trials, seed, args.dc_sense)
    _write(args.out, cio.trials_csv(rep))
    print(f"success {rep.n_success}/{rep.n_trials}  fill mean {rep.fill_mean:.4f}  "
          f"min {rep.fill_min:.4f}  max {rep.fill_max:.4f}", file=sys.stderr)
    return EXIT_OK


def cmd_render(args):
    _, arr = cio.load_arrangement(args.arrangement)
    cio.render(arr, args.image, args.format)
    return EXIT_OK


def cmd_catalog(args):
    if args.dump:
        doc = cio.scenario_to_dict(get_scenario(args.dump), 0)
        _write(args.out, json.dumps(doc, indent=2) + "\n")
        return EXIT_OK
    for name, s in catalog().items():
        print(f"{name:16s} {len(s.objects):2d} objects  {s.strategy.value:10s} "
              f"{s.objective.value:3s} {s.solver.value}")
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="compact", description="Raster packing of rectangles "
                                "and circles with a genetic algorithm.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="pack one scenario")
    _add_source(s)
    s.add_argument("--out", metavar="PATH", help="arrangement JSON (default stdout)")
    s.add_argument("--image", metavar="PATH", help="also render the arrangement")
    s.add_argument("--format", choices=["pgm", "svg"], default="pgm")
    s.set_defaults(func=cmd_solve)

    b = sub.add_parser("bench", help="run seeded trials and write a CSV")
    _add_source(b)
    b.add_argument("--trials", type=int, default=10)
    b.add_argument("--out", metavar="PATH", help="CSV path (default stdout)")
    b.set_defaults(func=cmd_bench)

    r = sub.add_parser("render", help="render an arrangement JSON")
    r.add_argument("arrangement", metavar="ARRANGEMENT")
    r.add_argument("--image", metavar="PATH", required=True)
    r.add_argument("--format", choices=["pgm", "svg"], default="pgm")
    r.set_defaults(func=cmd_render)

    c = sub.add_parser("catalog", help="list built-in scenarios")
    c.add_argument("--dump", metavar="NAME", help="print a scenario as JSON")
    c.add_argument("--out", metavar="PATH")
    c.set_defaults(func=cmd_catalog)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"compact: error: {msg}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
