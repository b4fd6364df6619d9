"""Command-line entry point: ``renormlab <verb> [options]``."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .errors import InvalidShuffle, NumericFailure, RenormLabError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC, EXIT_INCONCLUSIVE = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _emit(text: str, path: Optional[str]) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _load_config(path: str) -> dict:
    p = Path(path)
    raw = p.read_bytes()
    if p.suffix == ".json":
        data = json.loads(raw)
    else:
        try:
            import tomllib
        except ModuleNotFoundError:  # python < 3.11
            import tomli as tomllib
        data = tomllib.loads(raw.decode())
    if not isinstance(data, dict):
        raise UsageError("config file must hold a table of options")
    return {k.replace("-", "_"): v for k, v in data.items()}


def _pixels(text: str):
    try:
        w, h = (int(x) for x in str(text).lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError("pixels must look like 640x480")
    return w, h


def _ints(text):
    if isinstance(text, (list, tuple)):
        return tuple(int(x) for x in text)
    return tuple(int(x) for x in str(text).replace(",", " ").split())


def _shuffle_arg(args):
    from .shuffle import parse_cycle, sigma3_n, validate_shuffle

    given = [x for x in (args.cycle, args.file, args.sigma3) if x is not None]
    if len(given) != 1:
        raise UsageError("give exactly one of --cycle, --file, --sigma3")
    if args.sigma3 is not None:
        return sigma3_n(args.sigma3)
    text = args.cycle if args.cycle is not None else Path(args.file).read_text()
    lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
    body = " ".join(ln for ln in lines if ln)
    if body.startswith("("):
        return parse_cycle(body)
    return validate_shuffle(int(x) for x in body.replace(",", " ").split())


def _add_shuffle_input(p):
    p.add_argument("--cycle", help="shuffle in cycle notation, e.g. '(1 3 2)'")
    p.add_argument("--file", help="file holding a cycle or a permutation list")
    p.add_argument("--sigma3", type=int, metavar="N", help="the sigma3_n fixture")


# --------------------------------------------------------------------------
# verbs

def cmd_render(args) -> int:
    from .render import RenderConfig, render, write_pgm

    cfg = RenderConfig(complex(args.center), args.width, args.pixels, args.max_iter,
                       args.escape_radius, args.mode, complex(args.c))
    img = render(cfg, args.threads)
    write_pgm(args.output, img)
    return EXIT_OK


def cmd_centers(args) -> int:
    from .solver import centers_csv, centers_sigma3, center_of_shuffle

    if args.cycle or args.file:
        args.sigma3 = None
        sol = center_of_shuffle(_shuffle_arg(args), dps=args.dps)
        rows = [(sol.sigma.to_text(), sol.period, sol)]
    elif args.sigma3:
        rows = [("sigma3", n, s) for n, s in centers_sigma3(args.n_max, dps=args.dps)]
    else:
        raise UsageError("centers needs --sigma3 or a shuffle")
    _emit(centers_csv(rows), args.output)
    return EXIT_OK


def cmd_shuffle(args) -> int:
    from .shuffle import star_product, parse_cycle

    sigma = _shuffle_arg(args)
    if args.star:
        sigma = star_product(sigma, parse_cycle(args.star))
    out = {
        "schema": "renormlab.shuffle/1",
        "cycle": sigma.to_text(),
        "perm": list(sigma.perm),
        "p": sigma.p,
        "critical_index": sigma.critical_index,
        "kneading": "".join("LCR"[s + 1] for s in sigma.kneading()),
    }
    _emit(json.dumps(out) + "\n", args.output)
    return EXIT_OK


def cmd_essential_period(args) -> int:
    from .nest import essential_period

    _emit(f"{essential_period(_shuffle_arg(args))}\n", args.output)
    return EXIT_OK


def cmd_return_types(args) -> int:
    from .nest import sequence_of_shuffle

    seq = sequence_of_shuffle(_shuffle_arg(args))
    text = json.dumps(seq.to_json(), indent=2) + "\n" if args.format == "json" else seq.to_text()
    _emit(text if text.endswith("\n") else text + "\n", args.output)
    return EXIT_OK


def cmd_truncate(args) -> int:
    from .nest import sequence_of_shuffle, truncate

    seq = sequence_of_shuffle(_shuffle_arg(args))
    levels = seq.neglectable_levels() if args.level is None else [args.level]
    if not levels:
        raise UsageError("the sequence has no neglectable level")
    _emit(truncate(seq, levels[0]).to_text() + "\n", args.output)
    return EXIT_OK


def cmd_renorm_orbit(args) -> int:
    from .renorm import diagnostics_jsonl, renorm_orbit

    c = args.c if args.dps else float(args.c)
    _emit(diagnostics_jsonl(renorm_orbit(c, args.stages, dps=args.dps)), args.output)
    return EXIT_OK


def cmd_phase(args) -> int:
    from .fatou import douady_chart

    chart = douady_chart(complex(args.c), args.q, None if args.c0 is None else complex(args.c0))
    _emit(json.dumps(chart.to_json()) + "\n", args.output)
    return EXIT_OK


def cmd_fatou_check(args) -> int:
    from .fatou import detect_parabolic, fatou_coordinate, petal_grid

    chart = detect_parabolic(complex(args.c), args.q, args.direction)
    fc = fatou_coordinate(chart)
    worst = max(fc.residual(z) for z in petal_grid(chart, args.grid))
    out = {"schema": "renormlab.fatou_check/1", "c": args.c, "q": args.q, "direction": args.direction,
           "grid": args.grid, "max_residual": f"{worst:.3e}", "ok": worst <= args.tol}
    _emit(json.dumps(out) + "\n", args.output)
    return EXIT_OK if worst <= args.tol else EXIT_NUMERIC


def cmd_per3_experiment(args) -> int:
    from .experiment import FAIL, INCONCLUSIVE, ExperimentConfig, run_per3

    cfg = ExperimentConfig(_ints(args.tuning), args.stages, args.delta, args.dps, args.prefix, args.output)
    report = run_per3(cfg)
    _emit(report.dumps(), args.output)
    if report.verdict == INCONCLUSIVE:
        return EXIT_INCONCLUSIVE
    return EXIT_FAIL if report.verdict == FAIL else EXIT_OK


# --------------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(prog="renormlab", description=__doc__)
    parser.add_argument("--config", help="TOML or JSON file with option defaults for the verb")
    sub = parser.add_subparsers(dest="verb", required=True)
    verbs = {}

    def verb(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        p.add_argument("-o", "--output", help="output file (stdout when omitted)")
        verbs[name] = p
        return p

    p = verb("render", cmd_render, "escape-time image as binary PGM")
    p.add_argument("--mode", choices=("julia", "mandelbrot"), default="julia")
    p.add_argument("--c", default="0", help="parameter for julia mode")
    p.add_argument("--center", default="0")
    p.add_argument("--width", type=float, default=4.0)
    p.add_argument("--pixels", type=_pixels, default=(512, 512), help="WxH")
    p.add_argument("--max-iter", type=int, default=256)
    p.add_argument("--escape-radius", type=float, default=2.0)
    p.add_argument("--threads", type=int, default=None, help="worker threads (capped by RENORMLAB_THREADS)")

    p = verb("centers", cmd_centers, "superattracting centers as CSV")
    p.add_argument("--sigma3", action="store_true", help="the sigma3_n family")
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--cycle")
    p.add_argument("--file")
    p.add_argument("--dps", type=int, default=40)

    p = verb("shuffle", cmd_shuffle, "validate a shuffle and print its data as JSON")
    _add_shuffle_input(p)
    p.add_argument("--star", help="inner shuffle for the star product")

    p = verb("essential-period", cmd_essential_period, "essential period of a shuffle")
    _add_shuffle_input(p)

    p = verb("return-types", cmd_return_types, "return-type sequence of a shuffle")
    _add_shuffle_input(p)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = verb("truncate", cmd_truncate, "truncate at a neglectable level")
    _add_shuffle_input(p)
    p.add_argument("--level", type=int, default=None, help="neglectable level (first one when omitted)")

    p = verb("renorm-orbit", cmd_renorm_orbit, "renormalization diagnostics as JSON lines")
    p.add_argument("--c", required=True, help="parameter (decimal string)")
    p.add_argument("--stages", type=int, default=2)
    p.add_argument("--dps", type=int, default=None, help="mpmath digits (double precision when omitted)")

    p = verb("phase", cmd_phase, "transit data of a perturbed parabolic map")
    p.add_argument("--c", required=True)
    p.add_argument("--q", type=int, default=1)
    p.add_argument("--c0", default=None, help="parabolic parameter (located automatically when omitted)")

    p = verb("fatou-check", cmd_fatou_check, "Abel equation residual on a petal grid")
    p.add_argument("--c", required=True)
    p.add_argument("--q", type=int, default=1)
    p.add_argument("--direction", choices=("incoming", "outgoing"), default="incoming")
    p.add_argument("--grid", type=int, default=20)
    p.add_argument("--tol", type=float, default=1e-8)

    p = verb("per3-experiment", cmd_per3_experiment, "renormalization convergence toward -1.75")
    p.add_argument("--tuning", default="8,10,12", help="comma separated n values")
    p.add_argument("--stages", type=int, default=3)
    p.add_argument("--delta", type=float, default=0.02)
    p.add_argument("--dps", type=int, default=60)
    p.add_argument("--prefix", type=int, default=48)
    return parser, verbs


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser, verbs = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    args = parser.parse_args(argv)
    try:
        if args.config:
            cfg = _load_config(args.config)
            known = {a.dest for a in verbs[args.verb]._actions}
            unknown = set(cfg) - known
            if unknown:
                raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
            if "pixels" in cfg:
                cfg["pixels"] = _pixels(cfg["pixels"]) if isinstance(cfg["pixels"], str) else tuple(cfg["pixels"])
            verbs[args.verb].set_defaults(**cfg)
            args = parser.parse_args(argv)
        return args.func(args)
    except (UsageError, InvalidShuffle, ValueError, OSError) as exc:
        print(f"renormlab {args.verb}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericFailure, RenormLabError) as exc:
        print(f"renormlab {args.verb}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
