"""Command-line entry point: ``petest {test,simulate,snr,inc,experiment}``.

Data goes to standard output or ``--output``; diagnostics go to standard
error.  Exit status is 0 on success (or acceptance for ``test``), 3 when
``test`` rejects, and 2 on any error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

import numpy as np

from .errors import ConfigError
from .experiments import load_config, run_experiment, test_file, write_results
from .inc import intrinsic_num_communities
from .model import format_edgelist, generate_network, make_rng, omega_matrix, params_from_dict
from .scenarios import SCENARIOS, build_scenario
from .stats import CALIBRATIONS
from .theory import exact_snr, theory_from_params, theory_report

EXIT_OK = 0
EXIT_ERROR = 2
EXIT_REJECT = 3


def _knob(text):
    key, sep, value = text.partition("=")
    if not sep or not key:
        raise argparse.ArgumentTypeError(f"expected KEY=VALUE, got {text!r}")
    try:
        return key, json.loads(value)
    except json.JSONDecodeError:
        return key, value


def _json_arg(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise argparse.ArgumentTypeError(f"invalid JSON {text!r}: {exc}") from None


def _emit(text, output):
    if output is None or output == "-":
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _load_params(args):
    if getattr(args, "params", None):
        with open(args.params, encoding="utf-8") as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"{args.params}: invalid JSON: {exc}") from None
        return params_from_dict(doc)
    if getattr(args, "scenario", None):
        return build_scenario(args.scenario, make_rng(args.seed, 0), **dict(args.knob or []))
    raise ConfigError("give either --params FILE or --scenario NAME")


def _realized_omega(params, seed):
    rng = make_rng(seed)
    pi = params.membership.sample(params.n, rng)
    return omega_matrix(params, pi)


def cmd_test(args):
    report = test_file(args.path, args.statistic, args.level, args.calibration)
    _emit(report.to_json(indent=2) + "\n", args.output)
    return EXIT_REJECT if report.reject else EXIT_OK


def cmd_simulate(args):
    params = _load_params(args)
    A = generate_network(params, args.seed)
    _emit(format_edgelist(A), args.output)
    return EXIT_OK


def cmd_snr(args):
    if args.P is not None:
        if args.h is None or args.n is None:
            raise ConfigError("--P needs --h and --n")
        P = np.atleast_2d(np.asarray(args.P, dtype=float))
        K = args.K if args.K is not None else P.shape[0]
        report = theory_report(K, P, args.h, args.n, warn=False)
        doc = report.to_dict()
    else:
        params = _load_params(args)
        doc = theory_from_params(params, warn=False).to_dict()
        if args.exact:
            doc["exact"] = exact_snr(_realized_omega(params, args.seed)).to_dict()
    for note in doc["warnings"]:
        logging.getLogger("petest").warning(note)
    _emit(json.dumps(doc, indent=2) + "\n", args.output)
    return EXIT_OK


def cmd_inc(args):
    if args.matrix:
        omega = np.loadtxt(args.matrix, dtype=float, ndmin=2)
    else:
        omega = _realized_omega(_load_params(args), args.seed)
    res = intrinsic_num_communities(omega, rank_tol=args.rank_tol, hull_tol=args.hull_tol)
    _emit(res.to_json(include_embedding=args.embedding, indent=2) + "\n", args.output)
    return EXIT_OK


def cmd_experiment(args):
    overrides = {"seed": args.seed, "level": args.level, "threads": args.threads,
                 "format": args.format, "output": args.output}
    config = load_config(args.config, **overrides)
    results = run_experiment(config)
    text = write_results(results, config.output, config.format)
    if config.output is None or config.output == "-":
        sys.stdout.write(text)
    return EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="64-bit master seed")
    common.add_argument("--output", "-o", default=None, help="output path (default: standard output)")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to standard error")

    model = argparse.ArgumentParser(add_help=False)
    src = model.add_mutually_exclusive_group()
    src.add_argument("--params", help="JSON file with K, n, P and membership")
    src.add_argument("--scenario", choices=sorted(SCENARIOS), help="named scenario")
    model.add_argument("--knob", type=_knob, action="append", metavar="KEY=VALUE",
                       help="scenario knob override (repeatable)")

    parser = argparse.ArgumentParser(prog="petest", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("test", parents=[common], help="test an edge-list file for community structure")
    p.add_argument("path")
    p.add_argument("--statistic", choices=["chi2", "osq", "pe"], default="pe")
    p.add_argument("--level", type=float, default=0.05)
    p.add_argument("--calibration", choices=CALIBRATIONS, default="corrected")
    p.set_defaults(func=cmd_test)

    p = sub.add_parser("simulate", parents=[common, model], help="sample a network and print its edge list")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("snr", parents=[common, model], help="theoretical SNR quantities as JSON")
    p.add_argument("--K", type=int)
    p.add_argument("--P", type=_json_arg, help="community matrix as JSON")
    p.add_argument("--h", type=_json_arg, help="community weights as JSON")
    p.add_argument("--n", type=int)
    p.add_argument("--exact", action="store_true", help="also report finite-n SNRs of a realized Omega")
    p.set_defaults(func=cmd_snr)

    p = sub.add_parser("inc", parents=[common, model], help="intrinsic number of communities of Omega")
    p.add_argument("--matrix", help="dense whitespace-separated Omega file")
    p.add_argument("--rank-tol", type=float, default=None)
    p.add_argument("--hull-tol", type=float, default=1e-8)
    p.add_argument("--embedding", action="store_true", help="include the eigen-embedding")
    p.set_defaults(func=cmd_inc)

    p = sub.add_parser("experiment", parents=[common], help="run a Monte Carlo experiment config")
    p.add_argument("config")
    p.add_argument("--level", type=float, default=None)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--format", choices=["csv", "json"], default=None)
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    if args.command != "experiment" and args.seed is None:
        args.seed = 0
    try:
        return args.func(args)
    except (OSError, ValueError, RuntimeError) as exc:
        print(f"petest {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
