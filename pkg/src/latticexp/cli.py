"""Command line entry point: ``latticexp <experiment> [flags]``.

Flags override values from ``--config file.json``, which override defaults.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .bounds import headline_constants
from .harness import EXPERIMENTS, ExperimentConfig, parse_range, parse_triples, run, threads_from_env


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="latticexp", description="Expansion and word-length experiments for SL_n(F_p).")
    parser.add_argument("--version", action="version", version="latticexp %s" % __version__)
    sub = parser.add_subparsers(dest="experiment", required=True)
    for name in EXPERIMENTS:
        sp = sub.add_parser(name)
        sp.add_argument("--config", help="JSON file with experiment parameters")
        sp.add_argument("--out", help="output directory")
        sp.add_argument("--seed", type=int)
        sp.add_argument("--deterministic", action="store_true", default=None, help="blank runtime_ms in the CSV so reruns are byte-identical")
        sp.add_argument("--n", help="ranks, e.g. 3,4 or 3..6")
        sp.add_argument("--l", help="block sizes for the good set, e.g. 2..6")
        sp.add_argument("--p", help="primes, e.g. 2,3")
        sp.add_argument("--m", help="moduli for the ring audits, e.g. 4,9")
        sp.add_argument("--set", dest="gen_set", choices=["bad", "good", "standard"])
        sp.add_argument("--triples", help="(l,N,p) triples for ring-identities, e.g. '5,2,3;7,3,5'")
        sp.add_argument("--samples", type=int)
        sp.add_argument("--max-vertices", dest="max_vertices", type=int)
        sp.add_argument("--max-iter", dest="max_iter", type=int)
        sp.add_argument("--tol", type=float)
        if name == "bounds":
            sp.add_argument("--format", choices=["json", "text"], default="json")
    return parser


_PARSERS = {"n": parse_range, "l": parse_range, "p": parse_range, "m": parse_range, "triples": parse_triples}


def config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    values: dict = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            values.update(json.load(fh))
    for key in ("out", "seed", "deterministic", "n", "l", "p", "m", "gen_set", "triples", "samples", "max_vertices", "max_iter", "tol"):
        val = getattr(args, key, None)
        if val is not None:
            values[key] = val
    if "set" in values:
        values["gen_set"] = values.pop("set")
    for key, parse in _PARSERS.items():
        if key in values:
            values[key] = parse(values[key])
    values["experiment"] = args.experiment
    values["threads"] = threads_from_env()
    known = set(ExperimentConfig.__dataclass_fields__)
    unknown = set(values) - known
    if unknown:
        raise ValueError("unknown config keys: %s" % ", ".join(sorted(unknown)))
    return ExperimentConfig(**values)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
        config.validate()
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        parser.print_usage(sys.stderr)
        print("latticexp: error: %s" % exc, file=sys.stderr)
        return 2
    result = run(config)
    if config.experiment == "bounds":
        table = headline_constants()
        print(table.to_json() if args.format == "json" else table.to_text())
    else:
        for row in result.rows:
            print("%-16s %-28s %-8s %s" % (row["experiment"], row["group"], row["status"], row["detail"]))
    print("wrote %s" % result.csv_path, file=sys.stderr)
    return 1 if result.failed else 0


if __name__ == "__main__":
    sys.exit(main())
