"""Command-line front end: census, sifted-class-set, goodred, report.

Configuration comes from a JSON file plus flag overrides; outputs are CSV
and JSON artifacts in the configured directory.  Exit codes: 0 success,
2 configuration error, 3 infeasible-cap error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .brun import good_reduction_census
from .cache import ResultCache
from .census import (
    ConfigError,
    ExperimentConfig,
    InfeasibleError,
    census,
    exceptional_containment_check,
    merged_report,
    sifted_class_set,
    write_census_csv,
    write_goodred_csv,
)
from .curves import CurveFamily, default_elliptic_family, default_genus2_family

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INFEASIBLE = 3


def _load_family(value):
    if value in (None, "default-g1"):
        return default_elliptic_family()
    if value == "default-g2":
        return default_genus2_family()
    if isinstance(value, str):
        if not os.path.exists(value):
            raise ConfigError(f"family file not found: {value}")
        with open(value, encoding="utf-8") as fh:
            return CurveFamily.from_json(fh.read())
    return CurveFamily.from_json(json.dumps(value))


def _primes_upto(n):
    return [p for p in range(2, n + 1) if all(p % d for d in range(2, int(p**0.5) + 1))]


def load_config(args):
    doc = {}
    if args.config:
        if not os.path.exists(args.config):
            raise ConfigError(f"config file not found: {args.config}")
        try:
            with open(args.config, encoding="utf-8") as fh:
                doc = json.load(fh)
        except ValueError as e:
            raise ConfigError(f"bad config JSON: {e}")
    family = _load_family(doc.get("family"))
    x_values = doc.get("x", [20])
    if args.x:
        try:
            x_values = [int(v) for v in args.x.split(",")]
        except ValueError:
            raise ConfigError("--x must be a comma-separated integer list")
    l_values = doc.get("l", [5, 7, 11, 13])
    if args.lmax:
        l_values = [l for l in _primes_upto(args.lmax) if l >= 3]
    cfg = ExperimentConfig(
        family=family,
        x_values=tuple(x_values),
        l_values=tuple(l_values),
        pcap=args.pcap or doc.get("pcap", 1000),
        out_dir=args.out or doc.get("out", "."),
        cache_path=doc.get("cache"),
        workers=args.workers or doc.get("workers", 1),
        seed=args.seed if args.seed is not None else doc.get("seed", 0),
    )
    cfg.validate()
    return cfg, doc


def cmd_census(cfg, doc):
    cache = ResultCache(cfg.cache_path) if cfg.cache_path else None
    rows, _ = census(
        cfg.family, cfg.x_values, cfg.l_values, cfg.pcap, cfg.workers, cfg.seed, cache
    )
    os.makedirs(cfg.out_dir, exist_ok=True)
    path = os.path.join(cfg.out_dir, "census.csv")
    write_census_csv(path, rows, cfg.l_values)
    if cache is not None and cache.malformed:
        print(f"warning: skipped {cache.malformed} malformed cache lines", file=sys.stderr)
    print(path)
    return EXIT_OK


def cmd_sifted_class_set(cfg, doc, l, class_key, Q):
    x = max(cfg.x_values)
    rep = sifted_class_set(cfg.family, x, l, class_key, cfg.pcap, Q)
    os.makedirs(cfg.out_dir, exist_ok=True)
    path = os.path.join(cfg.out_dir, f"class_set_l{l}_tr{class_key[0]}.json")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(rep.to_json() + "\n")
    print(path)
    return EXIT_OK


def cmd_goodred(cfg, doc):
    out = []
    for x in cfg.x_values:
        Q = max(2, int(x**0.5))
        out.append(good_reduction_census(cfg.family, x, Q))
    os.makedirs(cfg.out_dir, exist_ok=True)
    path = os.path.join(cfg.out_dir, "goodred.csv")
    write_goodred_csv(path, out)
    print(path)
    return EXIT_OK


def cmd_report(cfg, doc):
    try:
        text = merged_report(cfg.out_dir)
    except FileNotFoundError as e:
        raise ConfigError(str(e))
    path = os.path.join(cfg.out_dir, "report.json")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    print(path)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="sievelab")
    parser.add_argument("--config", metavar="PATH")
    parser.add_argument("--x", metavar="LIST", help="comma-separated height bounds")
    parser.add_argument("--lmax", type=int, metavar="N")
    parser.add_argument("--pcap", type=int, metavar="N")
    parser.add_argument("--out", metavar="DIR")
    parser.add_argument("--workers", type=int, metavar="N")
    parser.add_argument("--seed", type=int, metavar="N",
                        help="work scheduling only; never affects results")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("census")
    p = sub.add_parser("sifted-class-set")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--class", dest="class_key", required=True, metavar="TR,DET")
    p.add_argument("--Q", type=int, required=True)
    sub.add_parser("goodred")
    sub.add_parser("report")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg, doc = load_config(args)
        if args.command == "census":
            return cmd_census(cfg, doc)
        if args.command == "sifted-class-set":
            try:
                tr, det = (int(v) for v in args.class_key.split(","))
            except ValueError:
                raise ConfigError("--class must be TR,DET")
            return cmd_sifted_class_set(cfg, doc, args.l, (tr, det), args.Q)
        if args.command == "goodred":
            return cmd_goodred(cfg, doc)
        if args.command == "report":
            return cmd_report(cfg, doc)
        raise ConfigError(f"unknown command {args.command}")
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except InfeasibleError as e:
        print(f"infeasible: {e}", file=sys.stderr)
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
