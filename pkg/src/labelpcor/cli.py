"""Command-line entry point: ``labelpcor {cor,permtest,screen,simulate}``.

Exit codes: 0 success, 1 usage error, 2 data error.  Failures print a JSON
object ``{"error": {"type": ..., "message": ...}}`` on stdout.
"""

import argparse
import sys
import time

import numpy as np

from . import __version__
from ._accel import set_threads
from .core import DataError
from .inference import permutation_test
from .io import CsvSchema, format_table, load_csv, read_table, to_json, write_csv
from .measures import correlation, expand_methods
from .screening import default_cutoff, rank_features, simulate_gwas_screening, top_d_select
from .simgen import ACTIVE, GwasConfig, gen_gwas

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive(v):
    i = int(v)
    if i < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {v}")
    return i


def _schema(args):
    feats = args.features.split(",") if args.features else None
    return CsvSchema(args.delimiter, not args.no_header, args.label_column, feats)


def build_parser():
    p = _Parser(prog="labelpcor", description="Feature-label dependence via label projection correlation.")
    p.add_argument("--version", action="version", version=__version__)
    common = _Parser(add_help=False)
    common.add_argument("--method", default="pcor",
                        help="pcor, gcor, gkcor, pearson, a comma list, or 'all'")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--threads", type=_positive, default=None,
                        help="cap on worker threads (default: $LABELPCOR_THREADS)")
    common.add_argument("--force-bruteforce", action="store_true",
                        help="use the cubic estimator even when p = 1")
    csv_opts = _Parser(add_help=False)
    csv_opts.add_argument("csv")
    csv_opts.add_argument("--label-column", default="label")
    csv_opts.add_argument("--features", default=None, help="comma list of feature columns")
    csv_opts.add_argument("--delimiter", default=",")
    csv_opts.add_argument("--no-header", action="store_true")

    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("cor", parents=[common, csv_opts], help="correlation(s) on a CSV")
    pt = sub.add_parser("permtest", parents=[common, csv_opts], help="permutation p-value")
    pt.add_argument("--b", type=int, default=999, help="number of permutations (>= 99)")
    sc = sub.add_parser("screen", parents=[common, csv_opts], help="rank every feature")
    sc.add_argument("--d", type=_positive, default=None, help="cutoff (default floor(n/log n))")
    sc.add_argument("--swap-roles", action="store_true",
                    help="features are categorical and the label column is a numeric response")
    sm = sub.add_parser("simulate", parents=[common], help="SNP screening replications")
    sm.add_argument("--error", choices=("normal", "t1", "t2"), default="normal")
    sm.add_argument("--reps", type=_positive, default=100)
    sm.add_argument("--n", type=_positive, default=200)
    sm.add_argument("--p", type=_positive, default=2000)
    sm.add_argument("--rho", type=float, default=0.5)
    sm.add_argument("--d", type=_positive, default=None)
    sm.add_argument("--save-csv", default=None, help="also write one generated dataset here")
    return p


def _cor(args):
    t = load_csv(args.csv, _schema(args))
    d = t.dataset
    methods = expand_methods(args.method)
    values = {m: correlation(d, m, force_bruteforce=args.force_bruteforce) for m in methods}
    report = {"command": "cor", "seed": args.seed, "n": d.n, "p": d.p, "K": d.k,
              "class_counts": dict(zip(map(str, d.labels), np.bincount(d.codes).tolist())),
              "values": values}
    table = format_table([[m, v] for m, v in values.items()], ["method", "value"])
    return report, table


def _permtest(args):
    t = load_csv(args.csv, _schema(args))
    d = t.dataset
    results = {}
    for m in expand_methods(args.method):
        r = permutation_test(d, m, args.b, args.seed, force_bruteforce=args.force_bruteforce)
        results[m] = {"statistic": r.statistic, "pvalue": r.pvalue}
    report = {"command": "permtest", "seed": args.seed, "b": args.b,
              "n": d.n, "p": d.p, "K": d.k, "results": results}
    table = format_table([[m, r["statistic"], r["pvalue"]] for m, r in results.items()],
                         ["method", "statistic", "pvalue"])
    return report, table


def _screen(args):
    schema = _schema(args)
    if args.swap_roles:
        x, target, names, _ = read_table(args.csv, schema, numeric_label=True)
        k = None
    else:
        t = load_csv(args.csv, schema)
        x, target, names, k = t.dataset.x, t.raw_labels, t.feature_names, t.dataset.k
    n, p = x.shape
    d = default_cutoff(n) if args.d is None else args.d
    if d > p:
        raise UsageError(f"--d {d} exceeds the number of features ({p})")
    rankings = {}
    rows = []
    for m in expand_methods(args.method):
        r = rank_features(x, target, m, features_are_labels=args.swap_roles)
        top = top_d_select(r, d)
        rankings[m] = {"top_d": [names[j] for j in top],
                       "scores": {names[j]: float(r.scores[j]) for j in r.order}}
        rows += [[m, rank, names[j], float(r.scores[j])] for rank, j in enumerate(top, 1)]
    report = {"command": "screen", "seed": args.seed, "n": n, "p": p, "K": k, "d": d,
              "swap_roles": args.swap_roles, "rankings": rankings}
    return report, format_table(rows, ["method", "rank", "feature", "score"])


def _simulate(args):
    if args.p < 100:
        raise UsageError("--p must be at least 100 (the active SNPs go up to 100)")
    methods = expand_methods(args.method)
    if args.save_csv:
        s = gen_gwas(GwasConfig(args.n, args.p, args.rho, args.error, args.seed))
        write_csv(args.save_csv, s.features, s.response,
                  [f"snp{j + 1}" for j in range(args.p)], "response")
    reports = simulate_gwas_screening(methods, args.error, args.reps, args.seed,
                                      n=args.n, p=args.p, rho=args.rho, d=args.d)
    out = {m: r.as_dict() for m, r in reports.items()}
    d = next(iter(reports.values())).d
    report = {"command": "simulate", "seed": args.seed, "error": args.error, "reps": args.reps,
              "n": args.n, "p": args.p, "rho": args.rho, "d": d,
              "active": [a + 1 for a in ACTIVE], "metrics": out}
    headers = ["method"] + list(next(iter(out.values())).keys())
    return report, format_table([[m] + list(v.values()) for m, v in out.items()], headers)


COMMANDS = {"cor": _cor, "permtest": _permtest, "screen": _screen, "simulate": _simulate}


def _fail(kind, message, code):
    print(to_json({"error": {"type": kind, "message": str(message)}}))
    return code


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        set_threads(args.threads)
        start = time.perf_counter()
        report, table = COMMANDS[args.command](args)
    except UsageError as e:
        return _fail("usage", e, EXIT_USAGE)
    except (DataError, OSError) as e:
        return _fail("data", e, EXIT_DATA)
    except ValueError as e:
        return _fail("usage", e, EXIT_USAGE)
    report["elapsed_s"] = round(time.perf_counter() - start, 6)
    print(to_json(report) if args.format == "json" else table)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
