"""Command-line entry point.

Exit codes: 0 success, 1 domain or validation error, 2 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import sys
from pathlib import Path

from .corpus import CorpusError, load_corpus, validate_corpus
from .normalization import indicator_table, indicators_csv
from .ratings import ffa_table
from .synthgen import DEFAULT_CATEGORIES, GenConfig, GenConfigError, write_synthetic
from .validation import ValidationError, default_jcr_year, format_report, run_validation

log = logging.getLogger("citevalid")

EXIT_OK, EXIT_DOMAIN, EXIT_IO = 0, 1, 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # usage problems are configuration errors (exit 1); exit 2 is reserved for I/O
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def _write(path: Path, text: str) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    return path


def _load(args, need_ratings=False):
    if need_ratings and args.ratings is None:
        raise _UsageError("--ratings is required for this command")
    return load_corpus(args.papers, args.citations, args.ratings, census_year=args.census_year)


def cmd_check(args) -> int:
    c = _load(args)
    s = c.load_summary
    print(f"papers: {s.n_papers}  edges: {s.n_edges}  ratings: {s.n_ratings}")
    print(f"duplicate edges removed: {s.duplicate_edges}  "
          f"edges after census year {c.census_year} dropped: {s.edges_outside_census}")
    problems = validate_corpus(c)
    for p in problems:
        print(p)
    if problems:
        return EXIT_DOMAIN
    print("OK")
    return EXIT_OK


def cmd_indicators(args) -> int:
    c = _load(args)
    jcr = args.jcr_year if args.jcr_year is not None else default_jcr_year(c)
    path = _write(Path(args.out) / "indicators.csv", indicators_csv(indicator_table(c, jcr)))
    print(path)
    return EXIT_OK


def cmd_ffa(args) -> int:
    c = _load(args, need_ratings=True)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("paper_id", "ffa", "n_ratings"))
    for s in ffa_table(c):
        w.writerow((s.paper_id, s.ffa, s.n_ratings))
    print(_write(Path(args.out) / "ffa.csv", buf.getvalue()))
    return EXIT_OK


def cmd_validate(args) -> int:
    c = _load(args, need_ratings=True)
    report = run_validation(c, jcr_year=args.jcr_year, alpha=args.alpha, level=args.confidence)
    out = Path(args.out)
    text = format_report(report)
    _write(out / "report.json", report.to_json())
    _write(out / "plot_data.csv", report.plot_csv())
    _write(out / "report.txt", text)
    sys.stdout.write(text)
    return EXIT_OK


def _parse_category(text: str) -> tuple[str, float]:
    name, sep, rate = text.rpartition("=")
    if not sep or not name.strip():
        raise argparse.ArgumentTypeError(f"expected NAME=RATE, got {text!r}")
    try:
        return name.strip(), float(rate)
    except ValueError:
        raise argparse.ArgumentTypeError(f"rate in {text!r} is not a number") from None


def cmd_synth(args) -> int:
    if args.seed is None:
        raise _UsageError("synth requires an explicit --seed so that runs are reproducible")
    defaults = GenConfig(seed=0)
    cfg = GenConfig(
        seed=args.seed,
        n_papers=args.n_papers,
        n_journals=args.n_journals,
        categories=tuple(args.category) if args.category else DEFAULT_CATEGORIES,
        rating_fraction=args.rating_fraction,
        planted_rank_corr=args.planted_rank_corr,
        years=(args.min_year, args.max_year),
        census_year=args.census_year if args.census_year is not None else defaults.census_year,
    )
    for path in write_synthetic(cfg, args.out).values():
        print(path)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="citevalid", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def corpus_flags(p, ratings_required=False):
        p.add_argument("--papers", required=True, help="papers CSV")
        p.add_argument("--citations", required=True, help="citations CSV")
        p.add_argument("--ratings", required=ratings_required, help="ratings CSV")
        p.add_argument("--census-year", type=int,
                       help="ignore citations from papers published later (default: latest pub_year)")
        p.add_argument("--out", default=".", help="output directory")

    p = sub.add_parser("check", help="load a corpus and report integrity violations")
    corpus_flags(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("indicators", help="write the seven indicators per paper")
    corpus_flags(p)
    p.add_argument("--jcr-year", type=int, help="JCR year for impact factors")
    p.set_defaults(func=cmd_indicators)

    p = sub.add_parser("ffa", help="write the F1000 Article Factor per rated paper")
    corpus_flags(p, ratings_required=True)
    p.set_defaults(func=cmd_ffa)

    p = sub.add_parser("validate", help="correlate FFa with the seven indicators")
    corpus_flags(p, ratings_required=True)
    p.add_argument("--jcr-year", type=int, help="JCR year for impact factors")
    p.add_argument("--alpha", type=float, default=0.05, help="family-wise alpha (default 0.05)")
    p.add_argument("--confidence", type=float, default=0.95,
                   help="confidence level of the intervals (default 0.95)")
    p.set_defaults(func=cmd_validate)

    d = GenConfig(seed=0)
    p = sub.add_parser("synth", help="generate a synthetic corpus with planted ground truth")
    p.add_argument("--seed", type=int, help="random seed (required)")
    p.add_argument("--n-papers", type=int, default=d.n_papers)
    p.add_argument("--n-journals", type=int, default=d.n_journals)
    p.add_argument("--category", type=_parse_category, action="append", metavar="NAME=RATE",
                   help="category and its mean citation rate; repeatable")
    p.add_argument("--rating-fraction", type=float, default=d.rating_fraction)
    p.add_argument("--planted-rank-corr", type=float, default=d.planted_rank_corr)
    p.add_argument("--min-year", type=int, default=d.years[0])
    p.add_argument("--max-year", type=int, default=d.years[1])
    p.add_argument("--census-year", type=int)
    p.add_argument("--out", default=".", help="output directory")
    p.set_defaults(func=cmd_synth)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_DOMAIN
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (CorpusError, ValidationError, GenConfigError, _UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
