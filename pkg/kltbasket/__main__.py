import argparse
import json
import logging
import pathlib
import sys
from fractions import Fraction

from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from .config import RunConfig
from .data.artifacts import Germ, InvalidGermError, germ_from_label
from .data.rationals import format_rational, parse_rational
from .data.universe import GermUniverse
from .geometry.germ_model import (
    delta_n, invariants, is_du_val, is_interior, mu_tau, special_valuations,
)
from .geometry.hj import InvalidSequenceError, pair_from_seq, seq_from_pair, validate_seq
from .geometry.mld_classifier import classify_mld, family_limit, verify_family
from .ls import RETAINED, OPEN
from .ls.ls_classifier import classify_ls, table_diff
from .reports import CONFIG_FILE
from .reports.external import filter_external
from .reports.writers import (
    basket_table, ls_table, stage_table, write_csv, write_jsonl, write_ls_cases,
    write_pipeline_reports,
)
from .search.basket_enum import build_universe, enumerate_baskets
from .search.pipeline import is_expected, run_pipeline

_l = logging.getLogger(name=__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_ANOMALY = 2

console = Console()


def _setup_logging(level: str):
    logging.basicConfig(
        level=level, format="%(message)s", datefmt="[%X]",
        handlers=[RichHandler(console=Console(stderr=True), rich_tracebacks=False)],
        force=True,
    )


def _config(args) -> RunConfig:
    overrides = {
        "a": getattr(args, "a", None),
        "vol_cap": getattr(args, "vol_cap", None),
        "n_max": getattr(args, "n_max", None),
        "shards": getattr(args, "shards", None),
        "out_dir": getattr(args, "out_dir", None),
        "stages": getattr(args, "stages", None),
        "probes": getattr(args, "probes", None),
        "delta_sign": getattr(args, "delta_sign", None),
    }
    if args.verbose:
        overrides["log_level"] = "DEBUG"
    elif args.quiet:
        overrides["log_level"] = "WARNING"
    return RunConfig.load(args.config, **overrides)


def _load_universe(args, cfg: RunConfig) -> GermUniverse:
    if getattr(args, "universe", None):
        return GermUniverse.parse(args.universe)
    return build_universe(cfg.a)


def _parse_germ(s: str) -> Germ:
    s = s.strip()
    if s.startswith("{"):
        return Germ.from_json(json.loads(s))
    return germ_from_label(s)


def _ints(s: str):
    return [int(x) for x in s.replace(" ", "").strip("[]()").split(",") if x]


#
# Subcommands
#

def cmd_classify_mld(args, cfg: RunConfig) -> int:
    output = classify_mld(cfg.a)
    table = Table(title=f"mld >= {format_rational(cfg.a)}")
    table.add_column("family")
    table.add_column("kind")
    table.add_column("limit mld", justify="right")

    broken = []
    for f in output.families:
        table.add_row(f.label(), f.kind, format_rational(family_limit(f)))
        if not verify_family(f, cfg.a, cfg.probes):
            broken.append(f)
    console.print(table)
    console.print(f"{len(output.isolated)} isolated germs, {len(output.families)} families, "
                  f"N={output.max_excess()}, L={output.length_cap()}")

    if args.out:
        pathlib.Path(args.out).write_text(json.dumps(output.to_json(), indent=2) + "\n", encoding="utf-8")
    for f in broken:
        _l.warning("family %s has a member below mld %s", f.label(), format_rational(cfg.a))
    return EXIT_ANOMALY if broken else EXIT_OK


def cmd_universe(args, cfg: RunConfig) -> int:
    universe = build_universe(cfg.a)
    universe.dump(args.out)
    console.print(f"{len(universe)} germs written to {args.out}")
    return EXIT_OK


def cmd_enumerate(args, cfg: RunConfig) -> int:
    universe = _load_universe(args, cfg)
    baskets = list(enumerate_baskets(universe, cfg.vol_cap, shards=cfg.shards))
    if args.out:
        write_jsonl((b.to_json() for b in baskets), args.out)
    counts = {}
    for b in baskets:
        counts[len(b)] = counts.get(len(b), 0) + 1
    console.print(f"{len(baskets)} baskets, by size: {dict(sorted(counts.items()))}")
    return EXIT_OK


def cmd_pipeline(args, cfg: RunConfig) -> int:
    universe = _load_universe(args, cfg)
    empty = len(universe) == 0
    if empty:
        _l.warning("the germ universe is empty")

    # an empty universe still gets an all-zero report
    report = run_pipeline(universe, cfg.vol_cap, cfg.n_max, stages=cfg.stages, shards=cfg.shards,
                          delta_sign=cfg.sign, baskets=[] if empty else None)
    out_dir = pathlib.Path(cfg.out_dir)
    write_pipeline_reports(report, out_dir)
    (out_dir / CONFIG_FILE).write_text(cfg.dump(), encoding="utf-8")

    console.print(stage_table(report))
    console.print(basket_table(report.survivors, title="Survivors"))
    if not is_expected(report):
        _l.warning("the cascade did not end in the single residual basket")
        return EXIT_ANOMALY
    return EXIT_OK


def cmd_ls_classify(args, cfg: RunConfig) -> int:
    cases = classify_ls()
    if args.out:
        write_ls_cases(cases, args.out)
    console.print(ls_table(cases))

    missing, extra = table_diff(cases)
    survivors = {c.label for c in cases if c.verdict in RETAINED or c.verdict == OPEN}
    if missing:
        _l.warning("published rows not found: %s", ", ".join(missing))
    for c in extra:
        _l.warning("unlisted case %s", c)
    if missing or extra or survivors != {"1.1", "1.5", "1.7", "3.1"}:
        return EXIT_ANOMALY
    return EXIT_OK


def cmd_filter_external(args, cfg: RunConfig) -> int:
    checks, errors = filter_external(args.file, cfg.n_max)
    table = Table(title="External plurigenera")
    for col in ("label", "non-integral n", "negative n", "product (a, b)"):
        table.add_column(col)
    for c in checks:
        table.add_row(c.label, " ".join(map(str, c.non_integral)), " ".join(map(str, c.negative)),
                      str(c.product) if c.product else "")
    console.print(table)

    if args.out:
        write_csv(
            ["label", "ok", "non_integral", "negative", "product_a", "product_b"],
            ([c.label, int(c.ok), " ".join(map(str, c.non_integral)), " ".join(map(str, c.negative)),
              *(c.product or ("", ""))] for c in checks),
            args.out,
        )
    return EXIT_ERROR if errors else EXIT_OK


def cmd_germ_info(args, cfg: RunConfig) -> int:
    g = _parse_germ(args.germ)
    inv = invariants(g)
    table = Table(title=g.label(), show_header=False)
    table.add_row("type", inv.tag)
    table.add_row("order", str(inv.r_x))
    table.add_row("mld", format_rational(inv.mld))
    table.add_row("gamma", format_rational(inv.gamma))
    table.add_row("b", " ".join(format_rational(b) for b in inv.b))
    if args.n is not None:
        table.add_row(f"delta_{args.n}", format_rational(delta_n(g, args.n)))
    if not is_du_val(g):
        for v in special_valuations(g):
            row = f"c_E={format_rational(v.c_e)} e_E={format_rational(v.e_e)}"
            if is_interior(g, v):
                mt = mu_tau(g, v)
                mu = format_rational(mt.mu) if mt.mu is not None else "-"
                row += f" mu={mu} tau={format_rational(mt.tau)}"
            table.add_row(f"{v.kind} {v.index}", row)
    console.print(table)
    return EXIT_OK


def cmd_hj(args, cfg: RunConfig) -> int:
    if args.seq:
        seq = validate_seq(_ints(args.seq))
        r, q = pair_from_seq(seq)
        console.print(f"({r},{q})", markup=False, highlight=False)
    else:
        r, q = _ints(args.pair)
        console.print("[" + ",".join(map(str, seq_from_pair(r, q))) + "]", markup=False, highlight=False)
    return EXIT_OK


COMMANDS = {
    "classify-mld": cmd_classify_mld,
    "universe": cmd_universe,
    "enumerate": cmd_enumerate,
    "pipeline": cmd_pipeline,
    "ls-classify": cmd_ls_classify,
    "filter-external": cmd_filter_external,
    "germ-info": cmd_germ_info,
    "hj": cmd_hj,
}


def _rational(s: str) -> Fraction:
    try:
        return parse_rational(s)
    except (TypeError, ValueError) as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kltbasket",
        description="Exact enumeration of klt singularity baskets on rank-one surfaces of small volume",
    )
    parser.add_argument("--config", help="TOML configuration file")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true")
    verbosity.add_argument("-q", "--quiet", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify-mld", help="isolated germs and families with mld >= a")
    p.add_argument("--a", type=_rational)
    p.add_argument("--probes", type=int)
    p.add_argument("--out")

    p = sub.add_parser("universe", help="build and dump the germ universe")
    p.add_argument("--a", type=_rational)
    p.add_argument("--out", required=True)

    p = sub.add_parser("enumerate", help="baskets in the gamma window")
    p.add_argument("--a", type=_rational)
    p.add_argument("--universe", help="a dumped universe instead of building one")
    p.add_argument("--vol-cap", dest="vol_cap", type=_rational)
    p.add_argument("--shards", type=int)
    p.add_argument("--out")

    p = sub.add_parser("pipeline", help="enumeration and the full filter cascade")
    p.add_argument("--a", type=_rational)
    p.add_argument("--universe")
    p.add_argument("--vol-cap", dest="vol_cap", type=_rational)
    p.add_argument("--n-max", dest="n_max", type=int)
    p.add_argument("--shards", type=int)
    p.add_argument("--out-dir", dest="out_dir")
    p.add_argument("--stages", help="comma separated, e.g. F1,F2,F3")
    p.add_argument("--delta-sign", dest="delta_sign", choices=["auto", "+1", "-1"])

    p = sub.add_parser("ls-classify", help="plt pairs (X, bS) with b > 6/7 and their verdicts")
    p.add_argument("--out")

    p = sub.add_parser("filter-external", help="check plurigenus sequences from a CSV or JSONL file")
    p.add_argument("file")
    p.add_argument("--n-max", dest="n_max", type=int, help="ignore values P_n with n above this")
    p.add_argument("--out")

    p = sub.add_parser("germ-info", help="invariants of a germ, given by label or JSON")
    p.add_argument("germ")
    p.add_argument("--n", type=int, help="also print delta_n for this n")

    p = sub.add_parser("hj", help="convert between a chain and its pair (r, q)")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--seq", help="e.g. 2,7,2,2,2")
    group.add_argument("--pair", help="e.g. 23,4")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
    except (OSError, TypeError, ValueError) as e:
        _setup_logging("INFO")
        _l.error("configuration: %s", e)
        return EXIT_ERROR

    _setup_logging(cfg.log_level)
    try:
        return COMMANDS[args.command](args, cfg)
    except (InvalidGermError, InvalidSequenceError) as e:
        _l.error("%s", e)
        return EXIT_ERROR
    except (OSError, TypeError, ValueError) as e:
        _l.error("%s: %s", args.command, e)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
