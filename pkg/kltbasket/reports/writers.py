"""
Report emission: JSON-lines streams, CSV tables and rich console tables. All files are UTF-8
and every rational is written as a "p/q" string.
"""
import csv
import json
import logging
import pathlib
from typing import Dict, Iterable, List, Sequence, Union

from rich.table import Table

from . import ELIMINATED_FILE, PRODUCT_FILE, STAGE_REPORT_FILE, SURVIVORS_FILE
from ..data.artifacts import Basket, CyclicGerm, EliminationRecord, LSCase, StageReport
from ..data.rationals import format_rational
from ..geometry.hj import canonical_chain
from ..search import F7_PRODUCT, PUBLISHED_COUNTS

_l = logging.getLogger(name=__name__)

PathLike = Union[str, pathlib.Path]


def write_jsonl(records: Iterable[Dict], dst: PathLike) -> int:
    n = 0
    with open(dst, "w", encoding="utf-8") as fp:
        for rec in records:
            fp.write(json.dumps(rec) + "\n")
            n += 1
    _l.debug("wrote %d records to %s", n, dst)
    return n


def write_csv(header: Sequence[str], rows: Iterable[Sequence], dst: PathLike) -> int:
    n = 0
    with open(dst, "w", encoding="utf-8", newline="") as fp:
        writer = csv.writer(fp)
        writer.writerow(header)
        for row in rows:
            writer.writerow(row)
            n += 1
    _l.debug("wrote %d rows to %s", n, dst)
    return n


#
# Pipeline
#

def _germ_cell(g) -> str:
    if isinstance(g, CyclicGerm):
        return json.dumps(list(canonical_chain(g.chain)))
    return g.label()


def product_rows(records: Iterable[EliminationRecord]) -> List[List]:
    """
    One row per basket removed by the product filter: the germs, K^2 and the witness (a, b).
    """
    rows = []
    for rec in records:
        if rec.stage != F7_PRODUCT:
            continue
        germs = [_germ_cell(g) for g in rec.basket.germs]
        germs += [""] * (3 - len(germs))
        a, b = rec.witness
        rows.append(germs + [format_rational(rec.basket.k2), a, b])
    return rows


def write_pipeline_reports(report: StageReport, out_dir: PathLike) -> Dict[str, pathlib.Path]:
    """
    Writes the stage report, the survivors, every eliminated basket and the product-filter
    table into `out_dir`.

    @return: file kind -> path
    """
    out_dir = pathlib.Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = {
        "stage_report": out_dir / STAGE_REPORT_FILE,
        "survivors": out_dir / SURVIVORS_FILE,
        "eliminated": out_dir / ELIMINATED_FILE,
        "product": out_dir / PRODUCT_FILE,
    }

    summary = {
        "stages": report.stages,
        "counts": {s: {str(n): c for n, c in report.counts[s].items()} for s in report.stages},
        "delta_sign": report.delta_sign,
        "diff": report.diff(PUBLISHED_COUNTS),
    }
    paths["stage_report"].write_text(json.dumps(summary, indent=2) + "\n", encoding="utf-8")
    write_jsonl((b.to_json() for b in report.survivors), paths["survivors"])
    write_csv(
        ["basket", "stage", "K2", "witness_a", "witness_b"],
        ([rec.basket.label(), rec.stage, format_rational(rec.basket.k2),
          *(rec.witness or ("", ""))] for rec in report.eliminated),
        paths["eliminated"],
    )
    write_csv(
        ["germ1", "germ2", "germ3", "K2", "witness_a", "witness_b"],
        product_rows(report.eliminated),
        paths["product"],
    )
    _l.info("reports written to %s", out_dir)
    return paths


def stage_table(report: StageReport) -> Table:
    table = Table(title="Survivors per stage")
    table.add_column("stage")
    for n in (2, 3, 4):
        table.add_column(f"size {n}", justify="right")
    table.add_column("published", justify="right")

    for stage in report.stages:
        got = report.count_tuple(stage)
        exp = PUBLISHED_COUNTS.get(stage)
        cells = [str(c) if exp is None or c == e else f"[red]{c}[/red]"
                 for c, e in zip(got, exp or got)]
        table.add_row(stage, *cells, str(exp) if exp else "-")
    return table


def basket_table(baskets: Sequence[Basket], title: str = "Baskets") -> Table:
    table = Table(title=title)
    table.add_column("basket")
    table.add_column("K2", justify="right")
    table.add_column("prod r", justify="right")
    for b in baskets:
        table.add_row(b.label(), format_rational(b.k2), str(b.order_product))
    return table


#
# Plt pairs
#

LS_HEADER = ["label", "case", "germs", "b", "gammas", "S_Y^2", "verdict"]


def ls_rows(cases: Iterable[LSCase]) -> List[List]:
    return [
        [c.label or "", c.case, c.pairs_label(), format_rational(c.b),
         " ".join(format_rational(g) for g in c.gammas), format_rational(c.s_y_sq), c.verdict or ""]
        for c in cases
    ]


def write_ls_cases(cases: Sequence[LSCase], dst: PathLike) -> int:
    return write_csv(LS_HEADER, ls_rows(cases), dst)


def ls_table(cases: Sequence[LSCase]) -> Table:
    table = Table(title="Plt pairs (X, bS)")
    for col in LS_HEADER:
        table.add_column(col)
    for row in ls_rows(cases):
        table.add_row(*(str(v) for v in row))
    return table
