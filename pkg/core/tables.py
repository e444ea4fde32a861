"""
Published parameter tables: row lists and regeneration
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from core.aqecc import build_css, css_family
from core.convolutional import build_conv_family, conv_profile
from core.errors import ProfileError, WorkbenchError
from core.families import block_family
from core.field import FieldOptions
from utils.constants import DEFAULT_BUDGET

logger = logging.getLogger(__name__)

TYPO_NOTE = "listed with k=9; regenerated with (q-1)/r = 8, r = 2"

TABLE_TITLES = {
    1: "Convolutional MDS codes",
    2: "Asymmetric quantum MDS codes (n = q + 1)",
    3: "Asymmetric quantum MDS codes (n = (q + 1) / 2)",
}

CONV_COLUMNS = (
    "row", "family", "q", "r", "i", "n", "k", "gamma", "memory",
    "df_lower", "df_upper", "singleton", "expected", "status", "note",
)
CSS_COLUMNS = (
    "row", "family", "q", "r", "i", "j", "n", "k", "dz", "dx",
    "mds", "purity", "expected", "status", "note",
)


@dataclass(frozen=True)
class TableRow:
    """
    One published row.

    Attributes:
        table: 1, 2 or 3
        family: Construction tag
        q, r: Setting
        i, j: Indices (j only for quantum rows)
        expected: (n, k, γ, m, d) for table 1, (n, k, dx, dz) otherwise
        note: Reading applied to the published row
    """
    table: int
    family: str
    q: int
    r: int
    i: int
    expected: Tuple[int, ...]
    j: Optional[int] = None
    note: str = ""

    @property
    def expected_label(self) -> str:
        if self.table == 1:
            n, k, gamma, memory, d = self.expected
            return f"({n}, {k}, {gamma}; {memory}, {d})_{self.q}"
        n, k, dx, dz = self.expected
        return f"[[{n}, {k}, {dx}/{dz}]]_{self.q}"


@dataclass
class RowResult:
    """Outcome of regenerating one row; record is the construction's serialization."""
    index: int
    row: TableRow
    status: str
    label: Optional[str] = None
    record: Dict = field(default_factory=dict)
    columns: Dict = field(default_factory=dict)
    message: str = ""

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    def to_dict(self) -> dict:
        return {
            "row": self.index,
            "family": self.row.family,
            "q": self.row.q,
            "r": self.row.r,
            "i": self.row.i,
            "j": self.row.j,
            "expected": self.row.expected_label,
            "label": self.label,
            "status": self.status,
            "note": self.row.note,
            "message": self.message,
            "record": self.record,
        }


def _conv_rows(family: str, q: int, r: int, expected: Dict[int, Tuple[int, int, int]], note: str = "") -> List[TableRow]:
    """expected maps i to (n, k, d) of V⊥; every row has γ = 2 and m = 1."""
    rows = []
    for i, (n, k, d) in expected.items():
        rows.append(TableRow(1, family, q, r, i, (n, k, 2, 1, d), note=note))
    return rows


def _css_rows(table: int, family: str, q: int, r: int, n: int, expected) -> List[TableRow]:
    """expected: ((i, j), k, dx, dz) tuples."""
    return [TableRow(table, family, q, r, i, (n, k, dx, dz), j=j) for (i, j), k, dx, dz in expected]


TABLE_ROWS: Dict[int, Tuple[TableRow, ...]] = {
    1: tuple(
        _conv_rows("mainI", 9, 4, {2: (10, 7, 6), 3: (10, 5, 8)})
        + _conv_rows("mainI", 11, 5, {2: (12, 9, 6), 3: (12, 7, 8), 4: (12, 5, 10)})
        + _conv_rows("mainI", 25, 6, {2: (26, 23, 6), 5: (26, 17, 12), 10: (26, 7, 22)})
        + _conv_rows("mainII", 11, 2, {2: (12, 8, 7), 3: (12, 6, 9), 4: (12, 4, 11)})
        + _conv_rows("mainII", 19, 2, {
            2: (20, 16, 7), 3: (20, 14, 9), 4: (20, 12, 11), 5: (20, 10, 13), 8: (20, 4, 19),
        })
        + _conv_rows("mainIII", 13, 6, {2: (7, 4, 6)})
        + _conv_rows("mainIII", 17, 2, {2: (9, 6, 6), 3: (9, 4, 8)}, note=TYPO_NOTE)
        + _conv_rows("mainIII", 29, 7, {
            2: (15, 12, 6), 3: (15, 10, 8), 4: (15, 8, 10), 5: (15, 6, 12), 6: (15, 4, 14),
        })
    ),
    2: tuple(
        _css_rows(2, "mainasyI", 9, 4, 10, (
            ((0, 3), 6, 4, 2), ((1, 3), 4, 4, 4), ((2, 3), 2, 4, 6),
        ))
        + _css_rows(2, "mainasyI", 17, 2, 18, (
            ((0, 7), 14, 4, 2), ((1, 7), 12, 4, 4), ((2, 7), 10, 4, 6), ((3, 7), 8, 4, 8),
            ((4, 7), 6, 4, 10), ((6, 7), 2, 4, 14), ((1, 2), 2, 14, 4),
        ))
        + _css_rows(2, "mainasyII", 11, 2, 12, (
            ((0, 4), 8, 3, 3), ((1, 4), 6, 3, 5), ((2, 4), 4, 3, 7), ((3, 4), 2, 3, 9),
            ((0, 1), 2, 9, 3), ((0, 2), 4, 7, 3),
        ))
        + _css_rows(2, "mainasyII", 13, 4, 14, (
            ((0, 5), 10, 3, 3), ((4, 5), 2, 3, 11), ((1, 3), 4, 7, 5), ((1, 5), 8, 3, 5),
            ((2, 5), 6, 3, 7),
        ))
    ),
    3: tuple(
        _css_rows(3, "mainasyIII", 17, 2, 9, (
            ((0, 3), 6, 3, 2), ((1, 3), 4, 3, 4), ((2, 3), 2, 3, 6), ((0, 1), 2, 7, 2),
            ((0, 2), 4, 5, 2),
        ))
        + _css_rows(3, "mainasyIII", 29, 7, 15, (
            ((0, 6), 12, 3, 2), ((1, 6), 10, 3, 4), ((2, 6), 8, 3, 6), ((3, 6), 6, 3, 8),
            ((4, 6), 4, 3, 10), ((5, 6), 2, 3, 12), ((0, 1), 2, 13, 2), ((0, 2), 4, 11, 2),
            ((0, 3), 6, 9, 2), ((0, 4), 8, 7, 2), ((0, 5), 10, 5, 2), ((4, 5), 2, 5, 10),
            ((1, 3), 4, 9, 4),
        ))
    ),
}


def table_rows(which: int) -> Tuple[TableRow, ...]:
    try:
        return TABLE_ROWS[which]
    except KeyError:
        raise ProfileError(f"no table {which}; choose 1, 2 or 3") from None


def _conv_result(index: int, row: TableRow, budget: int, options: FieldOptions) -> RowResult:
    tower = options.tower(conv_profile(row.family, row.q, row.r))
    conv = build_conv_family(row.family, tower, i=row.i, budget=budget)
    n, k, gamma, memory, d = row.expected
    matches = conv.params() == (n, k, gamma, memory) and conv.exact and conv.df_lower == d and conv.mds
    columns = {
        "row": index, "family": row.family, "q": row.q, "r": row.r, "i": row.i,
        "n": conv.n, "k": conv.k, "gamma": conv.gamma, "memory": conv.memory,
        "df_lower": conv.df_lower, "df_upper": conv.df_upper, "singleton": conv.singleton,
        "expected": row.expected_label, "status": "ok" if matches else "mismatch", "note": row.note,
    }
    return RowResult(index, row, columns["status"], conv.label, conv.to_dict(), columns)


def _css_result(index: int, row: TableRow, budget: int, options: FieldOptions) -> RowResult:
    block = block_family(css_family(row.family).block_tag)
    tower = options.tower(block.profile(row.q, row.r))
    record = build_css(row.family, budget=budget, tower=tower, i=row.i, j=row.j)
    n, k, dx, dz = row.expected
    matches = (record.n, record.k, record.dx, record.dz) == (n, k, dx, dz) and record.mds
    columns = {
        "row": index, "family": row.family, "q": row.q, "r": row.r, "i": row.i, "j": row.j,
        "n": record.n, "k": record.k, "dz": record.dz, "dx": record.dx,
        "mds": record.mds, "purity": record.purity.value,
        "expected": row.expected_label, "status": "ok" if matches else "mismatch", "note": row.note,
    }
    return RowResult(index, row, columns["status"], record.label, record.to_dict(), columns)


def regenerate_row(
    index: int,
    row: TableRow,
    budget: int = DEFAULT_BUDGET,
    options: Optional[FieldOptions] = None,
) -> RowResult:
    """
    Rebuilds and certifies one row.

    Args:
        index: Position of the row in its table
        row: Published row
        budget: Operation budget per certificate
        options: Modulus table, field ceiling and search fallback

    Returns:
        RowResult: status "ok", "mismatch" or "error"
    """
    options = options or FieldOptions()
    try:
        if row.table == 1:
            result = _conv_result(index, row, budget, options)
        else:
            result = _css_result(index, row, budget, options)
    except WorkbenchError as e:
        logger.error(f"Table {row.table} row {index} ({row.expected_label}) failed: {e}")
        columns = CONV_COLUMNS if row.table == 1 else CSS_COLUMNS
        blank = {name: None for name in columns}
        blank.update(row=index, family=row.family, q=row.q, r=row.r, i=row.i,
                     expected=row.expected_label, status="error", note=row.note)
        if row.table != 1:
            blank["j"] = row.j
        return RowResult(index, row, "error", columns=blank, message=str(e))

    level = logging.INFO if result.ok else logging.WARNING
    logger.log(level, f"Table {row.table} row {index}: {result.label} vs {row.expected_label}: {result.status}")
    return result


def _regenerate_star(args) -> RowResult:
    return regenerate_row(*args)


def regenerate_table(
    which: int,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    options: Optional[FieldOptions] = None,
) -> List[RowResult]:
    """
    Regenerates every row of a table, in published order.

    Args:
        which: 1, 2 or 3
        budget: Operation budget per certificate
        workers: Process count; 1 runs in-process
        options: Modulus table, field ceiling and search fallback

    Returns:
        List[RowResult]: One result per published row
    """
    rows = table_rows(which)
    options = options or FieldOptions()
    jobs = [(index, row, budget, options) for index, row in enumerate(rows)]
    logger.info(f"Regenerating table {which} ({len(rows)} rows, {workers} worker(s))")
    if workers <= 1:
        return [_regenerate_star(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
        # map keeps submission order
        return list(pool.map(_regenerate_star, jobs))
