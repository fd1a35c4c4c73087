"""Reference-table fixtures and cell-by-cell reproduction."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from importlib import resources

from .bounds_classical import (
    CLASSICAL_BOUNDS,
    PROJECTIVE_SPHERE_PACKING,
    PUNCTURED,
    TABULATED,
    classical_bound,
)
from .core import SrkParams, normalize_params
from .msrd import msrd_exclusion
from .oracle import DEFAULT_VERTEX_CAP, build_graph, exact_alpha_k
from .spectra import srk_spectrum
from .bounds_spectral import ratio_type

PASS = "PASS"
FAIL = "FAIL"
SKIP = "SKIP"
KNOWN_DISCREPANCY = "KNOWN-DISCREPANCY"

UNKNOWN = "?"
ABSENT = "-"

TABLE_IDS = (1, 2, 3)


@dataclass(frozen=True)
class FixtureRow:
    t: int
    q: int
    n: tuple[int, ...]
    m: tuple[int, ...]
    d: int
    cells: dict[str, str]

    @property
    def params(self) -> SrkParams:
        return normalize_params(self.q, self.n, self.m)

    def label(self) -> str:
        n = ",".join(map(str, self.n))
        m = ",".join(map(str, self.m))
        return f"t={self.t} q={self.q} n=({n}) m=({m}) d={self.d}"


@dataclass(frozen=True)
class TableFixture:
    table_id: int
    header: tuple[str, ...]
    columns: tuple[str, ...]
    rows: tuple[FixtureRow, ...]


def load_fixture(table_id: int) -> TableFixture:
    if table_id not in TABLE_IDS:
        raise ValueError(f"no fixture for table {table_id}")
    text = resources.files("srkbounds.data").joinpath(f"table{table_id}.csv").read_text()
    header = tuple(line[2:] for line in text.splitlines() if line.startswith("# "))
    body = "\n".join(line for line in text.splitlines() if not line.startswith("#"))
    reader = csv.DictReader(io.StringIO(body))
    rows = []
    for rec in reader:
        rows.append(
            FixtureRow(
                t=int(rec["t"]),
                q=int(rec["q"]),
                n=tuple(int(x) for x in rec["n"].split()),
                m=tuple(int(x) for x in rec["m"].split()),
                d=int(rec["d"]),
                cells={k: v for k, v in rec.items() if k not in ("t", "q", "n", "m", "d")},
            )
        )
    return TableFixture(table_id, header, tuple(reader.fieldnames or ()), tuple(rows))


@dataclass(frozen=True)
class CellResult:
    row: int
    label: str
    column: str
    expected: str
    computed: str
    status: str
    note: str = ""

    def line(self) -> str:
        text = f"{self.status:<17} row {self.row:>2} {self.column:<14} expected={self.expected:<6} computed={self.computed:<6} {self.label}"
        return f"{text}  [{self.note}]" if self.note else text


@dataclass
class ReproductionReport:
    table_id: int
    cells: list[CellResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not any(c.status == FAIL for c in self.cells)

    def count(self, status: str) -> int:
        return sum(c.status == status for c in self.cells)

    def for_column(self, column: str) -> list[CellResult]:
        return [c for c in self.cells if c.column == column]

    def summary(self) -> str:
        parts = [f"{s}={self.count(s)}" for s in (PASS, FAIL, SKIP, KNOWN_DISCREPANCY)]
        return f"table {self.table_id}: " + " ".join(parts)


def _compare(expected: str, computed: int) -> str:
    return PASS if int(expected) == computed else FAIL


def _psp_cell(params: SrkParams, d: int, expected: str) -> tuple[str, str, str]:
    stated = classical_bound(PROJECTIVE_SPHERE_PACKING, params, d, PUNCTURED).table_value()
    if int(expected) == stated:
        return str(stated), PASS, ""
    tabulated = classical_bound(PROJECTIVE_SPHERE_PACKING, params, d, TABULATED).table_value()
    if int(expected) == tabulated:
        return str(stated), KNOWN_DISCREPANCY, f"the published value matches the tabulated ball convention ({tabulated})"
    return str(stated), FAIL, f"tabulated convention gives {tabulated}"


def reproduce_table(
    table_id: int,
    max_vertices: int = DEFAULT_VERTEX_CAP,
    alpha_budget: float = 60.0,
    compute_alpha: bool = True,
) -> ReproductionReport:
    """Recompute every checkable cell of a reference table."""
    fixture = load_fixture(table_id)
    report = ReproductionReport(table_id)
    for idx, row in enumerate(fixture.rows, start=1):
        params, d = row.params, row.d
        label = row.label()

        def add(column: str, expected: str, computed: str, status: str, note: str = "") -> None:
            report.cells.append(CellResult(idx, label, column, expected, computed, status, note))

        for column, expected in row.cells.items():
            if expected == ABSENT:
                continue
            if column == "theta":
                add(column, expected, "", SKIP, "Lovasz-type theta bound is not implemented")
                continue
            if column == "alpha":
                if expected == UNKNOWN:
                    add(column, expected, "", SKIP, "no published value")
                elif not compute_alpha or params.size > max_vertices:
                    add(column, expected, "", SKIP, "oracle not run")
                else:
                    res = exact_alpha_k(build_graph(params, max_vertices), d - 1, budget_seconds=alpha_budget)
                    if res.exact:
                        add(column, expected, str(res.value), _compare(expected, res.value))
                    else:
                        status = FAIL if res.value > int(expected) else SKIP
                        add(column, expected, str(res.value), status, "budget exhausted; value is a lower bound")
                continue
            if expected == UNKNOWN:
                add(column, expected, "", SKIP, "no published value")
                continue
            if column == "V":
                add(column, expected, str(params.size), _compare(expected, params.size))
            elif column == "RT":
                value = ratio_type(srk_spectrum(params), d)
                add(column, expected, str(value), _compare(expected, value))
            elif column == PROJECTIVE_SPHERE_PACKING:
                computed, status, note = _psp_cell(params, d, expected)
                add(column, expected, computed, status, note)
            elif column in CLASSICAL_BOUNDS:
                value = classical_bound(column, params, d).table_value()
                add(column, expected, str(value), _compare(expected, value))
            else:
                raise KeyError(f"unexpected fixture column {column!r}")

        if table_id == 3:
            verdict = msrd_exclusion(params, d, psp_convention=TABULATED)
            ok = verdict.excluded and verdict.only_spectral
            add("only-spectral", "true", str(ok).lower(), PASS if ok else FAIL, "published bound set")
            stated = msrd_exclusion(params, d, psp_convention=PUNCTURED)
            if stated.only_spectral:
                add("only-spectral*", "true", "true", PASS, "printed PSP formula")
            else:
                beaten = [b.name for b in stated.bounds if b.applicable and b.value < stated.singleton_size and b.name != "RT"]
                add(
                    "only-spectral*",
                    "true",
                    "false",
                    KNOWN_DISCREPANCY,
                    f"printed PSP formula: {','.join(beaten)} also below S",
                )
    return report
