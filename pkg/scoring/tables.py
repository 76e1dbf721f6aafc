"""
Score-tables: affine normalization of score functions and integer scoring tables.
"""
import csv
import io
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Tuple, Union

from scoring.core import group_signature, rank_field, ScoringSystem
from scoring.errors import (
    ConfigurationError,
    DegenerateFunctionError,
    DomainError,
    ParseError,
    TableDegeneracyError,
    ValidationError,
)
from scoring.functions import Affine, Linear, Logarithmic, Power, ScoreFunction, Table
from scoring.tiebreak import SharedRank
from scoring.types import EventField, Rank, Score

logger = logging.getLogger(__name__)

ROUNDING_MODE = "half-away-from-zero"


def affine_normalize(f: ScoreFunction, n: int, lo: float, hi: float) -> Affine:
    """Return a + b*f with g(1) = lo and g(n) = hi."""
    if n < 2:
        raise ConfigurationError(f"Normalization needs n >= 2, got {n}")
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ConfigurationError(f"Normalization endpoints must be finite, got lo={lo}, hi={hi}")
    if not lo < hi:
        raise ConfigurationError(f"Normalization needs lo < hi, got lo={lo}, hi={hi}")
    f1 = float(f(1))
    fn = float(f(n))
    if fn <= f1:
        raise DegenerateFunctionError(f"{f.describe()} has f({n}) = f(1) = {f1}; cannot normalize")
    b = (hi - lo) / (fn - f1)
    a = lo - b * f1
    return Affine(f, a, b)


def normalized_trio(n: int = 20, lo: float = 1.0, hi: Optional[float] = None) -> Dict[str, Affine]:
    """Linear, square-root and logarithmic functions pinned to the same endpoints."""
    top = float(n) if hi is None else hi
    return {
        "g1": affine_normalize(Linear(), n, lo, top),
        "g2": affine_normalize(Power(0.5), n, lo, top),
        "g3": affine_normalize(Logarithmic(), n, lo, top),
    }


def round_half_away(value: Score) -> int:
    """Round to the nearest integer, halves away from zero."""
    exact = Fraction(value)
    magnitude = math.floor(abs(exact) + Fraction(1, 2))
    return magnitude if exact >= 0 else -magnitude


@dataclass(frozen=True)
class TableProvenance:
    function: str
    scale: float
    offset: float
    rounding: str = ROUNDING_MODE


@dataclass(frozen=True)
class ScoringTable:
    """Integer points per rank 1..n, strictly increasing."""

    n: int
    entries: Tuple[Tuple[int, int], ...]
    provenance: Optional[TableProvenance] = None

    def __post_init__(self):
        ranks = [rank for rank, _ in self.entries]
        if ranks != list(range(1, self.n + 1)):
            raise TableDegeneracyError(f"Table entries must cover ranks 1..{self.n} exactly once, in order")
        colliding: List[int] = []
        for (low_rank, low), (high_rank, high) in zip(self.entries, self.entries[1:]):
            if high <= low:
                colliding.extend(r for r in (low_rank, high_rank) if r not in colliding)
        if colliding:
            detail = ", ".join(f"{r}->{self.points(r)}" for r in colliding)
            raise TableDegeneracyError(
                f"Scoring table is not strictly increasing; colliding ranks: {detail}", colliding
            )

    def points(self, rank: int) -> int:
        return self.entries[rank - 1][1]

    @property
    def values(self) -> List[int]:
        return [p for _, p in self.entries]

    def as_function(self) -> Table:
        name = "table" if self.provenance is None else f"table({self.provenance.function})"
        return Table.of({rank: points for rank, points in self.entries}, name=name)

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["rank", "points"])
        for rank, points in self.entries:
            writer.writerow([rank, points])
        return buffer.getvalue()


def generate_table(f: ScoreFunction, n: int, scale: float = 100, offset: float = 0) -> ScoringTable:
    """
    Points for rank j are round(scale * f(j) + offset).

    Raises TableDegeneracyError when rounding merges or inverts adjacent ranks.
    """
    if n < 2:
        raise ConfigurationError(f"A scoring table needs n >= 2, got {n}")
    if not scale > 0:
        raise ConfigurationError(f"Table scale must be positive, got {scale}")
    if not (math.isfinite(scale) and math.isfinite(offset)):
        raise ConfigurationError(f"Table scale and offset must be finite, got scale={scale}, offset={offset}")

    entries = []
    for j in range(1, n + 1):
        value = f.evaluate(Rank.of(j))
        if isinstance(value, Fraction):
            raw: Score = Fraction(scale) * value + Fraction(offset)
        else:
            raw = scale * value + offset
        entries.append((j, round_half_away(raw)))

    table = ScoringTable(n, tuple(entries), TableProvenance(f.describe(), scale, offset))
    logger.info(f"Generated {n}-row table for {f.describe()} (scale={scale}, offset={offset})")
    return table


def load_table(path: Union[str, Path]) -> ScoringTable:
    """Read a `rank,points` CSV as written by ScoringTable.to_csv."""
    try:
        text = Path(path).read_text(encoding="utf-8-sig")
    except FileNotFoundError:
        raise ValidationError(f"Table file not found: {path}")
    except OSError as e:
        raise ValidationError(f"Cannot read table file {path}: {e.strerror or e}")
    except UnicodeDecodeError as e:
        raise ParseError(f"Table file is not valid UTF-8: {e}")
    reader = csv.reader(io.StringIO(text))
    rows = list(reader)
    if not rows or [c.strip() for c in rows[0]] != ["rank", "points"]:
        raise ParseError("Table file must start with header 'rank,points'", row=1)
    entries = []
    for line, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != 2:
            raise ParseError(f"Expected 2 columns, found {len(row)}", row=line)
        try:
            entries.append((int(row[0]), int(row[1])))
        except ValueError:
            raise ParseError(f"Not an integer: {row}", row=line)
    entries.sort()
    return ScoringTable(len(entries), tuple(entries))


@dataclass(frozen=True)
class FieldTableCheck:
    label: str
    applicable: bool
    match: bool
    only_in_table: Tuple[Tuple[str, ...], ...] = ()
    only_in_function: Tuple[Tuple[str, ...], ...] = ()
    note: str = ""


@dataclass(frozen=True)
class TableEquivalenceReport:
    checks: Tuple[FieldTableCheck, ...]

    @property
    def all_match(self) -> bool:
        return all(c.match for c in self.checks if c.applicable)


def table_ranking_equivalence(
    table: ScoringTable, f: ScoreFunction, fields: Mapping[str, EventField]
) -> TableEquivalenceReport:
    """
    Rank each field with the table and with f; report tie groups present in
    only one of the two standings. Rounding can create or break ties.
    """
    as_table = ScoringSystem(table.as_function(), chain=(SharedRank(),), label="table")
    as_function = ScoringSystem(f, chain=(SharedRank(),), label=f.describe())

    checks = []
    for label, field_ in fields.items():
        try:
            by_table = rank_field(field_, as_table)
        except DomainError as e:
            checks.append(FieldTableCheck(label, applicable=False, match=False, note=str(e)))
            continue
        by_function = rank_field(field_, as_function)

        table_groups = group_signature(by_table)
        function_groups = group_signature(by_function)
        only_table = tuple(tuple(sorted(g)) for g in table_groups if g not in function_groups)
        only_function = tuple(tuple(sorted(g)) for g in function_groups if g not in table_groups)
        match = table_groups == function_groups
        if not match:
            logger.warning(f"Table and {f.describe()} disagree on '{label}'")
        checks.append(FieldTableCheck(label, True, match, only_table, only_function))
    return TableEquivalenceReport(tuple(checks))
