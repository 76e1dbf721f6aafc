"""
Event file reading and writing.

Format: UTF-8 CSV, LF line endings, header `name,<stage_1>,...,<stage_s>`
optionally followed by `qual_rank`. Ranks are whole numbers or halves
written as `19.5`. A leading byte-order mark is ignored.
"""
import csv
import io
import logging
import re
from pathlib import Path
from typing import Dict, List, TextIO, Tuple, Union

from scoring.errors import ParseError, ValidationError
from scoring.types import EventField, Rank
from scoring.validator import validate_field

logger = logging.getLogger(__name__)

REFERENCE_COLUMN = "qual_rank"
_RANK_LITERAL = re.compile(r"^[0-9]+(\.5)?$")
_POSITIVE_INT = re.compile(r"^[0-9]+$")

Source = Union[str, Path, TextIO]


def _read_text(source: Source) -> Tuple[str, str]:
    if isinstance(source, (str, Path)):
        path = Path(source)
        try:
            return path.read_text(encoding="utf-8-sig"), str(path)
        except FileNotFoundError:
            raise ValidationError(f"Event file not found: {path}")
        except OSError as e:
            raise ValidationError(f"Cannot read event file {path}: {e.strerror or e}")
        except UnicodeDecodeError as e:
            raise ParseError(f"Event file is not valid UTF-8: {e}")
    return source.read().lstrip("\ufeff"), getattr(source, "name", "<stream>")


def parse_rank(literal: str, row: int, column: str) -> Rank:
    text = literal.strip()
    if not _RANK_LITERAL.match(text):
        raise ParseError(f"Malformed rank {literal!r} (expected e.g. 7 or 19.5)", row=row, column=column)
    try:
        return Rank.of(text)
    except ValidationError as e:
        raise ValidationError(f"row {row}, column '{column}': {e}")


def load_event(source: Source) -> EventField:
    """
    Parse and validate an event file.

    Raises:
        ParseError: malformed header or numeric literal (with row/column)
        ValidationError: invalid rank multiset, rank < 1 or duplicate name
    """
    text, origin = _read_text(source)
    rows = [r for r in csv.reader(io.StringIO(text)) if r]
    if not rows:
        raise ParseError("Event file is empty", row=1)

    header = [h.strip() for h in rows[0]]
    if len(header) < 2 or header[0] != "name":
        raise ParseError("Header must be 'name,<stage_1>,...'", row=1)
    has_reference = header[-1] == REFERENCE_COLUMN
    stages = header[1:-1] if has_reference else header[1:]
    if not stages:
        raise ParseError("Event needs at least one stage column", row=1)

    competitors: List[Tuple[str, List[Rank]]] = []
    reference: Dict[str, int] = {}
    for line, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise ParseError(f"Expected {len(header)} columns, found {len(row)}", row=line)
        name = row[0].strip()
        ranks = [parse_rank(value, line, stage) for value, stage in zip(row[1:], stages)]
        competitors.append((name, ranks))
        if has_reference:
            literal = row[-1].strip()
            if not literal:
                continue
            if not _POSITIVE_INT.match(literal) or int(literal) < 1:
                raise ParseError(f"Malformed {REFERENCE_COLUMN} {literal!r}", row=line, column=REFERENCE_COLUMN)
            reference[name] = int(literal)

    field_ = EventField.build(stages, competitors, reference if has_reference else None)
    validate_field(field_)
    logger.info(f"Loaded {field_.size} competitors over {field_.stage_count} stages from {origin}")
    return field_


def serialize_event(field_: EventField) -> str:
    """Canonical CSV text: field order, halves as `.5`, LF endings."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    header = ["name", *field_.stages]
    if field_.reference is not None:
        header.append(REFERENCE_COLUMN)
    writer.writerow(header)
    for competitor in field_.competitors:
        row = [competitor.name, *(str(r) for r in competitor.ranks)]
        if field_.reference is not None:
            qual = field_.reference.get(competitor.name)
            row.append("" if qual is None else str(qual))
        writer.writerow(row)
    return buffer.getvalue()


def save_event(field_: EventField, path: Union[str, Path]) -> None:
    Path(path).write_text(serialize_event(field_), encoding="utf-8", newline="\n")
