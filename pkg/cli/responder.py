"""
Responder Module (CLI step 3).
Formats command results as aligned text tables or CSV.
"""
import csv
import io
import logging
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Dict, List, Sequence

from rich.console import Console
from rich.table import Table as RichTable

import config
from cli.executor import CommandResult
from scoring.analysis import EquivalencePair, MethodComparison
from scoring.fieldsim import SimResult
from scoring.tables import ScoringTable
from scoring.types import EventField, Score, Standings

logger = logging.getLogger(__name__)


def format_score(score: Score) -> str:
    """Exact scores without trailing zeros; floats with config.FLOAT_DECIMALS places."""
    if isinstance(score, Fraction):
        if score.denominator == 1:
            return str(score.numerator)
        den = score.denominator
        while den % 2 == 0:
            den //= 2
        while den % 5 == 0:
            den //= 5
        if den == 1:
            with localcontext() as ctx:
                ctx.prec = 50
                text = format(Decimal(score.numerator) / Decimal(score.denominator), "f")
            return text.rstrip("0").rstrip(".")
        return f"{float(score):.{config.FLOAT_DECIMALS}f}"
    return f"{score:.{config.FLOAT_DECIMALS}f}"


def _csv(rows: Sequence[Sequence[object]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerows(rows)
    return buffer.getvalue()


class Responder:
    """Formats results into text or CSV."""

    def __init__(self, no_color: bool = config.NO_COLOR, color_terminal: bool = False):
        self.no_color = no_color
        self.color_terminal = color_terminal and not no_color

    def respond(self, result: CommandResult, output_format: str) -> str:
        formatters = {
            "score": self._format_score,
            "compare": self._format_compare,
            "table": self._format_table,
            "equiv": self._format_equiv,
            "validate": self._format_validate,
            "simulate": self._format_simulate,
            "normalize": self._format_normalize,
        }
        return formatters[result.command](result, output_format == "csv")

    def _render(self, table: RichTable, footer: Sequence[str] = ()) -> str:
        buffer = io.StringIO()
        console = Console(
            file=buffer,
            width=config.TEXT_WIDTH,
            force_terminal=self.color_terminal,
            no_color=self.no_color,
            highlight=False,
            emoji=False,
        )
        console.print(table)
        for line in footer:
            console.print(line, markup=False)
        return buffer.getvalue()

    def _new_table(self, title: str) -> RichTable:
        header_style = "" if self.no_color else "bold"
        return RichTable(title=title, header_style=header_style, title_style=header_style)

    @staticmethod
    def _rank_label(standings: Standings) -> Dict[str, str]:
        labels = {}
        for group in standings.groups():
            for entry in group:
                labels[entry.name] = f"{entry.rank} (tie)" if len(group) > 1 else str(entry.rank)
        return labels

    def _format_score(self, result: CommandResult, as_csv: bool) -> str:
        standings: Standings = result.payload
        field_: EventField = result.field
        if as_csv:
            rows: List[List[object]] = [["rank", "name", *field_.stages, "score"]]
            for e in standings:
                rows.append([e.rank, e.name, *(str(r) for r in e.ranks), format_score(e.score)])
            return _csv(rows)

        labels = self._rank_label(standings)
        table = self._new_table(f"{result.source}: {standings.label} method")
        table.add_column("Rank", justify="right")
        table.add_column("Name")
        table.add_column("Discipline ranks")
        table.add_column("Score", justify="right")
        for e in standings:
            table.add_row(labels[e.name], e.name, str(e.ranks), format_score(e.score))
        footer = [
            f"Tie {' / '.join(r.members)} broken by {r.policy}: "
            + " > ".join("=".join(part) for part in r.outcome)
            for r in standings.tie_resolutions
            if r.resolved
        ]
        return self._render(table, footer)

    def _format_compare(self, result: CommandResult, as_csv: bool) -> str:
        comparison: MethodComparison = result.payload
        if as_csv:
            rows: List[List[object]] = [["name", "rank_a", "rank_b", "delta"]]
            rows.extend([r.name, r.rank_a, r.rank_b, r.delta] for r in comparison.rows)
            return _csv(rows)

        table = self._new_table(f"{result.source}: {comparison.label_a} vs {comparison.label_b}")
        table.add_column("Name")
        table.add_column(comparison.label_a, justify="right")
        table.add_column(comparison.label_b, justify="right")
        table.add_column("Delta", justify="right")
        for r in comparison.rows:
            table.add_row(r.name, str(r.rank_a), str(r.rank_b), f"{r.delta:+d}" if r.delta else "0")

        distance = comparison.distance
        footer = [
            f"Top {comparison.k} under {comparison.label_a} only: {', '.join(comparison.top_k_in_a_not_b) or '-'}",
            f"Top {comparison.k} under {comparison.label_b} only: {', '.join(comparison.top_k_in_b_not_a) or '-'}",
            f"Kendall distance: {distance.discordant} discordant pairs (tau = {distance.tau:.3f})"
            + (" [approximate: shared ranks completed alphabetically]" if distance.approximate else ""),
        ]
        if comparison.cut_ambiguous:
            footer.append("Note: the cut falls inside an unresolved tie")
        return self._render(table, footer)

    def _format_table(self, result: CommandResult, as_csv: bool) -> str:
        table_: ScoringTable = result.payload
        if as_csv:
            return table_.to_csv()
        provenance = table_.provenance
        title = "Scoring table" if provenance is None else (
            f"Scoring table: round({provenance.scale:g} * {provenance.function} + {provenance.offset:g})"
        )
        table = self._new_table(title)
        table.add_column("Rank", justify="right")
        table.add_column("Points", justify="right")
        for rank, points in table_.entries:
            table.add_row(str(rank), str(points))
        return self._render(table)

    def _format_equiv(self, result: CommandResult, as_csv: bool) -> str:
        pair: EquivalencePair = result.payload
        method = dict(result.extra).get("method", pair.function)
        a, b = pair.pair
        if as_csv:
            return _csv([["method", "n", "a", "b", "residual"], [method, pair.n, a, b, format_score(pair.residual)]])
        return (
            f"{method}, n={pair.n}: ranks ({a}, {b}) ~ ranks (1, {pair.n}); "
            f"residual {format_score(pair.residual)}\n"
        )

    def _format_validate(self, result: CommandResult, as_csv: bool) -> str:
        field_: EventField = result.payload
        notes = dict(result.extra).get("notes", "")
        if as_csv:
            return _csv([["source", "competitors", "stages", "valid"],
                         [result.source, field_.size, field_.stage_count, "true"]])
        reference = "with" if field_.reference is not None else "without"
        text = (
            f"OK: {result.source}: {field_.size} competitors, {field_.stage_count} stages "
            f"({', '.join(field_.stages)}), {reference} reference standings\n"
        )
        if notes:
            text += f"Note: {notes}\n"
        return text

    def _format_simulate(self, result: CommandResult, as_csv: bool) -> str:
        sim: SimResult = result.payload
        if as_csv:
            rows: List[List[object]] = [["method", "estimate", "stderr", "trials", "seed"]]
            rows.extend([e.method, f"{e.estimate:.6f}", f"{e.stderr:.6f}", sim.trials, sim.seed] for e in sim.estimates)
            return _csv(rows)
        table = self._new_table(f"P(top k) for profile {sim.profile} ({sim.trials} trials, seed {sim.seed})")
        table.add_column("Method")
        table.add_column("Estimate", justify="right")
        table.add_column("Std. error", justify="right")
        for e in sim.estimates:
            table.add_row(e.method, f"{e.estimate:.6f}", f"{e.stderr:.6f}")
        return self._render(table)

    def _format_normalize(self, result: CommandResult, as_csv: bool) -> str:
        names = dict(result.extra)["names"]
        if as_csv:
            rows: List[List[object]] = [["rank", *names]]
            rows.extend([j, *(f"{v:.6f}" for v in values)] for j, values in result.payload)
            return _csv(rows)
        table = self._new_table("Normalized score functions")
        table.add_column("Rank", justify="right")
        for name in names:
            table.add_column(name, justify="right")
        for j, values in result.payload:
            table.add_row(str(j), *(f"{v:.3f}" for v in values))
        return self._render(table)
