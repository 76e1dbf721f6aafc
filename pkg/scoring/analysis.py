"""
Cross-method analysis: rank shifts, qualification-cut differences,
equivalence pairs and rank distance.
"""
import logging
from dataclasses import dataclass
from typing import List, Tuple

from scipy.stats import kendalltau

import config
from scoring.core import ScoringSystem, rank_field
from scoring.errors import ConfigurationError, ContractError
from scoring.functions import ScoreFunction
from scoring.types import EventField, Score, Standings

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ComparisonRow:
    name: str
    rank_a: int
    rank_b: int

    @property
    def delta(self) -> int:
        return self.rank_b - self.rank_a


@dataclass(frozen=True)
class RankDistance:
    discordant: int
    tau: float
    approximate: bool


@dataclass(frozen=True)
class MethodComparison:
    label_a: str
    label_b: str
    k: int
    rows: Tuple[ComparisonRow, ...]
    top_k_in_a_not_b: Tuple[str, ...]
    top_k_in_b_not_a: Tuple[str, ...]
    distance: RankDistance
    cut_ambiguous: bool
    standings_a: Standings
    standings_b: Standings


def _top_k(standings: Standings, k: int) -> Tuple[List[str], bool]:
    """First k names, and whether the cut falls inside an unresolved tie."""
    entries = standings.entries
    ambiguous = k < len(entries) and entries[k - 1].group == entries[k].group
    return [e.name for e in entries[:k]], ambiguous


def compare_methods(field_: EventField, system_a: ScoringSystem, system_b: ScoringSystem, k: int) -> MethodComparison:
    """Rank the field under both systems and report the differences."""
    if not 1 <= k <= field_.size:
        raise ConfigurationError(f"Cut size k must be between 1 and {field_.size}, got {k}")

    standings_a = rank_field(field_, system_a)
    standings_b = rank_field(field_, system_b)
    ranks_b = standings_b.ranks_by_name()
    rows = tuple(ComparisonRow(e.name, e.rank, ranks_b[e.name]) for e in standings_a)

    top_a, ambiguous_a = _top_k(standings_a, k)
    top_b, ambiguous_b = _top_k(standings_b, k)
    if ambiguous_a or ambiguous_b:
        logger.warning(f"Top-{k} cut falls inside an unresolved tie; cut membership follows listing order")

    return MethodComparison(
        label_a=system_a.name,
        label_b=system_b.name,
        k=k,
        rows=rows,
        top_k_in_a_not_b=tuple(n for n in top_a if n not in top_b),
        top_k_in_b_not_a=tuple(n for n in top_b if n not in top_a),
        distance=rank_distance_report(standings_a, standings_b),
        cut_ambiguous=ambiguous_a or ambiguous_b,
        standings_a=standings_a,
        standings_b=standings_b,
    )


def _total_order(standings: Standings) -> List[str]:
    """Remaining shared ranks are completed alphabetically."""
    return [e.name for e in sorted(standings.entries, key=lambda e: (e.rank, e.name))]


def rank_distance_report(standings_a: Standings, standings_b: Standings) -> RankDistance:
    """Kendall tau distance between the two standings, with the tau coefficient."""
    if sorted(standings_a.names) != sorted(standings_b.names):
        raise ContractError("Rank distance needs both standings to cover the same competitors")

    approximate = not (standings_a.is_total and standings_b.is_total)
    if approximate:
        logger.warning("Standings contain shared ranks; rank distance uses an alphabetical completion")

    n = len(standings_a)
    if n < 2:
        return RankDistance(0, 1.0, approximate)

    order_a = _total_order(standings_a)
    position_b = {name: i for i, name in enumerate(_total_order(standings_b))}
    tau, _ = kendalltau(list(range(n)), [position_b[name] for name in order_a])
    pairs = n * (n - 1) // 2
    discordant = int(round((1.0 - float(tau)) * pairs / 2))
    return RankDistance(discordant, float(tau), approximate)


def rank_distance(standings_a: Standings, standings_b: Standings) -> int:
    """Number of discordant pairs."""
    return rank_distance_report(standings_a, standings_b).discordant


@dataclass(frozen=True)
class EquivalencePair:
    function: str
    n: int
    pair: Tuple[int, int]
    residual: Score
    target: Score


def equivalence_pair(f: ScoreFunction, n: int) -> EquivalencePair:
    """
    Adjacent ranks (a, a+1) whose combined score best matches a first plus a
    last place: minimises |f(a) + f(a+1) - f(1) - f(n)|, smaller a on ties.
    """
    if n < 3:
        raise ConfigurationError(f"Equivalence search needs n >= 3, got {n}")

    target = f(1) + f(n)
    best_a = 1
    best: Score = abs(f(1) + f(2) - target)
    for a in range(2, n):
        residual = abs(f(a) + f(a + 1) - target)
        if residual < best:
            best_a, best = a, residual

    if not f.exact and best <= config.FLOAT_TOLERANCE * max(1.0, abs(float(target))):
        best = 0.0
    logger.debug(f"Equivalence pair for {f.describe()}, n={n}: ({best_a}, {best_a + 1}) residual {best}")
    return EquivalencePair(f.describe(), n, (best_a, best_a + 1), best, target)
