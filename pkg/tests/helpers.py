"""Shared builders and invariant checks for the test suite."""
import random
from fractions import Fraction
from typing import List

from scoring.core import scores_tied
from scoring.types import EventField, Standings

# Published integer tables for n = 20: round(100 * sqrt(j) - 100) and round(100 * ln j).
SQRT_TABLE = [0, 41, 73, 100, 124, 145, 165, 183, 200, 216, 232, 246, 261, 274, 287, 300, 312, 324, 336, 347]
LOG_TABLE = [0, 69, 110, 139, 161, 179, 195, 208, 220, 230, 240, 248, 256, 264, 271, 277, 283, 289, 294, 300]


def random_field(rng: random.Random, n: int, s: int = 3, tie_prob: float = 0.15) -> EventField:
    """A valid field; adjacent placements are merged into tie-averaged pairs with probability tie_prob."""
    names = [f"c{i:02d}" for i in range(n)]
    columns: List[dict] = []
    for _ in range(s):
        order = names[:]
        rng.shuffle(order)
        ranks = {}
        place = 1
        i = 0
        while i < n:
            size = 2 if i + 1 < n and rng.random() < tie_prob else 1
            shared = Fraction(2 * place + size - 1, 2)
            for name in order[i:i + size]:
                ranks[name] = shared
            place += size
            i += size
        columns.append(ranks)
    rows = [(name, [col[name] for col in columns]) for name in names]
    return EventField.build([f"stage{i + 1}" for i in range(s)], rows)


def assert_competition_numbering(standings: Standings) -> None:
    """Each rank = 1 + number of competitors in strictly earlier tie groups."""
    ahead = 0
    for group in standings.groups():
        for entry in group:
            assert entry.rank == ahead + 1
        ahead += len(group)


def assert_numbering_by_score(standings: Standings) -> None:
    """For untie-broken standings: rank = 1 + number with strictly smaller score."""
    for entry in standings:
        smaller = sum(
            1 for other in standings
            if other.score < entry.score and not scores_tied(other.score, entry.score, standings.exact)
        )
        assert entry.rank == smaller + 1, entry.name


def ranks_in_field_order(standings: Standings, field_: EventField) -> List[int]:
    lookup = standings.ranks_by_name()
    return [lookup[name] for name in field_.names]


def scores_in_field_order(standings: Standings, field_: EventField) -> list:
    lookup = {e.name: e.score for e in standings}
    return [lookup[name] for name in field_.names]
