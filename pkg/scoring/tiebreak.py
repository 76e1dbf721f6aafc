"""
Tie-break policies and chains.

A chain is an ordered list of policies. Each policy splits an unresolved tie
group into ordered sub-groups; whatever is still tied passes to the next
policy. SharedRank ends every chain and leaves the remaining ties in place.
"""
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from itertools import groupby
from typing import List, Mapping, Optional, Sequence, Tuple

from scoring.errors import ConfigurationError, ContractError
from scoring.types import Competitor, EventField, Standings, TieResolutionRecord

logger = logging.getLogger(__name__)

Group = List[Competitor]


class TieBreakPolicy(ABC):
    """Splits one tie group into ordered sub-groups."""

    pair_only: bool = False

    @abstractmethod
    def split(self, members: Group, context: Optional[EventField]) -> List[Group]:
        """Return ordered sub-groups; a single sub-group means no progress."""

    @abstractmethod
    def describe(self) -> str:
        """Policy name as used on the command line."""


@dataclass(frozen=True)
class HeadToHead(TieBreakPolicy):
    """Two-way ties only: whoever ranks strictly better in a majority of stages goes first."""

    pair_only = True

    def split(self, members: Group, context: Optional[EventField]) -> List[Group]:
        if len(members) != 2:
            return [list(members)]
        first, second = members
        stages = len(first.ranks)
        first_wins = sum(1 for a, b in zip(first.ranks, second.ranks) if a < b)
        second_wins = sum(1 for a, b in zip(first.ranks, second.ranks) if b < a)
        if 2 * first_wins > stages:
            return [[first], [second]]
        if 2 * second_wins > stages:
            return [[second], [first]]
        return [list(members)]

    def describe(self) -> str:
        return "head2head"


@dataclass(frozen=True)
class CountBack(TieBreakPolicy):
    """
    Order by rank in reference standings (e.g. qualification). Members missing
    from the reference stay tied with each other behind those present.
    """

    reference: Optional[Mapping[str, int]] = None

    def split(self, members: Group, context: Optional[EventField]) -> List[Group]:
        reference = self.reference
        if reference is None and context is not None:
            reference = context.reference
        if reference is None:
            raise ConfigurationError("count-back needs reference standings, but none are available")

        present = sorted((m for m in members if m.name in reference), key=lambda m: reference[m.name])
        absent = [m for m in members if m.name not in reference]
        parts = [list(g) for _, g in groupby(present, key=lambda m: reference[m.name])]
        if absent:
            parts.append(absent)
        return parts

    def describe(self) -> str:
        return "countback"


@dataclass(frozen=True)
class DesignatedStage(TieBreakPolicy):
    """Order by the rank in one stage (0-based index)."""

    stage: int

    def split(self, members: Group, context: Optional[EventField]) -> List[Group]:
        stages = len(members[0].ranks)
        if not 0 <= self.stage < stages:
            raise ConfigurationError(f"Tie-break stage {self.stage + 1} does not exist (event has {stages} stages)")
        ordered = sorted(members, key=lambda m: m.ranks[self.stage])
        return [list(g) for _, g in groupby(ordered, key=lambda m: m.ranks[self.stage])]

    def describe(self) -> str:
        return f"stage:{self.stage + 1}"


@dataclass(frozen=True)
class SharedRank(TieBreakPolicy):
    """Leave the tie: all members keep the same rank number."""

    def split(self, members: Group, context: Optional[EventField]) -> List[Group]:
        return [list(members)]

    def describe(self) -> str:
        return "shared"


def normalize_chain(chain: Sequence[TieBreakPolicy]) -> Tuple[TieBreakPolicy, ...]:
    """Cut the chain at its first SharedRank, appending one if it is missing."""
    if not chain:
        raise ConfigurationError("A tie-break chain needs at least one policy")
    normalized: List[TieBreakPolicy] = []
    for policy in chain:
        normalized.append(policy)
        if isinstance(policy, SharedRank):
            if len(normalized) < len(chain):
                logger.warning("Policies after 'shared' in a tie-break chain are never reached; ignoring them")
            return tuple(normalized)
    normalized.append(SharedRank())
    return tuple(normalized)


@dataclass(frozen=True)
class TieBreakOutcome:
    order: Tuple[Tuple[Competitor, ...], ...]
    records: Tuple[TieResolutionRecord, ...]

    @property
    def resolved(self) -> bool:
        return all(len(g) == 1 for g in self.order)


def break_tie(group: Sequence[Competitor], chain: Sequence[TieBreakPolicy], context: Optional[EventField]) -> TieBreakOutcome:
    """
    Run a chain over one tie group.

    Returns:
        Ordered sub-groups (singletons where resolved) and one record per
        policy application.
    """
    if len(group) < 2:
        raise ContractError("A tie group needs at least two members")

    pending: List[Group] = [list(group)]
    records: List[TieResolutionRecord] = []
    for policy in normalize_chain(chain):
        next_pending: List[Group] = []
        for sub in pending:
            if len(sub) < 2 or (policy.pair_only and len(sub) != 2):
                next_pending.append(sub)
                continue
            parts = policy.split(sub, context)
            record = TieResolutionRecord(
                members=tuple(m.name for m in sub),
                policy=policy.describe(),
                outcome=tuple(tuple(m.name for m in part) for part in parts),
            )
            records.append(record)
            if record.resolved:
                logger.info(f"Tie {record.members} split by {record.policy}: {record.outcome}")
            next_pending.extend(parts)
        pending = next_pending

    return TieBreakOutcome(tuple(tuple(g) for g in pending), tuple(records))


def apply_chain(standings: Standings, chain: Sequence[TieBreakPolicy], context: Optional[EventField]) -> Standings:
    """Break every tie group of the standings and renumber the result."""
    groups = []
    records = list(standings.tie_resolutions)
    for group in standings.groups():
        if len(group) < 2:
            groups.append([(e.name, e.ranks, e.score) for e in group])
            continue
        scores = {e.name: e.score for e in group}
        members = [Competitor(e.name, e.ranks) for e in group]
        outcome = break_tie(members, chain, context)
        records.extend(outcome.records)
        for part in outcome.order:
            groups.append([(m.name, m.ranks, scores[m.name]) for m in part])

    if len(records) == len(standings.tie_resolutions):
        return standings
    return Standings.from_groups(groups, records, standings.exact, standings.label)
