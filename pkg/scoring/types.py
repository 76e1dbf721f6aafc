"""
Domain types for the scoring engine.

Ranks are half-integers stored as twice their value, so shared placements such
as 19.5 stay exact. Every type here is immutable once built.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from scoring.errors import ContractError, ValidationError

Score = Union[Fraction, float]
RankLike = Union["Rank", int, float, str, Fraction]


@dataclass(frozen=True, order=True)
class Rank:
    """A placement within one stage. `twice` holds 2 x value."""

    twice: int

    def __post_init__(self):
        if isinstance(self.twice, bool) or not isinstance(self.twice, int):
            raise ValidationError(f"Rank must be stored as an integer half-count, got {self.twice!r}")
        if self.twice < 2:
            raise ValidationError(f"Rank must be >= 1, got {Fraction(self.twice, 2)}")

    @classmethod
    def of(cls, value: RankLike) -> "Rank":
        """Build a rank from an int, half-integer float/Fraction or decimal string."""
        if isinstance(value, Rank):
            return value
        try:
            exact = Fraction(value.strip()) if isinstance(value, str) else Fraction(value)
        except (ValueError, TypeError, ZeroDivisionError):
            raise ValidationError(f"Not a rank: {value!r}")
        doubled = exact * 2
        if doubled.denominator != 1:
            raise ValidationError(f"Rank must be a whole or half placement, got {value!r}")
        return cls(int(doubled))

    @property
    def value(self) -> Fraction:
        return Fraction(self.twice, 2)

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def __float__(self) -> float:
        return self.twice / 2

    def __str__(self) -> str:
        if self.is_integer:
            return str(self.twice // 2)
        return f"{self.twice // 2}.5"


@dataclass(frozen=True)
class RankVector:
    """The s-tuple of stage ranks of one competitor."""

    ranks: Tuple[Rank, ...]

    def __post_init__(self):
        if not self.ranks:
            raise ValidationError("A rank vector needs at least one stage")

    @classmethod
    def of(cls, values: Iterable[RankLike]) -> "RankVector":
        return cls(tuple(Rank.of(v) for v in values))

    def __len__(self) -> int:
        return len(self.ranks)

    def __iter__(self) -> Iterator[Rank]:
        return iter(self.ranks)

    def __getitem__(self, index: int) -> Rank:
        return self.ranks[index]

    def __str__(self) -> str:
        return "(" + ", ".join(str(r) for r in self.ranks) + ")"


@dataclass(frozen=True)
class WeightVector:
    """Per-stage weights; all strictly positive."""

    weights: Tuple[Fraction, ...]

    def __post_init__(self):
        if not self.weights:
            raise ContractError("A weight vector needs at least one stage")
        for w in self.weights:
            if w <= 0:
                raise ContractError(f"Weights must be positive, got {w}")

    @classmethod
    def of(cls, values: Iterable[Union[int, float, str, Fraction]]) -> "WeightVector":
        parsed = []
        for v in values:
            try:
                parsed.append(Fraction(v.strip()) if isinstance(v, str) else Fraction(v))
            except (ValueError, TypeError, ZeroDivisionError):
                raise ContractError(f"Not a weight: {v!r}")
        return cls(tuple(parsed))

    @classmethod
    def unit(cls, stages: int) -> "WeightVector":
        return cls(tuple(Fraction(1) for _ in range(stages)))

    @property
    def is_unit(self) -> bool:
        return all(w == 1 for w in self.weights)

    @property
    def heaviest_stage(self) -> int:
        """Index of the highest-weight stage (first one on ties)."""
        best = max(self.weights)
        return self.weights.index(best)

    def __len__(self) -> int:
        return len(self.weights)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.weights)


@dataclass(frozen=True)
class Competitor:
    name: str
    ranks: RankVector


@dataclass(frozen=True)
class EventField:
    """
    Named competitors with their stage ranks.

    `reference` maps competitor name to an earlier standing (e.g. qualification
    rank) and feeds count-back. A `partial` field is a subset of a real field:
    rank bounds are still checked but stages need not be full permutations.
    """

    stages: Tuple[str, ...]
    competitors: Tuple[Competitor, ...]
    reference: Optional[Mapping[str, int]] = None
    partial: bool = False

    @classmethod
    def build(
        cls,
        stages: Sequence[str],
        rows: Sequence[Tuple[str, Sequence[RankLike]]],
        reference: Optional[Mapping[str, int]] = None,
    ) -> "EventField":
        competitors = tuple(Competitor(name, RankVector.of(ranks)) for name, ranks in rows)
        return cls(tuple(stages), competitors, dict(reference) if reference else None)

    @property
    def stage_count(self) -> int:
        return len(self.stages)

    @property
    def size(self) -> int:
        return len(self.competitors)

    @property
    def names(self) -> List[str]:
        return [c.name for c in self.competitors]

    def competitor(self, name: str) -> Competitor:
        for c in self.competitors:
            if c.name == name:
                return c
        raise KeyError(name)

    def stage_ranks(self, stage: int) -> List[Rank]:
        return [c.ranks[stage] for c in self.competitors]

    def subset(self, names: Iterable[str]) -> "EventField":
        """Keep only the named competitors (in field order); the result is partial."""
        wanted = set(names)
        kept = tuple(c for c in self.competitors if c.name in wanted)
        reference = None
        if self.reference is not None:
            reference = {n: r for n, r in self.reference.items() if n in wanted}
        return EventField(self.stages, kept, reference, partial=True)


@dataclass(frozen=True)
class TieResolutionRecord:
    """One application of one policy to one tie group."""

    members: Tuple[str, ...]
    policy: str
    outcome: Tuple[Tuple[str, ...], ...]

    @property
    def resolved(self) -> bool:
        return len(self.outcome) > 1


@dataclass(frozen=True)
class StandingEntry:
    name: str
    ranks: RankVector
    score: Score
    rank: int
    group: int


@dataclass(frozen=True)
class Standings:
    """Competitors in ascending score order, numbered by standard competition ranking."""

    entries: Tuple[StandingEntry, ...]
    tie_resolutions: Tuple[TieResolutionRecord, ...] = ()
    exact: bool = True
    label: str = ""

    @classmethod
    def from_groups(
        cls,
        groups: Sequence[Sequence[Tuple[str, RankVector, Score]]],
        tie_resolutions: Sequence[TieResolutionRecord] = (),
        exact: bool = True,
        label: str = "",
    ) -> "Standings":
        """Number ordered tie groups: each member gets 1 + number of competitors ahead."""
        entries = []
        ahead = 0
        for group_id, group in enumerate(groups):
            for name, ranks, score in group:
                entries.append(StandingEntry(name, ranks, score, ahead + 1, group_id))
            ahead += len(group)
        return cls(tuple(entries), tuple(tie_resolutions), exact, label)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[StandingEntry]:
        return iter(self.entries)

    @property
    def names(self) -> List[str]:
        return [e.name for e in self.entries]

    def entry(self, name: str) -> StandingEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def rank_of(self, name: str) -> int:
        return self.entry(name).rank

    def ranks_by_name(self) -> Dict[str, int]:
        return {e.name: e.rank for e in self.entries}

    def groups(self) -> List[List[StandingEntry]]:
        grouped: List[List[StandingEntry]] = []
        for e in self.entries:
            if grouped and grouped[-1][0].group == e.group:
                grouped[-1].append(e)
            else:
                grouped.append([e])
        return grouped

    def tie_groups(self) -> List[Tuple[str, ...]]:
        """Groups of two or more competitors sharing a rank number."""
        return [tuple(e.name for e in g) for g in self.groups() if len(g) > 1]

    @property
    def is_total(self) -> bool:
        return not self.tie_groups()
