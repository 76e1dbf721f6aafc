"""
Score-core: aggregate scores and final standings from rank vectors.

Linear, product and exact-table scores are Fractions and compare exactly;
every other score is a float and two floats are tied when they lie within
config.FLOAT_TOLERANCE (relative, floored at 1).
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

import config
from scoring.errors import ConfigurationError, ContractError, DomainError
from scoring.functions import Linear, Logarithmic, Power, ScoreFunction
from scoring.tiebreak import (
    CountBack,
    DesignatedStage,
    HeadToHead,
    SharedRank,
    TieBreakPolicy,
    apply_chain,
    normalize_chain,
)
from scoring.types import EventField, RankVector, Score, Standings, WeightVector
from scoring.validator import validate_field

logger = logging.getLogger(__name__)


def scores_tied(a: Score, b: Score, exact: bool) -> bool:
    """Equality for exact scores, tolerance-based equality for floating ones."""
    if exact:
        return a == b
    return abs(float(a) - float(b)) <= config.FLOAT_TOLERANCE * max(1.0, abs(float(a)))


def aggregate_score(rv: RankVector, f: ScoreFunction, w: Optional[WeightVector] = None) -> Score:
    """Weighted score: sum of w_i * f(r_i). Exact when f is exact."""
    weights = w if w is not None else WeightVector.unit(len(rv))
    if len(weights) != len(rv):
        raise ContractError(f"Rank vector has {len(rv)} stages but weight vector has {len(weights)}")
    if f.exact:
        return sum((weight * f.evaluate(r) for weight, r in zip(weights, rv)), Fraction(0))
    return math.fsum(float(weight) * float(f.evaluate(r)) for weight, r in zip(weights, rv))


def product_score(rv: RankVector) -> Fraction:
    """Exact product of the ranks."""
    total = Fraction(1)
    for r in rv:
        total *= r.value
    return total


@dataclass(frozen=True)
class ScoringSystem:
    """
    A score function, optional stage weights and a tie-break chain.

    With `product=True` the score is the exact product of ranks instead of an
    additive score; the function is then only used for labelling. A chain of
    None selects the default chain for the field being ranked.
    """

    function: ScoreFunction = field(default_factory=Linear)
    weights: Optional[WeightVector] = None
    chain: Optional[Tuple[TieBreakPolicy, ...]] = None
    product: bool = False
    label: str = ""

    def __post_init__(self):
        if self.product and self.weights is not None and not self.weights.is_unit:
            raise ConfigurationError("The product method does not support stage weights")

    @property
    def exact(self) -> bool:
        return self.product or self.function.exact

    @property
    def name(self) -> str:
        if self.label:
            return self.label
        if self.product:
            return "product"
        return self.function.describe()

    def score(self, rv: RankVector) -> Score:
        if self.product:
            return product_score(rv)
        return aggregate_score(rv, self.function, self.weights)

    def score_array(self, ranks: np.ndarray) -> np.ndarray:
        """Float scores for an array of shape (..., competitors, stages)."""
        values = np.asarray(ranks, dtype=float)
        if self.product:
            return np.prod(values, axis=-1)
        points = self.function.evaluate_array(values)
        if self.weights is None:
            return points.sum(axis=-1)
        weights = np.array([float(w) for w in self.weights], dtype=float)
        if weights.shape[0] != values.shape[-1]:
            raise ContractError(f"Ranks have {values.shape[-1]} stages but weight vector has {weights.shape[0]}")
        return (points * weights).sum(axis=-1)

    def resolve_chain(self, field_: Optional[EventField]) -> Tuple[TieBreakPolicy, ...]:
        if self.chain is not None:
            return normalize_chain(self.chain)
        return default_chain(field_, self.weights)


def default_chain(field_: Optional[EventField], weights: Optional[WeightVector] = None) -> Tuple[TieBreakPolicy, ...]:
    """
    Weighted events break ties on the heaviest stage; unweighted events use
    head-to-head, then count-back when reference standings exist.
    """
    if weights is not None and not weights.is_unit:
        return (DesignatedStage(weights.heaviest_stage), SharedRank())
    chain: List[TieBreakPolicy] = [HeadToHead()]
    if field_ is not None and field_.reference is not None:
        chain.append(CountBack())
    chain.append(SharedRank())
    return tuple(chain)


def sum_method(chain: Optional[Sequence[TieBreakPolicy]] = None) -> ScoringSystem:
    return ScoringSystem(Linear(), chain=tuple(chain) if chain is not None else None, label="sum")


def product_method(chain: Optional[Sequence[TieBreakPolicy]] = None) -> ScoringSystem:
    return ScoringSystem(Logarithmic(), chain=tuple(chain) if chain is not None else None, product=True, label="product")


def log_method(chain: Optional[Sequence[TieBreakPolicy]] = None) -> ScoringSystem:
    return ScoringSystem(Logarithmic(), chain=tuple(chain) if chain is not None else None, label="log")


def sqrt_method(chain: Optional[Sequence[TieBreakPolicy]] = None) -> ScoringSystem:
    return ScoringSystem(Power(0.5), chain=tuple(chain) if chain is not None else None, label="sqrt")


def raw_standings(field_: EventField, system: ScoringSystem) -> Standings:
    """Standings before any tie-break: every score tie is one shared group."""
    validate_field(field_)
    if not system.product:
        for competitor in field_.competitors:
            for r in competitor.ranks:
                if not system.function.covers(r):
                    raise DomainError(
                        f"{system.name} cannot score rank {r} of '{competitor.name}'"
                    )

    scored = [(c.name, c.ranks, system.score(c.ranks)) for c in field_.competitors]
    order = sorted(range(len(scored)), key=lambda i: (scored[i][2], i))

    groups: List[List[Tuple[str, RankVector, Score]]] = []
    for i in order:
        row = scored[i]
        if groups and scores_tied(groups[-1][-1][2], row[2], system.exact):
            groups[-1].append(row)
        else:
            groups.append([row])
    return Standings.from_groups(groups, exact=system.exact, label=system.name)


def rank_field(field_: EventField, system: ScoringSystem) -> Standings:
    """Score, sort ascending, group ties and run the system's tie-break chain."""
    standings = raw_standings(field_, system)
    chain = system.resolve_chain(field_)
    logger.debug(f"Ranking {field_.size} competitors with {system.name}, chain {[p.describe() for p in chain]}")
    return apply_chain(standings, chain, field_)


def group_signature(standings: Standings) -> List[frozenset]:
    """Ordered tie groups as sets; equal signatures mean equal order and ties."""
    return [frozenset(e.name for e in g) for g in standings.groups()]


@dataclass(frozen=True)
class LogProductReport:
    product: Standings
    log: Standings
    match: bool


def verify_log_product_equivalence(field_: EventField) -> LogProductReport:
    """Compare exact product standings with sum-of-logarithm standings."""
    shared = (SharedRank(),)
    by_product = rank_field(field_, product_method(shared))
    by_log = rank_field(field_, log_method(shared))
    match = group_signature(by_product) == group_signature(by_log)
    if not match:
        logger.warning("Product and log-sum standings disagree")
    return LogProductReport(by_product, by_log, match)
