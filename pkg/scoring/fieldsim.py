"""
Seeded Monte Carlo fields: how often does a competitor with a given profile
make the top-k cut under each scoring system?

Trial t draws from its own generator seeded by (seed, t), so results do not
depend on chunking or on the number of worker processes. Competitor 0 of
every generated field is the subject.
"""
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Mapping, Tuple

import numpy as np

import config
from scoring.core import ScoringSystem
from scoring.errors import ConfigurationError
from scoring.tiebreak import CountBack, break_tie
from scoring.types import Competitor, EventField, RankVector

logger = logging.getLogger(__name__)

SUBJECT = "subject"


@dataclass(frozen=True)
class SpecialistProfile:
    """Forced subject ranks by stage index (0-based); other stages are drawn uniformly."""

    forced: Mapping[int, int] = field(default_factory=dict)

    def check(self, n: int, s: int) -> None:
        for stage, rank in self.forced.items():
            if not 0 <= stage < s:
                raise ConfigurationError(f"Forced stage {stage + 1} does not exist (s={s})")
            if not 1 <= rank <= n:
                raise ConfigurationError(f"Forced rank {rank} is outside 1..{n}")

    def describe(self) -> str:
        if not self.forced:
            return "unforced"
        return ",".join(f"{stage + 1}:{rank}" for stage, rank in sorted(self.forced.items()))


@dataclass(frozen=True)
class SimConfig:
    n: int
    s: int
    k: int
    trials: int
    seed: int
    systems: Tuple[ScoringSystem, ...]
    workers: int = 1
    chunk_size: int = config.SIM_CHUNK_SIZE

    def check(self) -> None:
        if self.n < 2 or self.s < 1:
            raise ConfigurationError(f"Simulation needs n >= 2 and s >= 1, got n={self.n}, s={self.s}")
        if not 1 <= self.k <= self.n:
            raise ConfigurationError(f"Cut k must be within 1..{self.n}, got {self.k}")
        if self.trials < 1:
            raise ConfigurationError(f"Trials must be >= 1, got {self.trials}")
        if self.seed < 0:
            raise ConfigurationError(f"Seed must be non-negative, got {self.seed}")
        if not self.systems:
            raise ConfigurationError("Simulation needs at least one scoring system")
        if self.workers < 1 or self.chunk_size < 1:
            raise ConfigurationError("Workers and chunk size must be positive")
        for system in self.systems:
            if system.weights is not None and len(system.weights) != self.s:
                raise ConfigurationError(f"{system.name}: {len(system.weights)} weights for {self.s} stages")
            if any(isinstance(p, CountBack) for p in system.resolve_chain(None)):
                raise ConfigurationError("Generated fields have no reference standings for count-back")


@dataclass(frozen=True)
class MethodEstimate:
    method: str
    qualified: Fraction
    trials: int

    @property
    def estimate(self) -> float:
        return float(self.qualified / self.trials)

    @property
    def stderr(self) -> float:
        p = self.estimate
        return math.sqrt(max(p * (1.0 - p), 0.0) / self.trials)


@dataclass(frozen=True)
class SimResult:
    estimates: Tuple[MethodEstimate, ...]
    trials: int
    seed: int
    profile: str

    def estimate_for(self, method: str) -> MethodEstimate:
        for e in self.estimates:
            if e.method == method:
                return e
        raise KeyError(method)


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent stream for one trial, derived from (seed, trial index)."""
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(trial,)))


def draw_ranks(n: int, s: int, profile: SpecialistProfile, rng: np.random.Generator) -> np.ndarray:
    """
    An (n, s) array of integer ranks. Each stage is a uniform permutation of
    1..n; a forced subject rank is swapped in with whoever drew it.
    """
    ranks = np.empty((n, s), dtype=np.int64)
    for stage in range(s):
        column = rng.permutation(n) + 1
        forced = profile.forced.get(stage)
        if forced is not None:
            holder = int(np.flatnonzero(column == forced)[0])
            column[0], column[holder] = column[holder], column[0]
        ranks[:, stage] = column
    return ranks


def _stage_names(s: int) -> Tuple[str, ...]:
    return tuple(f"stage{i + 1}" for i in range(s))


def _competitor_name(index: int) -> str:
    return SUBJECT if index == 0 else f"rival{index:02d}"


def generate_field(n: int, s: int, profile: SpecialistProfile, rng: np.random.Generator) -> EventField:
    """A random field; no shared ranks are generated."""
    profile.check(n, s)
    ranks = draw_ranks(n, s, profile, rng)
    rows = [(_competitor_name(i), [int(r) for r in ranks[i]]) for i in range(n)]
    return EventField.build(_stage_names(s), rows)


def _cut_credit(
    ranks: np.ndarray, tied: np.ndarray, ahead: int, k: int, system: ScoringSystem
) -> Fraction:
    """Qualification credit when the subject's tie group straddles the cut."""
    members = [0] + [int(i) + 1 for i in np.flatnonzero(tied)]
    group = [Competitor(_competitor_name(i), RankVector.of(int(r) for r in ranks[i])) for i in members]
    context = EventField(_stage_names(ranks.shape[1]), tuple(group), partial=True)
    outcome = break_tie(group, system.resolve_chain(context), context)

    offset = ahead
    for part in outcome.order:
        if any(m.name == SUBJECT for m in part):
            slots = min(max(k - offset, 0), len(part))
            return Fraction(slots, len(part))
        offset += len(part)
    return Fraction(0)


def run_chunk(sim: SimConfig, profile: SpecialistProfile, start: int, stop: int) -> List[Fraction]:
    """Qualification credit per system summed over trials [start, stop)."""
    fields = np.stack([draw_ranks(sim.n, sim.s, profile, trial_rng(sim.seed, t)) for t in range(start, stop)])
    totals = []
    for system in sim.systems:
        scores = system.score_array(fields)
        subject = scores[:, :1]
        others = scores[:, 1:]
        tolerance = config.FLOAT_TOLERANCE * np.maximum(1.0, np.abs(subject))
        tied = np.abs(others - subject) <= tolerance
        ahead = ((others < subject) & ~tied).sum(axis=1)
        level = tied.sum(axis=1)

        clear = int(np.count_nonzero(ahead + level + 1 <= sim.k))
        total = Fraction(clear)
        for t in np.flatnonzero((ahead < sim.k) & (ahead + level + 1 > sim.k)):
            total += _cut_credit(fields[t], tied[t], int(ahead[t]), sim.k, system)
        totals.append(total)
    return totals


def _run_chunk_job(args: Tuple[SimConfig, SpecialistProfile, int, int]) -> List[Fraction]:
    return run_chunk(*args)


def simulate_qualification(sim: SimConfig, profile: SpecialistProfile) -> SimResult:
    """
    Estimate P(subject in top k) for every system from one shared stream of
    fields. A tie across the cut that the chain cannot break earns the
    fraction of remaining cut slots.
    """
    sim.check()
    profile.check(sim.n, sim.s)

    bounds = [(lo, min(lo + sim.chunk_size, sim.trials)) for lo in range(0, sim.trials, sim.chunk_size)]
    jobs = [(sim, profile, lo, hi) for lo, hi in bounds]
    logger.info(
        f"Simulating {sim.trials} trials (n={sim.n}, s={sim.s}, k={sim.k}, seed={sim.seed}, "
        f"profile={profile.describe()}) in {len(jobs)} chunks on {sim.workers} worker(s)"
    )

    if sim.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=sim.workers) as pool:
            chunk_totals = list(pool.map(_run_chunk_job, jobs))
    else:
        chunk_totals = [_run_chunk_job(job) for job in jobs]

    estimates = []
    for index, system in enumerate(sim.systems):
        qualified = sum((totals[index] for totals in chunk_totals), Fraction(0))
        estimates.append(MethodEstimate(system.name, qualified, sim.trials))
    return SimResult(tuple(estimates), sim.trials, sim.seed, profile.describe())
