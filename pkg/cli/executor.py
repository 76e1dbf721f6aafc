"""
Executor Module (CLI step 2).
Dispatches a parsed CliConfig to the scoring engine and returns a result object.
"""
import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Tuple

import config
from cli.options import CliConfig
from dataset.embedded import DATASETS, load_embedded
from dataset.loader import load_event
from scoring.analysis import compare_methods, equivalence_pair
from scoring.core import ScoringSystem, rank_field
from scoring.errors import ConfigurationError, UsageError
from scoring.fieldsim import SimConfig, simulate_qualification
from scoring.tables import generate_table, normalized_trio
from scoring.tiebreak import CountBack, DesignatedStage
from scoring.types import EventField

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CommandResult:
    command: str
    payload: Any
    field: Optional[EventField] = None
    source: str = ""
    extra: Tuple[Tuple[str, Any], ...] = ()


class Executor:
    """Runs one subcommand."""

    def __init__(self):
        self.handlers: Dict[str, Callable[[CliConfig], CommandResult]] = {
            "score": self.score,
            "compare": self.compare,
            "table": self.table,
            "equiv": self.equiv,
            "validate": self.validate,
            "simulate": self.simulate,
            "normalize": self.normalize,
        }

    def execute(self, cli: CliConfig) -> CommandResult:
        handler = self.handlers.get(cli.command)
        if handler is None:
            raise UsageError(f"Unknown command: {cli.command}")
        logger.info(f"Executing {cli.command}")
        return handler(cli)

    def _load_field(self, cli: CliConfig) -> Tuple[EventField, str]:
        if cli.input_path:
            return load_event(cli.input_path), cli.input_path
        if cli.dataset:
            return load_embedded(cli.dataset), cli.dataset
        raise UsageError("Provide --dataset <name> or --input <path>")

    def _check_chain(self, systems: Tuple[ScoringSystem, ...], field_: EventField) -> None:
        for system in systems:
            chain = system.resolve_chain(field_)
            if field_.reference is None and any(isinstance(p, CountBack) for p in chain):
                raise ConfigurationError("countback needs a qual_rank column in the event file")
            for policy in chain:
                if isinstance(policy, DesignatedStage) and not 0 <= policy.stage < field_.stage_count:
                    raise ConfigurationError(
                        f"Tie-break {policy.describe()} does not exist (event has {field_.stage_count} stages)"
                    )

    def score(self, cli: CliConfig) -> CommandResult:
        field_, source = self._load_field(cli)
        self._check_chain(cli.systems, field_)
        standings = rank_field(field_, cli.systems[0])
        return CommandResult("score", standings, field_, source)

    def compare(self, cli: CliConfig) -> CommandResult:
        field_, source = self._load_field(cli)
        self._check_chain(cli.systems, field_)
        k = cli.k if cli.k is not None else min(config.DEFAULT_CUT, field_.size)
        comparison = compare_methods(field_, cli.systems[0], cli.systems[1], k)
        return CommandResult("compare", comparison, field_, source)

    def table(self, cli: CliConfig) -> CommandResult:
        n = cli.n if cli.n is not None else 20
        table = generate_table(cli.systems[0].function, n, cli.scale, cli.offset)
        return CommandResult("table", table)

    def equiv(self, cli: CliConfig) -> CommandResult:
        n = cli.n if cli.n is not None else 20
        pair = equivalence_pair(cli.systems[0].function, n)
        return CommandResult("equiv", pair, extra=(("method", cli.systems[0].name),))

    def validate(self, cli: CliConfig) -> CommandResult:
        field_, source = self._load_field(cli)
        notes = DATASETS[cli.dataset].notes if cli.dataset and not cli.input_path else ""
        return CommandResult("validate", field_, field_, source, extra=(("notes", notes),))

    def simulate(self, cli: CliConfig) -> CommandResult:
        n = cli.n if cli.n is not None else 20
        k = cli.k if cli.k is not None else min(config.DEFAULT_CUT, n)
        sim = SimConfig(
            n=n,
            s=cli.stages,
            k=k,
            trials=cli.trials,
            seed=cli.seed,
            systems=cli.systems,
            workers=cli.workers,
        )
        result = simulate_qualification(sim, cli.profile)
        return CommandResult("simulate", result)

    def normalize(self, cli: CliConfig) -> CommandResult:
        n = cli.n if cli.n is not None else 20
        trio = normalized_trio(n, cli.lo, cli.hi)
        rows: List[Tuple[int, List[float]]] = [
            (j, [float(g(j)) for g in trio.values()]) for j in range(1, n + 1)
        ]
        return CommandResult("normalize", rows, extra=(("names", tuple(trio)),))
