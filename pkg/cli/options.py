"""
Option parsing (CLI step 1).
Turns argv into a CliConfig: method specs become ScoringSystems, policy names
become tie-break policies.
"""
import argparse
import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import config
from scoring.core import ScoringSystem
from scoring.errors import ConfigurationError, RankforgeError, UsageError
from scoring.fieldsim import SpecialistProfile
from scoring.functions import Linear, Logarithmic, Power, Sailing1968
from scoring.tables import load_table
from scoring.tiebreak import CountBack, DesignatedStage, HeadToHead, SharedRank, TieBreakPolicy
from scoring.types import WeightVector

logger = logging.getLogger(__name__)

COMMANDS = ["score", "compare", "table", "equiv", "validate", "simulate", "normalize"]
METHODS = ["sum", "product", "log", "sqrt", "power:<p>", "table:<path>", "sailing"]
POLICIES = ["head2head", "countback", "stage:<i>", "shared"]
FORMATS = ["text", "csv"]


@dataclass(frozen=True)
class CliConfig:
    command: str
    systems: Tuple[ScoringSystem, ...]
    chain: Optional[Tuple[TieBreakPolicy, ...]] = None
    weights: Optional[WeightVector] = None
    k: Optional[int] = None
    dataset: Optional[str] = None
    input_path: Optional[str] = None
    output_format: str = "text"
    scale: float = 100.0
    offset: float = 0.0
    n: Optional[int] = None
    stages: int = 3
    seed: int = config.DEFAULT_SEED
    trials: int = config.DEFAULT_TRIALS
    workers: int = config.SIM_WORKERS
    profile: SpecialistProfile = field(default_factory=SpecialistProfile)
    lo: float = 1.0
    hi: Optional[float] = None


class _ArgumentParser(argparse.ArgumentParser):
    """argparse that raises UsageError instead of exiting."""

    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _ArgumentParser(add_help=False)
    source = common.add_mutually_exclusive_group()
    source.add_argument("--dataset", help=f"embedded dataset: {', '.join(config.EMBEDDED_DATASETS)}")
    source.add_argument("--input", dest="input_path", help="event CSV file")
    common.add_argument("--method", action="append", default=None,
                        help=f"scoring method ({' | '.join(METHODS)}); repeatable")
    common.add_argument("--weights", help="stage weights, e.g. 1,2")
    common.add_argument("--tiebreak", help=f"ordered policies ({', '.join(POLICIES)})")
    common.add_argument("--k", type=int, help="qualification cut size")
    common.add_argument("--format", dest="output_format", choices=FORMATS, default=None)
    common.add_argument("--scale", type=float, default=100.0)
    common.add_argument("--offset", type=float, default=0.0)
    common.add_argument("--n", type=int, help="field size")
    common.add_argument("--stages", type=int, default=3, help="stages per simulated field")
    common.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    common.add_argument("--trials", type=int, default=config.DEFAULT_TRIALS)
    common.add_argument("--workers", type=int, default=config.SIM_WORKERS)
    common.add_argument("--force", help="simulated subject's forced ranks, e.g. 1:1,2:18,3:20")
    common.add_argument("--lo", type=float, default=1.0, help="normalized value at rank 1")
    common.add_argument("--hi", type=float, default=None, help="normalized value at rank n (default n)")

    parser = _ArgumentParser(prog="rankforge", description="Ranking-based multi-discipline scoring")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)
    helps = {
        "score": "standings under one method",
        "compare": "compare two methods",
        "table": "integer scoring table (CSV)",
        "equiv": "adjacent pair equivalent to first + last place",
        "validate": "check an event file",
        "simulate": "Monte Carlo qualification odds",
        "normalize": "linear/sqrt/log functions pinned to common endpoints",
    }
    for name in COMMANDS:
        commands.add_parser(name, parents=[common], help=helps[name])
    return parser


class OptionParser:
    """Parses argv and the method/policy mini-languages."""

    def parse(self, argv: Sequence[str]) -> CliConfig:
        args = build_parser().parse_args(list(argv))
        for flag in ("scale", "offset", "lo", "hi"):
            value = getattr(args, flag)
            if value is not None and not math.isfinite(value):
                raise UsageError(f"--{flag} must be a finite number, got {value}")
        weights = self.parse_weights(args.weights) if args.weights else None
        chain = self.parse_chain(args.tiebreak) if args.tiebreak else None
        specs = args.method or self._default_methods(args.command)
        systems = tuple(self.parse_method(spec, weights, chain) for spec in specs)

        if args.command == "compare" and len(systems) != 2:
            raise UsageError("compare needs exactly two --method options")
        if args.command in ("score", "table", "equiv") and len(systems) != 1:
            raise UsageError(f"{args.command} takes a single --method")

        output_format = args.output_format or ("csv" if args.command in ("table", "simulate") else "text")
        parsed = CliConfig(
            command=args.command,
            systems=systems,
            chain=chain,
            weights=weights,
            k=args.k,
            dataset=args.dataset,
            input_path=args.input_path,
            output_format=output_format,
            scale=args.scale,
            offset=args.offset,
            n=args.n,
            stages=args.stages,
            seed=args.seed,
            trials=args.trials,
            workers=args.workers,
            profile=self.parse_profile(args.force) if args.force else SpecialistProfile(),
            lo=args.lo,
            hi=args.hi,
        )
        logger.info(f"Parsed command '{parsed.command}' with methods {[s.name for s in systems]}")
        return parsed

    def _default_methods(self, command: str) -> List[str]:
        if command == "compare":
            return ["product", "sum"]
        if command == "simulate":
            return ["product", "sum", "sqrt"]
        if command == "table":
            return ["log"]
        return ["product"]

    def parse_method(
        self,
        spec: str,
        weights: Optional[WeightVector] = None,
        chain: Optional[Tuple[TieBreakPolicy, ...]] = None,
    ) -> ScoringSystem:
        text = spec.strip().lower()
        try:
            if text == "product":
                return ScoringSystem(Logarithmic(), weights, chain, product=True, label="product")
            if text == "sum":
                return ScoringSystem(Linear(), weights, chain, label="sum")
            if text == "log":
                return ScoringSystem(Logarithmic(), weights, chain, label="log")
            if text == "sqrt":
                return ScoringSystem(Power(0.5), weights, chain, label="sqrt")
            if text == "sailing":
                return ScoringSystem(Sailing1968(), weights, chain, label="sailing")
            if text.startswith("power:"):
                exponent = float(text.split(":", 1)[1])
                return ScoringSystem(Power(exponent), weights, chain, label=f"power:{exponent:g}")
            if text.startswith("table:"):
                path = spec.strip().split(":", 1)[1]
                return ScoringSystem(load_table(path).as_function(), weights, chain, label="table")
        except ValueError:
            raise UsageError(f"Bad method spec '{spec}'; valid methods: {', '.join(METHODS)}")
        except ConfigurationError as e:
            raise UsageError(f"Bad method spec '{spec}': {e}")
        raise UsageError(f"Unknown method '{spec}'; valid methods: {', '.join(METHODS)}")

    def parse_chain(self, text: str) -> Tuple[TieBreakPolicy, ...]:
        policies: List[TieBreakPolicy] = []
        for raw in text.split(","):
            name = raw.strip().lower()
            if name == "head2head":
                policies.append(HeadToHead())
            elif name == "countback":
                policies.append(CountBack())
            elif name == "shared":
                policies.append(SharedRank())
            elif name.startswith("stage:") and name[6:].isdigit() and int(name[6:]) >= 1:
                policies.append(DesignatedStage(int(name[6:]) - 1))
            else:
                raise UsageError(f"Unknown tie-break policy '{raw}'; valid policies: {', '.join(POLICIES)}")
        return tuple(policies)

    def parse_weights(self, text: str) -> WeightVector:
        try:
            return WeightVector.of(text.split(","))
        except RankforgeError as e:
            raise UsageError(f"Bad --weights '{text}': {e}")

    def parse_profile(self, text: str) -> SpecialistProfile:
        forced = {}
        for item in text.split(","):
            stage, _, rank = item.partition(":")
            if not (stage.strip().isdigit() and rank.strip().isdigit()) or int(stage) < 1:
                raise UsageError(f"Bad --force item '{item}'; expected <stage>:<rank>, stages from 1")
            forced[int(stage) - 1] = int(rank)
        return SpecialistProfile(forced)
