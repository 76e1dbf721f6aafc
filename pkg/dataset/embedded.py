"""
Tokyo 2020 sport-climbing combined results (speed, bouldering, lead).
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Dict

import config
from dataset.loader import load_event
from scoring.errors import UsageError
from scoring.types import EventField

logger = logging.getLogger(__name__)

DATA_DIR = Path(__file__).parent / "data"


@dataclass(frozen=True)
class DatasetInfo:
    name: str
    description: str
    notes: str = ""


DATASETS: Dict[str, DatasetInfo] = {
    "men-prelims": DatasetInfo(
        "men-prelims",
        "Men's preliminaries, 20 climbers; qual_rank is the official product ranking",
        "Fossali and O'Halloran share bouldering places 19-20 (19.5 each).",
    ),
    "men-finals": DatasetInfo(
        "men-finals",
        "Men's finals, 7 climbers as scored; qual_rank is the preliminary product ranking",
        "B. Mawem qualified 7th but did not start (torn bicep); under IOC rules he finished 8th overall.",
    ),
    "women-prelims": DatasetInfo(
        "women-prelims",
        "Women's preliminaries, 20 climbers",
    ),
    "women-finals": DatasetInfo(
        "women-finals",
        "Women's finals, 8 climbers; qual_rank is the preliminary product ranking",
        "Two product ties (64 and 84) were broken head-to-head.",
    ),
}


def dataset_path(name: str) -> Path:
    return DATA_DIR / f"{name}.csv"


@lru_cache(maxsize=None)
def load_embedded(name: str) -> EventField:
    """One embedded field by name."""
    if name not in DATASETS:
        raise UsageError(f"Unknown dataset '{name}'; choose from: {', '.join(config.EMBEDDED_DATASETS)}")
    return load_event(dataset_path(name))


def embedded_datasets() -> Dict[str, EventField]:
    """All four embedded fields, keyed by name."""
    return {name: load_embedded(name) for name in config.EMBEDDED_DATASETS}
