"""
Score functions: monotone-increasing maps from a stage rank to points.

Linear and all-exact Table functions evaluate to Fractions; the others evaluate
to floats and are compared with a tolerance downstream.
"""
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Mapping, Union

import numpy as np

from scoring.errors import ConfigurationError, DomainError, ValidationError
from scoring.types import Rank, RankLike, Score


class ScoreFunction(ABC):
    """Base class for every score function variant."""

    exact: bool = False

    @abstractmethod
    def evaluate(self, rank: Rank) -> Score:
        """Return f(rank)."""

    @abstractmethod
    def evaluate_array(self, ranks: np.ndarray) -> np.ndarray:
        """Vectorised float evaluation over an array of rank values."""

    @abstractmethod
    def describe(self) -> str:
        """Short human-readable name."""

    def covers(self, rank: Rank) -> bool:
        return True

    def __call__(self, rank: RankLike) -> Score:
        return self.evaluate(Rank.of(rank))


@dataclass(frozen=True)
class Linear(ScoreFunction):
    """f(j) = j"""

    exact = True

    def evaluate(self, rank: Rank) -> Score:
        return rank.value

    def evaluate_array(self, ranks: np.ndarray) -> np.ndarray:
        return np.asarray(ranks, dtype=float)

    def describe(self) -> str:
        return "linear"


@dataclass(frozen=True)
class Power(ScoreFunction):
    """f(j) = j**p with 0 < p <= 1; p = 0.5 is the square-root method."""

    p: float

    def __post_init__(self):
        if not (0 < self.p <= 1):
            raise ConfigurationError(f"Power exponent must satisfy 0 < p <= 1, got {self.p}")

    def evaluate(self, rank: Rank) -> Score:
        if self.p == 0.5:
            return math.sqrt(float(rank))
        return float(rank) ** self.p

    def evaluate_array(self, ranks: np.ndarray) -> np.ndarray:
        values = np.asarray(ranks, dtype=float)
        if self.p == 0.5:
            return np.sqrt(values)
        return np.power(values, self.p)

    def describe(self) -> str:
        if self.p == 0.5:
            return "sqrt"
        return f"power:{self.p:g}"


@dataclass(frozen=True)
class Logarithmic(ScoreFunction):
    """f(j) = ln j; ranks identically to the product of ranks."""

    def evaluate(self, rank: Rank) -> Score:
        return math.log(float(rank))

    def evaluate_array(self, ranks: np.ndarray) -> np.ndarray:
        return np.log(np.asarray(ranks, dtype=float))

    def describe(self) -> str:
        return "log"


@dataclass(frozen=True)
class Table(ScoreFunction):
    """Explicit rank -> points map. Strictly increasing in rank, checked on construction."""

    entries: Mapping[Rank, Score]
    name: str = "table"

    def __post_init__(self):
        if not self.entries:
            raise ValidationError("A table score function needs at least one entry")
        ordered = sorted(self.entries.items())
        for (low_rank, low), (high_rank, high) in zip(ordered, ordered[1:]):
            if not high > low:
                raise ValidationError(
                    f"Table '{self.name}' is not strictly increasing: "
                    f"f({low_rank}) = {low} but f({high_rank}) = {high}"
                )

    @classmethod
    def of(cls, entries: Mapping[RankLike, Union[int, float, str, Fraction]], name: str = "table") -> "Table":
        """Build from plain values; ints, decimal strings and Fractions stay exact."""
        converted: Dict[Rank, Score] = {}
        for rank, value in entries.items():
            if isinstance(value, float):
                converted[Rank.of(rank)] = value
            else:
                try:
                    converted[Rank.of(rank)] = Fraction(value)
                except (ValueError, TypeError):
                    raise ValidationError(f"Not a table value: {value!r}")
        return cls(converted, name)

    @property
    def exact(self) -> bool:
        return all(isinstance(v, Fraction) for v in self.entries.values())

    def covers(self, rank: Rank) -> bool:
        return rank in self.entries

    def evaluate(self, rank: Rank) -> Score:
        try:
            return self.entries[rank]
        except KeyError:
            raise DomainError(f"Table '{self.name}' has no entry for rank {rank}")

    def evaluate_array(self, ranks: np.ndarray) -> np.ndarray:
        lookup = {float(r): float(v) for r, v in self.entries.items()}
        flat = np.asarray(ranks, dtype=float).ravel()
        missing = [v for v in set(flat.tolist()) if v not in lookup]
        if missing:
            raise DomainError(f"Table '{self.name}' has no entry for rank {min(missing):g}")
        return np.array([lookup[v] for v in flat.tolist()], dtype=float).reshape(np.shape(ranks))

    def describe(self) -> str:
        return self.name


@dataclass(frozen=True)
class Affine(ScoreFunction):
    """g(j) = a + b * f(j) with b > 0, which preserves every ranking."""

    base: ScoreFunction
    a: float
    b: float

    def __post_init__(self):
        if not self.b > 0:
            raise ConfigurationError(f"Affine scale must be positive, got {self.b}")

    def covers(self, rank: Rank) -> bool:
        return self.base.covers(rank)

    def evaluate(self, rank: Rank) -> Score:
        return self.a + self.b * float(self.base.evaluate(rank))

    def evaluate_array(self, ranks: np.ndarray) -> np.ndarray:
        return self.a + self.b * self.base.evaluate_array(ranks)

    def describe(self) -> str:
        return f"affine({self.base.describe()}, a={self.a:.6g}, b={self.b:.6g})"


@dataclass(frozen=True)
class Sailing1968(ScoreFunction):
    """
    The 1968 Olympic regatta scoring: 0, 3, 5.7, 8, 10, 11.7 for the first six
    places, then j + 6 for every place after. A shared half placement gets the
    mean of the two places it spans.
    """

    exact = True
    HEAD = (Fraction(0), Fraction(3), Fraction("5.7"), Fraction(8), Fraction(10), Fraction("11.7"))

    def _whole(self, j: int) -> Fraction:
        if j <= len(self.HEAD):
            return self.HEAD[j - 1]
        return Fraction(j + 6)

    def evaluate(self, rank: Rank) -> Score:
        if rank.is_integer:
            return self._whole(rank.twice // 2)
        below = rank.twice // 2
        return (self._whole(below) + self._whole(below + 1)) / 2

    def evaluate_array(self, ranks: np.ndarray) -> np.ndarray:
        values = np.asarray(ranks, dtype=float)
        head = np.array([float(v) for v in self.HEAD] + [float(self._whole(len(self.HEAD) + 1))])
        low = np.clip(np.floor(values).astype(int), 1, len(head)) - 1
        high = np.clip(np.ceil(values).astype(int), 1, len(head)) - 1
        inside = (head[low] + head[high]) / 2
        return np.where(values >= len(self.HEAD) + 1, values + 6, inside)

    def describe(self) -> str:
        return "sailing"


def eval_score_function(f: ScoreFunction, r: RankLike) -> Score:
    """Evaluate a score function at one rank."""
    return f.evaluate(Rank.of(r))
