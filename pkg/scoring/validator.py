"""
Field Validator.
Checks event fields against the structural rules every scoring operation relies on.
"""
import logging
from collections import Counter
from itertools import groupby
from typing import List, Sequence, Tuple

from scoring.errors import ValidationError
from scoring.types import EventField, Rank

logger = logging.getLogger(__name__)


class FieldValidator:
    """Validates event fields: names, stage counts and tie-averaged stage ranks."""

    def validate(self, field: EventField) -> Tuple[bool, str]:
        """
        Validate a whole field.

        Returns:
            (is_valid: bool, message: str)
        """
        if field.stage_count < 1:
            return False, "Event needs at least one stage"
        if not field.competitors:
            return False, "Event has no competitors"

        is_valid, message = self._validate_names(field)
        if not is_valid:
            return is_valid, message

        for competitor in field.competitors:
            if len(competitor.ranks) != field.stage_count:
                return False, (
                    f"Competitor '{competitor.name}' has {len(competitor.ranks)} ranks "
                    f"but the event has {field.stage_count} stages"
                )

        is_valid, message = self._validate_reference(field)
        if not is_valid:
            return is_valid, message

        if field.partial:
            return True, "Partial field: permutation rule not checked"

        for index, stage in enumerate(field.stages):
            is_valid, message = self.validate_stage(stage, field.stage_ranks(index))
            if not is_valid:
                return is_valid, message

        return True, "Validation passed"

    def validate_stage(self, stage: str, ranks: Sequence[Rank]) -> Tuple[bool, str]:
        """
        A group of k competitors sharing rank r is valid iff r is the average of
        the k consecutive placements starting at the first unoccupied one.
        """
        n = len(ranks)
        placement = 1
        for twice, members in groupby(sorted(r.twice for r in ranks)):
            k = len(list(members))
            expected = 2 * placement + k - 1
            if twice != expected:
                offending = self._offending(ranks, n)
                return False, (
                    f"Stage '{stage}': ranks are not a tie-averaged permutation of 1..{n} "
                    f"(offending ranks: {', '.join(offending)})"
                )
            placement += k
        return True, "Stage valid"

    def check(self, field: EventField) -> EventField:
        """Raise ValidationError if the field is invalid; return it otherwise."""
        is_valid, message = self.validate(field)
        if not is_valid:
            logger.warning(f"Validation failed: {message}")
            raise ValidationError(message)
        return field

    def _validate_names(self, field: EventField) -> Tuple[bool, str]:
        counts = Counter(field.names)
        duplicates = sorted(name for name, count in counts.items() if count > 1)
        if duplicates:
            return False, f"Duplicate competitor name(s): {', '.join(duplicates)}"
        if any(not name.strip() for name in field.names):
            return False, "Competitor names must be non-empty"
        return True, "Names valid"

    def _validate_reference(self, field: EventField) -> Tuple[bool, str]:
        if field.reference is None:
            return True, "No reference standings"
        for name, rank in field.reference.items():
            if isinstance(rank, bool) or not isinstance(rank, int) or rank < 1:
                return False, f"Reference rank for '{name}' must be a positive integer, got {rank!r}"
        return True, "Reference valid"

    def _offending(self, ranks: Sequence[Rank], n: int) -> List[str]:
        """Ranks whose multiplicity does not fit the tie-averaging slots they claim."""
        counts = Counter(r.twice for r in ranks)
        bad = []
        for twice, k in sorted(counts.items()):
            # k tied competitors averaging to r occupy placements r-(k-1)/2 .. r+(k-1)/2
            low_twice = twice - (k - 1)
            high_twice = twice + (k - 1)
            if low_twice < 2 or high_twice > 2 * n or low_twice % 2 != 0:
                bad.append(str(Rank(twice)))
        if not bad:
            bad = [str(Rank(t)) for t in sorted(counts)]
        return bad


_default_validator = FieldValidator()


def validate_field(field: EventField) -> EventField:
    return _default_validator.check(field)
