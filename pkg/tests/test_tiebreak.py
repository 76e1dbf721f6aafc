import random

import pytest

from scoring.core import product_method, rank_field, raw_standings, sum_method
from scoring.errors import ConfigurationError, ContractError
from scoring.tiebreak import (
    CountBack,
    DesignatedStage,
    HeadToHead,
    SharedRank,
    apply_chain,
    break_tie,
    normalize_chain,
)
from scoring.types import Competitor, RankVector


def _competitor(name, ranks):
    return Competitor(name, RankVector.of(ranks))


def _order(outcome):
    return [[m.name for m in part] for part in outcome.order]


class TestHeadToHead:
    def test_majority_of_stages_wins(self, women_finals):
        group = [women_finals.competitor("Miroslaw"), women_finals.competitor("Noguchi")]
        outcome = break_tie(group, [HeadToHead()], women_finals)
        assert _order(outcome) == [["Noguchi"], ["Miroslaw"]]
        assert outcome.resolved
        assert outcome.records[0].policy == "head2head"

    def test_raboutou_over_jaubert(self, women_finals):
        group = [women_finals.competitor("Jaubert"), women_finals.competitor("Raboutou")]
        assert _order(break_tie(group, [HeadToHead()], None)) == [["Raboutou"], ["Jaubert"]]

    def test_identical_vectors_stay_tied(self):
        group = [_competitor("A", [2, 3]), _competitor("B", [2, 3])]
        outcome = break_tie(group, [HeadToHead(), SharedRank()], None)
        assert _order(outcome) == [["A", "B"]]
        assert not outcome.resolved

    def test_no_strict_majority(self):
        group = [_competitor("A", [1, 4, 2]), _competitor("B", [2, 3, 2])]
        assert _order(break_tie(group, [HeadToHead()], None)) == [["A", "B"]]

    def test_skips_groups_larger_than_two(self):
        group = [_competitor("A", [1, 3]), _competitor("B", [2, 2]), _competitor("C", [3, 1])]
        outcome = break_tie(group, [HeadToHead()], None)
        assert _order(outcome) == [["A", "B", "C"]]
        assert [r.policy for r in outcome.records] == ["shared"]

    def test_antisymmetric_on_distinct_ranks(self):
        rng = random.Random(5)
        for _ in range(500):
            a = [rng.randint(1, 20) for _ in range(3)]
            b = [x + rng.choice([-1, 1]) * rng.randint(1, 5) for x in a]
            first, second = _competitor("A", a), _competitor("B", [max(1, x) for x in b])
            if any(x == y for x, y in zip(first.ranks, second.ranks)):
                continue
            forward = _order(break_tie([first, second], [HeadToHead()], None))
            backward = _order(break_tie([second, first], [HeadToHead()], None))
            assert len(forward) == 2
            assert forward == backward


class TestCountBack:
    def test_orders_by_reference(self, men_finals):
        standings = rank_field(men_finals, sum_method([CountBack()]))
        assert [(e.name, e.rank) for e in standings] == [
            ("Narasaki", 1),
            ("M. Mawem", 2),
            ("Duffy", 3),
            ("Ondra", 4),
            ("Ginés López", 5),
            ("Coleman", 6),
            ("Schubert", 7),
        ]

    def test_without_reference(self):
        group = [_competitor("A", [1]), _competitor("B", [1])]
        with pytest.raises(ConfigurationError):
            break_tie(group, [CountBack()], None)

    def test_explicit_reference_and_missing_members(self):
        group = [_competitor("A", [2]), _competitor("B", [2]), _competitor("C", [2]), _competitor("D", [2])]
        policy = CountBack({"C": 1, "A": 4})
        assert _order(break_tie(group, [policy], None)) == [["C"], ["A"], ["B", "D"]]


class TestDesignatedStage:
    def test_orders_by_stage(self):
        group = [_competitor("A", [1, 3]), _competitor("B", [3, 1]), _competitor("C", [2, 1])]
        outcome = break_tie(group, [DesignatedStage(1)], None)
        assert _order(outcome) == [["B", "C"], ["A"]]
        assert outcome.records[0].policy == "stage:2"

    def test_stage_out_of_range(self):
        group = [_competitor("A", [1]), _competitor("B", [2])]
        with pytest.raises(ConfigurationError):
            break_tie(group, [DesignatedStage(3)], None)


class TestChains:
    def test_chain_falls_through(self):
        group = [_competitor("A", [1, 2]), _competitor("B", [2, 1])]
        outcome = break_tie(group, [HeadToHead(), DesignatedStage(0)], None)
        assert _order(outcome) == [["A"], ["B"]]
        assert [r.policy for r in outcome.records] == ["head2head", "stage:1"]

    def test_normalize_appends_shared(self):
        assert normalize_chain([HeadToHead()]) == (HeadToHead(), SharedRank())

    def test_normalize_truncates_after_shared(self):
        assert normalize_chain([SharedRank(), HeadToHead()]) == (SharedRank(),)

    def test_empty_chain(self):
        with pytest.raises(ConfigurationError):
            normalize_chain([])

    def test_group_of_one(self):
        with pytest.raises(ContractError):
            break_tie([_competitor("A", [1])], [SharedRank()], None)

    def test_no_ties_returns_standings_unchanged(self, men_finals):
        standings = raw_standings(men_finals, product_method())
        assert apply_chain(standings, [HeadToHead()], men_finals) is standings

    def test_shared_only_keeps_five_way_tie(self, men_finals):
        standings = rank_field(men_finals, sum_method([SharedRank()]))
        assert standings.tie_groups() == [("Ginés López", "Coleman", "M. Mawem", "Ondra", "Duffy")]
        assert {standings.rank_of(n) for n in standings.tie_groups()[0]} == {2}
        assert standings.rank_of("Schubert") == 7

    def test_chain_never_changes_scores_or_competitors(self, datasets):
        for field_ in datasets.values():
            raw = raw_standings(field_, sum_method())
            broken = rank_field(field_, sum_method())
            assert sorted(raw.names) == sorted(broken.names)
            assert {e.name: e.score for e in raw} == {e.name: e.score for e in broken}

    def test_women_prelims_head_to_head(self, women_prelims):
        standings = rank_field(women_prelims, sum_method([HeadToHead()]))
        assert standings.rank_of("Pilz") == 4
        assert standings.rank_of("Raboutou") == 5
        assert standings.rank_of("Yip") == 12
        assert standings.rank_of("Klingler") == 13
        assert standings.tie_groups() == [("Miroslaw", "Song", "Kaplina")]

    def test_men_prelims_default_chain(self, men_prelims):
        standings = rank_field(men_prelims, sum_method())
        assert standings.rank_of("Megos") == 9
        assert standings.rank_of("Chon") == 10
        # 35-point tie goes to count-back on qualification rank
        assert [standings.rank_of(n) for n in ("Rubtsov", "Pan", "Cosser")] == [13, 14, 15]
        assert standings.is_total
