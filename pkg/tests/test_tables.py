import math
from fractions import Fraction

import numpy as np
import pytest

from scoring.errors import ConfigurationError, DegenerateFunctionError, ParseError, TableDegeneracyError, ValidationError
from scoring.functions import Linear, Logarithmic, Power, ScoreFunction
from scoring.tables import (
    ScoringTable,
    affine_normalize,
    generate_table,
    load_table,
    normalized_trio,
    round_half_away,
    table_ranking_equivalence,
)
from tests.helpers import LOG_TABLE, SQRT_TABLE


class _Constant(ScoreFunction):
    def evaluate(self, rank):
        return 1.0

    def evaluate_array(self, ranks):
        return ranks * 0 + 1.0

    def describe(self):
        return "constant"


class TestNormalize:
    def test_sqrt_endpoints(self):
        g = affine_normalize(Power(0.5), 20, 1, 20)
        assert g(1) == pytest.approx(1)
        assert g(20) == pytest.approx(20)
        assert g(4) == pytest.approx(6.4721, abs=1e-3)

    def test_log_coefficients(self):
        g = affine_normalize(Logarithmic(), 20, 1, 20)
        assert g.a == pytest.approx(1)
        assert g.b == pytest.approx(19 / math.log(20))
        assert g(10) == pytest.approx(1 + 19 * math.log(10) / math.log(20))
        # the affine form holds between ranks too
        assert g.evaluate_array(np.array([math.e]))[0] == pytest.approx(1 + 19 / math.log(20), abs=1e-9)

    def test_trio_shares_endpoints(self):
        trio = normalized_trio(20)
        assert list(trio) == ["g1", "g2", "g3"]
        for g in trio.values():
            assert g(1) == pytest.approx(1)
            assert g(20) == pytest.approx(20)
        # concave functions sit above the linear one in the interior
        assert trio["g3"](10) > trio["g2"](10) > trio["g1"](10)

    def test_degenerate(self):
        with pytest.raises(DegenerateFunctionError):
            affine_normalize(_Constant(), 20, 1, 20)

    @pytest.mark.parametrize("n, lo, hi", [(1, 1, 20), (20, 5, 5), (20, 10, 1), (20, 1, math.inf), (20, math.nan, 20)])
    def test_bad_arguments(self, n, lo, hi):
        with pytest.raises(ConfigurationError):
            affine_normalize(Linear(), n, lo, hi)


class TestRounding:
    @pytest.mark.parametrize(
        "value, expected",
        [(0.5, 1), (1.5, 2), (2.5, 3), (-0.5, -1), (-2.5, -3), (2.4999, 2), (Fraction(7, 2), 4), (0, 0)],
    )
    def test_half_away_from_zero(self, value, expected):
        assert round_half_away(value) == expected


class TestGenerateTable:
    def test_sqrt_table(self):
        table = generate_table(Power(0.5), 20, scale=100, offset=-100)
        assert table.values == SQRT_TABLE

    def test_log_table(self):
        table = generate_table(Logarithmic(), 20, scale=100)
        assert table.values == LOG_TABLE

    def test_linear_identity(self):
        assert generate_table(Linear(), 5, scale=1).values == [1, 2, 3, 4, 5]

    def test_collision_is_reported(self):
        with pytest.raises(TableDegeneracyError) as excinfo:
            generate_table(Logarithmic(), 20, scale=1)
        assert excinfo.value.colliding[:2] == (2, 3)
        assert "2->1" in str(excinfo.value)

    def test_csv_is_deterministic(self):
        first = generate_table(Logarithmic(), 20, scale=100).to_csv()
        second = generate_table(Logarithmic(), 20, scale=100).to_csv()
        assert first == second
        assert first.startswith("rank,points\n1,0\n2,69\n")
        assert "\r" not in first

    def test_round_trip_through_file(self, tmp_path):
        table = generate_table(Power(0.5), 20, scale=100, offset=-100)
        path = tmp_path / "sqrt.csv"
        path.write_text(table.to_csv(), encoding="utf-8")
        assert load_table(path).values == SQRT_TABLE

    def test_load_rejects_bad_header(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("place,points\n1,0\n", encoding="utf-8")
        with pytest.raises(ParseError):
            load_table(path)

    def test_table_must_cover_every_rank(self):
        with pytest.raises(TableDegeneracyError):
            ScoringTable(3, ((1, 0), (3, 5)))

    @pytest.mark.parametrize("n, scale", [(1, 100), (20, 0), (20, -5)])
    def test_bad_arguments(self, n, scale):
        with pytest.raises(ConfigurationError):
            generate_table(Linear(), n, scale)

    @pytest.mark.parametrize("scale, offset", [(math.inf, 0), (math.nan, 0), (100, math.nan), (100, -math.inf)])
    def test_non_finite_arguments(self, scale, offset):
        with pytest.raises(ConfigurationError):
            generate_table(Logarithmic(), 20, scale, offset)

    def test_missing_or_unreadable_file(self, tmp_path):
        with pytest.raises(ValidationError):
            load_table(tmp_path / "missing.csv")
        with pytest.raises(ValidationError):
            load_table(tmp_path)


class TestTableEquivalence:
    def test_log_table_matches_product_ranking(self, men_prelims):
        whole_ranks = [c.name for c in men_prelims.competitors if all(r.is_integer for r in c.ranks)]
        fields = {"men-prelims (whole ranks)": men_prelims.subset(whole_ranks)}
        report = table_ranking_equivalence(generate_table(Logarithmic(), 20, 100), Logarithmic(), fields)
        assert report.all_match
        assert report.checks[0].applicable

    def test_half_ranks_are_not_applicable(self, men_prelims):
        report = table_ranking_equivalence(generate_table(Logarithmic(), 20, 100), Logarithmic(), {"m": men_prelims})
        assert not report.checks[0].applicable
        assert "19.5" in report.checks[0].note

    def test_identity_table_matches_sum(self, women_finals, men_finals):
        fields = {"women-finals": women_finals, "men-finals": men_finals}
        report = table_ranking_equivalence(generate_table(Linear(), 8, 1), Linear(), fields)
        assert report.all_match
        assert all(c.applicable for c in report.checks)

    def test_disagreement_is_listed(self, women_finals):
        # steep first step: winning a stage is worth far more than under the plain sum
        coarse = ScoringTable(8, tuple((j, p) for j, p in enumerate([0, 10, 11, 12, 13, 14, 15, 16], start=1)))
        report = table_ranking_equivalence(coarse, Linear(), {"women-finals": women_finals})
        check = report.checks[0]
        assert not check.match
        assert check.only_in_table or check.only_in_function
