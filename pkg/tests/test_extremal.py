"""Tests for the extremal searches and density tables."""

from fractions import Fraction

import pandas as pd
import pytest

from cornerlab.errors import BudgetExhausted, InfeasibleDomain
from cornerlab.module.configs import PatternSpec, count_corners
from cornerlab.module.extremal import (
    DensityRow,
    ExtremalKind,
    ExtremalMode,
    density_table,
    is_config_free,
    max_config_free,
    write_density_table,
)
from cornerlab.module.grid_core import Domain


@pytest.mark.unit
class TestExactSearch:
    def test_unit_square_tilted(self):
        record = max_config_free(Domain.integer_grid(2), ExtremalKind.CORNER, ExtremalMode.EXACT)
        assert record.max_size_found == 2
        assert record.proved

    def test_unit_square_axis_parallel(self):
        record = max_config_free(Domain.integer_grid(2), ExtremalKind.AXIS_CORNER, ExtremalMode.EXACT)
        assert record.max_size_found == 3
        assert record.proved

    def test_unit_square_squares(self):
        record = max_config_free(Domain.integer_grid(2), ExtremalKind.SQUARE, ExtremalMode.EXACT)
        assert record.max_size_found == 3

    def test_prime_plane_witness_is_free(self, f3):
        record = max_config_free(f3, ExtremalKind.CORNER, ExtremalMode.EXACT)
        assert record.proved
        assert count_corners(record.example_set) == 0
        assert record.density == Fraction(record.max_size_found, 9)

    def test_matrix_pattern_matches_squares(self):
        grid = Domain.integer_grid(3)
        by_pattern = max_config_free(grid, ExtremalKind.MATRIX_PATTERN, ExtremalMode.EXACT, spec=PatternSpec.square())
        by_shape = max_config_free(grid, ExtremalKind.SQUARE, ExtremalMode.EXACT)
        assert by_pattern.max_size_found == by_shape.max_size_found
        assert is_config_free(by_pattern.example_set, ExtremalKind.SQUARE)

    def test_matrix_pattern_needs_spec(self, f3):
        with pytest.raises(ValueError):
            max_config_free(f3, ExtremalKind.MATRIX_PATTERN)

    def test_exact_limit_on_grids(self):
        with pytest.raises(InfeasibleDomain):
            max_config_free(Domain.integer_grid(6), ExtremalKind.CORNER, ExtremalMode.EXACT)

    @pytest.mark.parametrize("kind", [ExtremalKind.CORNER, ExtremalKind.SQUARE])
    def test_canonization_keeps_maximum_f3(self, f3, kind):
        reduced = max_config_free(f3, kind, ExtremalMode.EXACT)
        plain = max_config_free(f3, kind, ExtremalMode.EXACT, symmetry=False)
        assert reduced.proved and plain.proved
        assert reduced.max_size_found == plain.max_size_found
        assert reduced.metadata["symmetry"] is True
        assert plain.metadata["symmetry"] is False

    @pytest.mark.slow
    def test_canonization_keeps_maximum_f5(self, f5):
        reduced = max_config_free(f5, ExtremalKind.CORNER, ExtremalMode.EXACT, budget=20_000_000)
        plain = max_config_free(f5, ExtremalKind.CORNER, ExtremalMode.EXACT, budget=20_000_000, symmetry=False)
        assert reduced.proved and plain.proved
        assert reduced.max_size_found == plain.max_size_found
        assert count_corners(reduced.example_set) == 0

    def test_axis_corners_keep_translation_only(self, f3):
        reduced = max_config_free(f3, ExtremalKind.AXIS_CORNER, ExtremalMode.EXACT)
        plain = max_config_free(f3, ExtremalKind.AXIS_CORNER, ExtremalMode.EXACT, symmetry=False)
        assert reduced.max_size_found == plain.max_size_found

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_square_free_maximum_dominates_corner_free(self, n):
        grid = Domain.integer_grid(n)
        corner = max_config_free(grid, ExtremalKind.CORNER, ExtremalMode.EXACT)
        square = max_config_free(grid, ExtremalKind.SQUARE, ExtremalMode.EXACT)
        assert corner.proved and square.proved
        assert square.max_size_found >= corner.max_size_found

    def test_square_free_maximum_dominates_corner_free_f3(self, f3):
        corner = max_config_free(f3, ExtremalKind.CORNER, ExtremalMode.EXACT)
        square = max_config_free(f3, ExtremalKind.SQUARE, ExtremalMode.EXACT)
        assert square.max_size_found >= corner.max_size_found
        assert is_config_free(corner.example_set, ExtremalKind.SQUARE)

    def test_small_budget_is_not_proved(self, f5):
        record = max_config_free(f5, ExtremalKind.CORNER, ExtremalMode.EXACT, budget=3)
        assert not record.proved
        assert count_corners(record.example_set) == 0

    def test_strict_budget_raises(self, f5):
        with pytest.raises(BudgetExhausted) as info:
            max_config_free(f5, ExtremalKind.CORNER, ExtremalMode.EXACT, budget=3, strict=True)
        assert info.value.context["nodes"] == 3

    def test_strict_has_no_effect_on_heuristics(self, f7):
        record = max_config_free(f7, ExtremalKind.CORNER, budget=30, restarts=1, strict=True)
        assert not record.proved


@pytest.mark.unit
class TestHeuristic:
    def test_witness_is_free(self, f7):
        record = max_config_free(f7, ExtremalKind.CORNER, budget=300, restarts=3, seed=5)
        assert not record.proved
        assert record.max_size_found > 0
        assert count_corners(record.example_set) == 0
        assert len(record.metadata["restart_sizes"]) == 3

    def test_thread_count_does_not_change_result(self, f7):
        one = max_config_free(f7, ExtremalKind.SQUARE, budget=200, restarts=4, seed=1, threads=1)
        many = max_config_free(f7, ExtremalKind.SQUARE, budget=200, restarts=4, seed=1, threads=4)
        assert one.example_set == many.example_set

    def test_record_dict(self, f7):
        data = max_config_free(f7, budget=50, restarts=1).to_dict(include_timing=False)
        assert "wall_time" not in data
        assert data["kind"] == "corner"
        assert data["proved"] is False


@pytest.mark.unit
class TestDensityTable:
    def test_rows_are_monotone_on_grids(self):
        rows = density_table(ExtremalKind.CORNER, [2, 3, 4])
        assert [row.size for row in rows] == [2, 3, 4]
        assert all(row.proved for row in rows)
        found = [row.max_found for row in rows]
        assert found == sorted(found)
        assert rows[0].max_found == 2

    def test_falls_back_to_heuristic(self):
        rows = density_table(ExtremalKind.CORNER, [6], budget=100)
        assert rows[0].mode == "heuristic"
        assert not rows[0].proved

    def test_write_table(self, tmp_path):
        rows = density_table(ExtremalKind.AXIS_CORNER, [2, 3])
        csv_path, json_path = write_density_table(rows, str(tmp_path))
        frame = pd.read_csv(csv_path)
        assert list(frame.columns) == list(DensityRow.model_fields)
        assert frame["max_found"].tolist() == [row.max_found for row in rows]
        assert json_path.exists()
