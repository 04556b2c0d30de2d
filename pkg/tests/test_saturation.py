"""Tests for saturation checks, bounds, the search engines and checkpoints."""

import json
import logging

import numpy as np
import pytest

from cornerlab.errors import BudgetExhausted, CheckpointError, InfeasibleDomain, WrongResidue
from cornerlab.module.grid_core import Domain, GridPoint, PointSet, make_rng, random_subset
from cornerlab.module.saturation import (
    SaturationKind,
    SaturationSearch,
    SearchMode,
    SearchStatus,
    check_saturated,
    corner_sat_lower_bound,
    covered_mask,
    greedy_saturated,
    is_corner_free,
    is_square_free,
    katz_tao_probe,
    load_checkpoint,
    min_saturated_search,
    saturation_lower_bound,
    square_sat_lower_bound,
    vertical_line_set,
)


@pytest.mark.unit
class TestChecks:
    @pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
    def test_vertical_line_is_saturated(self, p):
        report = check_saturated(vertical_line_set(p))
        assert report.is_config_free
        assert report.is_saturated
        assert report.witness_config is None and report.witness_uncovered is None

    def test_full_plane_reports_a_corner(self, f3):
        report = check_saturated(PointSet.full(f3))
        assert not report.is_config_free
        assert not report.is_saturated
        assert len(report.witness_config) == 3

    def test_empty_set_covers_nothing(self, f3):
        report = check_saturated(PointSet.empty(f3))
        assert report.is_config_free
        assert not report.is_saturated
        assert report.uncovered_count == 9
        assert report.witness_uncovered == GridPoint(0, 0)

    def test_square_cover_ignores_freeness(self):
        grid = Domain.integer_grid(3)
        report = check_saturated(PointSet.full(grid), SaturationKind.SQUARE_COVER)
        assert report.is_config_free
        assert report.is_saturated

    def test_free_predicates(self):
        grid = Domain.integer_grid(2)
        full = PointSet.full(grid)
        assert not is_corner_free(full)
        assert not is_square_free(full)
        three = PointSet.from_points(grid, [GridPoint(0, 0), GridPoint(1, 0), GridPoint(0, 1)])
        assert is_square_free(three)
        assert not is_corner_free(three)
        assert not is_corner_free(three, axis_parallel=True)

    def test_greedy_sets_are_saturated(self, f7):
        rng = make_rng(3)
        for _ in range(5):
            points = greedy_saturated(f7, SaturationKind.CORNER, rng)
            assert check_saturated(points).is_saturated

    def test_greedy_square_sets_on_grid(self):
        grid = Domain.integer_grid(4)
        rng = make_rng(4)
        points = greedy_saturated(grid, SaturationKind.SQUARE, rng)
        assert check_saturated(points, SaturationKind.SQUARE).is_saturated


@pytest.mark.unit
class TestBounds:
    @pytest.mark.parametrize("p,expected", [(3, 3), (5, 4), (7, 5)])
    def test_corner_sat_lower_bound(self, p, expected):
        assert corner_sat_lower_bound(p) == expected

    def test_counting_bound_agrees(self, f3):
        assert saturation_lower_bound(f3, SaturationKind.CORNER) == corner_sat_lower_bound(3)

    def test_vertical_line_respects_lower_bound(self):
        for p in (3, 5, 7, 11):
            assert corner_sat_lower_bound(p) <= vertical_line_set(p).cardinality

    def test_square_bound_needs_three_mod_four(self):
        with pytest.raises(WrongResidue):
            square_sat_lower_bound(5)
        assert square_sat_lower_bound(7) == pytest.approx(7 ** (12 / 11) - 7 ** 0.6)


@pytest.mark.unit
class TestSearch:
    def test_exact_f3(self, f3):
        result = min_saturated_search(f3, mode=SearchMode.EXACT)
        assert result.best_size == 3
        assert result.status is SearchStatus.PROVED_OPTIMAL
        assert check_saturated(result.best_set).is_saturated

    def test_branch_bound_f3(self, f3):
        result = min_saturated_search(f3, mode=SearchMode.BRANCH_BOUND)
        assert result.best_size == 3
        assert result.status is SearchStatus.PROVED_OPTIMAL

    def test_branch_bound_without_symmetry(self, f3):
        result = min_saturated_search(f3, mode=SearchMode.BRANCH_BOUND, symmetry=False)
        assert result.best_size == 3

    def test_greedy_mode(self, f5):
        result = min_saturated_search(f5, mode=SearchMode.GREEDY, budget=5, seed=11)
        assert result.status is SearchStatus.BEST_FOUND
        assert len(result.metadata["restart_sizes"]) == 5
        assert result.best_size == min(result.metadata["restart_sizes"])

    def test_greedy_is_reproducible(self, f5):
        first = min_saturated_search(f5, mode=SearchMode.GREEDY, budget=4, seed=2)
        second = min_saturated_search(f5, mode=SearchMode.GREEDY, budget=4, seed=2, threads=3)
        assert first.best_set == second.best_set

    def test_exact_rejects_large_domains(self):
        with pytest.raises(InfeasibleDomain):
            min_saturated_search(Domain.prime_plane(7), mode=SearchMode.EXACT)

    def test_result_dict_without_timing(self, f3):
        data = min_saturated_search(f3, mode=SearchMode.EXACT).to_dict(include_timing=False)
        assert "wall_time" not in data
        assert data["status"] == "ProvedOptimal"

    @pytest.mark.slow
    def test_branch_bound_f5(self, f5):
        result = min_saturated_search(f5, mode=SearchMode.BRANCH_BOUND, threads=2)
        assert corner_sat_lower_bound(5) <= result.best_size <= 5
        assert check_saturated(result.best_set).is_saturated

    def test_branch_bound_set_independent_of_threads(self, f3):
        one = min_saturated_search(f3, mode=SearchMode.BRANCH_BOUND, threads=1)
        four = min_saturated_search(f3, mode=SearchMode.BRANCH_BOUND, threads=4)
        assert one.best_set == four.best_set
        assert one.to_dict(include_timing=False)["best_set"] == four.to_dict(include_timing=False)["best_set"]

    def test_ties_resolve_to_least_bitset(self, f3):
        search = SaturationSearch(f3, SaturationKind.CORNER, symmetry=False)
        proved = search.run(SearchMode.BRANCH_BOUND)
        sweep = search.run(SearchMode.EXACT)
        assert proved.best_size == sweep.best_size == 3
        assert proved.best_set.sort_key() <= sweep.best_set.sort_key()

    @pytest.mark.slow
    @pytest.mark.parametrize("kind", [SaturationKind.CORNER, SaturationKind.SQUARE])
    def test_branch_bound_f5_independent_of_threads(self, f5, kind):
        one = min_saturated_search(f5, kind, SearchMode.BRANCH_BOUND, 20_000_000, threads=1)
        four = min_saturated_search(f5, kind, SearchMode.BRANCH_BOUND, 20_000_000, threads=4)
        assert one.status is four.status is SearchStatus.PROVED_OPTIMAL
        assert one.best_set == four.best_set

    @pytest.mark.parametrize("kind", [SaturationKind.CORNER, SaturationKind.SQUARE])
    def test_symmetry_reduction_keeps_optimum_f3(self, f3, kind):
        reduced = min_saturated_search(f3, kind, SearchMode.BRANCH_BOUND, symmetry=True)
        full = min_saturated_search(f3, kind, SearchMode.BRANCH_BOUND, symmetry=False)
        assert reduced.status is full.status is SearchStatus.PROVED_OPTIMAL
        assert reduced.best_size == full.best_size

    @pytest.mark.slow
    @pytest.mark.parametrize("kind", [SaturationKind.CORNER, SaturationKind.SQUARE])
    def test_symmetry_reduction_keeps_optimum_f5(self, f5, kind):
        budget = 20_000_000
        reduced = min_saturated_search(f5, kind, SearchMode.BRANCH_BOUND, budget, symmetry=True, threads=2)
        full = min_saturated_search(f5, kind, SearchMode.BRANCH_BOUND, budget, symmetry=False, threads=2)
        assert reduced.status is full.status is SearchStatus.PROVED_OPTIMAL
        assert reduced.best_size == full.best_size


@pytest.mark.unit
class TestCheckpoints:
    def test_budget_exhaustion_then_resume(self, f3, tmp_path):
        path = str(tmp_path / "sweep.json")
        partial = min_saturated_search(f3, mode=SearchMode.EXACT, budget=5, checkpoint_path=path)
        assert partial.status is SearchStatus.BEST_FOUND
        assert partial.budget_exhausted

        checkpoint = load_checkpoint(path)
        assert checkpoint.sweep is not None
        assert checkpoint.nodes_explored == 5

        resumed = min_saturated_search(f3, mode=SearchMode.EXACT, budget=10_000, checkpoint_path=path, resume=True)
        assert resumed.status is SearchStatus.PROVED_OPTIMAL
        assert resumed.best_size == 3
        assert resumed.nodes_explored > 5

    def test_branch_bound_checkpoint(self, f5, tmp_path):
        path = str(tmp_path / "bb.json")
        partial = min_saturated_search(f5, mode=SearchMode.BRANCH_BOUND, budget=3, checkpoint_path=path)
        assert partial.budget_exhausted
        checkpoint = load_checkpoint(path)
        assert checkpoint.frontier
        assert checkpoint.best_size <= 5

        resumed = min_saturated_search(f5, mode=SearchMode.BRANCH_BOUND, budget=3, checkpoint_path=path, resume=True)
        assert resumed.nodes_explored == 6
        assert check_saturated(resumed.best_set).is_saturated

    def test_strict_raises_after_writing_checkpoint(self, f5, tmp_path):
        path = tmp_path / "strict.json"
        with pytest.raises(BudgetExhausted) as info:
            min_saturated_search(f5, mode=SearchMode.BRANCH_BOUND, budget=3, checkpoint_path=str(path), strict=True)
        assert info.value.exit_code == 1
        assert info.value.context["nodes"] == 3
        assert load_checkpoint(str(path)).frontier

    def test_strict_sweep_raises(self, f3):
        with pytest.raises(BudgetExhausted):
            min_saturated_search(f3, mode=SearchMode.EXACT, budget=5, strict=True)

    def test_strict_search_that_finishes_returns(self, f3):
        result = min_saturated_search(f3, mode=SearchMode.EXACT, strict=True)
        assert result.status is SearchStatus.PROVED_OPTIMAL

    def test_resume_with_other_mode_fails(self, f3, tmp_path):
        path = str(tmp_path / "sweep.json")
        min_saturated_search(f3, mode=SearchMode.EXACT, budget=5, checkpoint_path=path)
        with pytest.raises(CheckpointError):
            min_saturated_search(f3, mode=SearchMode.BRANCH_BOUND, checkpoint_path=path, resume=True)

    def test_missing_file(self, tmp_path):
        with pytest.raises(CheckpointError):
            load_checkpoint(str(tmp_path / "missing.json"))

    def test_corrupt_file(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(CheckpointError):
            load_checkpoint(str(path))

    def test_wrong_version(self, tmp_path):
        path = tmp_path / "old.json"
        path.write_text(json.dumps({"version": 99}), encoding="utf-8")
        with pytest.raises(CheckpointError):
            load_checkpoint(str(path))


@pytest.mark.unit
class TestKatzTao:
    def test_rejects_one_mod_four(self, f5):
        with pytest.raises(WrongResidue):
            katz_tao_probe(PointSet.full(f5))

    @pytest.mark.parametrize("seed", [1, 2, 3])
    def test_covered_matches_square_cover_mask(self, f7, seed):
        points = random_subset(f7, "1/3", seed=seed)
        report = katz_tao_probe(points)
        expected = int(np.count_nonzero(covered_mask(points, SaturationKind.SQUARE_COVER) & ~points.bits))
        assert report.covered == expected
        assert report.sumset_in_2S
        assert report.torsion_free_caveat

    def test_integer_grid_report(self):
        grid = Domain.integer_grid(6)
        points = random_subset(grid, "1/2", seed=9)
        report = katz_tao_probe(points)
        expected = int(np.count_nonzero(covered_mask(points, SaturationKind.SQUARE_COVER) & ~points.bits))
        assert report.covered == expected
        assert report.sumset_in_2S
        assert not report.torsion_free_caveat
        assert report.diffset_size <= report.G_size

    @pytest.mark.parametrize("seed", [4, 5, 6])
    def test_translation_invariance(self, f7, seed):
        points = random_subset(f7, "2/5", seed=seed)
        rng = make_rng(seed)
        shift = GridPoint(int(rng.integers(7)), int(rng.integers(7)))
        before = katz_tao_probe(points)
        after = katz_tao_probe(points.translate(shift))
        assert after.set_size == before.set_size
        assert after.covered == before.covered
        assert after.G_size == before.G_size
        assert after.sumset_size == before.sumset_size
        assert after.diffset_size == before.diffset_size
        assert after.kt_rhs == pytest.approx(before.kt_rhs)
        assert after.sumset_in_2S


@pytest.mark.unit
class TestSearchLogging:
    def test_engine_logs_with_search_context(self, f3, caplog, monkeypatch):
        monkeypatch.setattr(logging.getLogger("cornerlab"), "propagate", True)
        caplog.set_level(logging.INFO, logger="cornerlab.module.saturation.search")
        min_saturated_search(f3, mode=SearchMode.EXACT, seed=4)
        finished = [r.getMessage() for r in caplog.records if r.getMessage().startswith("Search finished")]
        assert len(finished) == 1
        assert "domain=p3" in finished[0]
        assert "mode=exact" in finished[0]
        assert "seed=4" in finished[0]

    def test_budget_warning_is_logged(self, f3, caplog, monkeypatch):
        monkeypatch.setattr(logging.getLogger("cornerlab"), "propagate", True)
        caplog.set_level(logging.WARNING, logger="cornerlab.module.saturation.search")
        min_saturated_search(f3, mode=SearchMode.EXACT, budget=5)
        assert any("BudgetExhausted" in r.getMessage() for r in caplog.records)
