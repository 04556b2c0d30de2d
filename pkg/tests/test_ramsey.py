"""Tests for colorings, monochromatic audits and pattern finders."""

import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cornerlab.config import reset_settings
from cornerlab.errors import (
    ColoringFormatError,
    DomainMismatch,
    NotQuadraticResidue,
    OutOfRange,
    WrongColorCount,
    ZeroInput,
)
from cornerlab.module.configs import count_corners
from cornerlab.module.grid_core import Domain, GaussianElem, GridPoint, norm, unit_group
from cornerlab.module.ramsey import (
    Coloring,
    collinear_steps,
    collinear_sweep,
    corner_bound,
    find_mono_axis_corner,
    find_mono_collinear_triple,
    is_quadratic_residue,
    mono_audit_batch,
    mono_corner_counts,
    mono_decomposition_audit,
)


@pytest.mark.unit
class TestColoring:
    def test_length_must_match(self, f3):
        with pytest.raises(DomainMismatch):
            Coloring(f3, [0] * 8, 2)

    def test_colors_must_be_in_range(self, f3):
        with pytest.raises(ValueError):
            Coloring(f3, [0] * 8 + [2], 2)

    def test_checkerboard(self):
        grid = Domain.integer_grid(3)
        coloring = Coloring.checkerboard(grid)
        assert coloring[GridPoint(0, 0)] == 0
        assert coloring[GridPoint(1, 2)] == 1
        assert coloring.grid()[2, 1] == 1

    def test_swap_and_classes(self, f5):
        coloring = Coloring.random(f5, seed=4)
        swapped = coloring.swap()
        assert swapped.class_set(0) == coloring.class_set(1)
        assert swapped.swap() == coloring

    def test_save_and_load(self, f7, tmp_path):
        coloring = Coloring.random(f7, r=3, seed=1)
        path = tmp_path / "coloring.json"
        coloring.save(path)
        assert Coloring.load(path) == coloring
        assert json.loads(path.read_text(encoding="utf-8"))["p"] == 7

    def test_invalid_json_reports_line(self):
        with pytest.raises(ColoringFormatError) as info:
            Coloring.from_json('{\n"p": 3,\n"r": 2\n"colors": []}')
        assert info.value.line == 4

    def test_needs_exactly_one_domain_key(self):
        with pytest.raises(ColoringFormatError) as info:
            Coloring.from_json(json.dumps({"p": 3, "n": 3, "r": 2, "colors": [0] * 9}))
        assert info.value.field == "p"

    def test_wrong_length(self):
        with pytest.raises(ColoringFormatError) as info:
            Coloring.from_json(json.dumps({"p": 3, "r": 2, "colors": [0] * 8}))
        assert info.value.field == "colors"

    def test_out_of_range_color_names_the_index(self):
        colors = [0] * 9
        colors[5] = 2
        with pytest.raises(ColoringFormatError) as info:
            Coloring.from_json(json.dumps({"p": 3, "r": 2, "colors": colors}))
        assert info.value.field == "colors[5]"
        assert "colors[5]" in str(info.value)

    def test_unknown_key(self):
        with pytest.raises(ColoringFormatError):
            Coloring.from_json(json.dumps({"p": 3, "r": 2, "colors": [0] * 9, "extra": 1}))

    def test_bad_prime(self):
        with pytest.raises(ColoringFormatError) as info:
            Coloring.from_json(json.dumps({"p": 9, "r": 2, "colors": [0] * 81}))
        assert info.value.field == "p"


@pytest.mark.unit
class TestMonoCounts:
    def test_all_red(self, f5):
        counts = mono_corner_counts(Coloring.uniform(f5), bound_constant=0.0)
        assert counts.sigma_r == 600
        assert counts.sigma_b == 0
        assert counts.bound == pytest.approx(125 / 4)
        assert counts.to_dict()["margin"] == pytest.approx(600 - 125 / 4)

    def test_swap_symmetry(self, f7):
        coloring = Coloring.random(f7, seed=9)
        counts = mono_corner_counts(coloring)
        swapped = mono_corner_counts(coloring.swap())
        assert (counts.sigma_r, counts.sigma_b) == (swapped.sigma_b, swapped.sigma_r)

    def test_default_bound_constant_from_settings(self, f5, monkeypatch):
        monkeypatch.setenv("CORNERLAB_BOUND_CONSTANT", "1.5")
        reset_settings()
        counts = mono_corner_counts(Coloring.uniform(f5))
        assert counts.bound_constant == 1.5
        assert counts.bound == pytest.approx(corner_bound(5, 1.5))

    def test_translation_invariance(self, f7):
        coloring = Coloring.random(f7, seed=2)
        shifted = coloring.transform(lambda q: f7.add(q, GridPoint(2, 5)))
        assert mono_corner_counts(shifted).total == mono_corner_counts(coloring).total

    @pytest.mark.parametrize("p", [5, 7])
    def test_rotation_by_i_keeps_each_class_count(self, p):
        domain = Domain.prime_plane(p)
        coloring = Coloring.random(domain, seed=p)
        i = GaussianElem(0, 1, p)
        rotated = coloring.transform(lambda q: (GaussianElem.from_point(q, domain) * i).to_point())
        before, after = mono_corner_counts(coloring), mono_corner_counts(rotated)
        assert (after.sigma_r, after.sigma_b) == (before.sigma_r, before.sigma_b)

    @settings(max_examples=25, deadline=None)
    @given(
        p=st.sampled_from([5, 7, 11]),
        unit=st.integers(min_value=0),
        dx=st.integers(min_value=0, max_value=10),
        dy=st.integers(min_value=0, max_value=10),
        seed=st.integers(min_value=0, max_value=2**16),
    )
    def test_similarity_invariance(self, p, unit, dx, dy, seed):
        domain = Domain.prime_plane(p)
        units = unit_group(p)
        g = units[unit % len(units)]
        shift = GridPoint(dx % p, dy % p)
        coloring = Coloring.random(domain, seed=seed)

        def similarity(q: GridPoint) -> GridPoint:
            return domain.add((GaussianElem.from_point(q, domain) * g).to_point(), shift)

        before = mono_corner_counts(coloring, bound_constant=0.0)
        after = mono_corner_counts(coloring.transform(similarity), bound_constant=0.0)
        assert (after.sigma_r, after.sigma_b) == (before.sigma_r, before.sigma_b)

    def test_needs_two_colors(self, f5):
        with pytest.raises(WrongColorCount):
            mono_corner_counts(Coloring.random(f5, r=3, seed=1))

    def test_needs_prime_plane(self):
        with pytest.raises(DomainMismatch):
            mono_corner_counts(Coloring.uniform(Domain.integer_grid(3)))

    def test_decomposition_audit(self, f7):
        coloring = Coloring.random(f7, seed=6)
        report = mono_decomposition_audit(coloring)
        assert report.exact
        assert report.balanced
        assert report.sigma_total == count_corners(coloring.class_set(0)) + count_corners(coloring.class_set(1))

    def test_batch_is_thread_independent(self):
        one = mono_audit_batch(5, count=6, seed=3, bound_constant=0.0, threads=1)
        many = mono_audit_batch(5, count=6, seed=3, bound_constant=0.0, threads=3)
        assert one.to_dict() == many.to_dict()
        assert one.min_total <= one.mean_total <= one.max_total
        assert one.violations == 0

    @pytest.mark.parametrize("count", [0, -2])
    def test_batch_needs_a_coloring(self, count):
        with pytest.raises(ValueError, match="at least one coloring"):
            mono_audit_batch(5, count=count, seed=1)


@pytest.mark.unit
class TestAxisCorners:
    def test_uniform_has_first_corner_at_origin(self, f3):
        pattern = find_mono_axis_corner(Coloring.uniform(f3))
        assert pattern.points == (GridPoint(0, 0), GridPoint(1, 0), GridPoint(0, 1))
        assert pattern.color == 0

    def test_checkerboard_unit_square_avoids_corners(self):
        assert find_mono_axis_corner(Coloring.checkerboard(Domain.integer_grid(2))) is None

    def test_negative_offsets_on_grids(self):
        grid = Domain.integer_grid(2)
        coloring = Coloring(grid, [1, 0, 0, 0], 2)
        pattern = find_mono_axis_corner(coloring)
        assert set(pattern.points) == {GridPoint(1, 1), GridPoint(0, 1), GridPoint(1, 0)}

    def test_random_colorings_always_contain_one(self, f7):
        for seed in range(5):
            coloring = Coloring.random(f7, r=3, seed=seed)
            pattern = find_mono_axis_corner(coloring)
            assert pattern is not None
            assert len({coloring[q] for q in pattern.points}) == 1


@pytest.mark.unit
class TestCollinear:
    def test_quadratic_residues_mod_7(self):
        assert {x for x in range(1, 7) if is_quadratic_residue(x, 7)} == {1, 2, 4}

    def test_zero_is_rejected(self):
        with pytest.raises(ZeroInput):
            is_quadratic_residue(14, 7)

    def test_non_residue_ratio(self, f7):
        with pytest.raises(NotQuadraticResidue):
            find_mono_collinear_triple(Coloring.uniform(f7), 1, 3)

    def test_forced_non_residue_has_no_steps(self, f7):
        assert collinear_steps(7, 1, 3) == []
        assert find_mono_collinear_triple(Coloring.uniform(f7), 1, 3, force=True) is None

    def test_zero_norm(self, f7):
        with pytest.raises(ZeroInput):
            find_mono_collinear_triple(Coloring.uniform(f7), 0, 1)

    def test_uniform_witness(self, f7):
        pattern = find_mono_collinear_triple(Coloring.uniform(f7), 1, 2)
        x, y, z = pattern.points
        assert norm(f7.sub(y, x), f7) == 1
        assert norm(f7.sub(z, y), f7) == 2

    def test_sweep_limit(self):
        with pytest.raises(OutOfRange):
            collinear_sweep(5, 1, 1)

    def test_sweep_p3(self):
        report = collinear_sweep(3, 1, 1)
        assert report.colorings == 512
        assert report.triples > 0
        if report.first_avoiding is not None:
            coloring = Coloring(Domain.prime_plane(3), np.array(report.first_avoiding), 2)
            assert find_mono_collinear_triple(coloring, 1, 1) is None
