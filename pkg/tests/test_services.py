"""Tests for manifests, schemas and the claim battery."""

import json

import pytest

from cornerlab.config import CornerLabConfig
from cornerlab.errors import InfeasibleDomain
from cornerlab.module.grid_core import Domain
from cornerlab.module.saturation import SaturationKind
from cornerlab.services import (
    ClaimVerifier,
    build_manifest,
    json_schemas,
    results_digest,
    strip_timings,
    validate_primes,
    write_manifest,
    write_schemas,
)


@pytest.mark.unit
class TestManifest:
    def test_strip_timings_at_every_depth(self):
        data = {"a": 1, "wall_time": 2.0, "inner": [{"nodes_explored": 5, "b": 2}], "metadata": {"threads": 4}}
        assert strip_timings(data) == {"a": 1, "inner": [{"b": 2}], "metadata": {}}

    def test_digest_ignores_timings_and_key_order(self):
        first = {"best_size": 3, "wall_time": 0.1, "status": "ProvedOptimal"}
        second = {"status": "ProvedOptimal", "best_size": 3, "wall_time": 9.9}
        assert results_digest(first) == results_digest(second)
        assert results_digest(first) != results_digest({"best_size": 4})

    def test_write_manifest(self, tmp_path):
        manifest = build_manifest("search", {"p": 3}, 7, {"best_size": 3})
        path = write_manifest(manifest, tmp_path, stem="run")
        assert path == tmp_path / "manifests" / "run.json"
        data = json.loads(path.read_text(encoding="utf-8"))
        assert data["seed"] == 7
        assert data["parameters"] == {"p": 3}
        assert data["results_digest"] == results_digest({"best_size": 3})


@pytest.mark.unit
class TestSchemas:
    def test_every_model_has_a_schema(self):
        schemas = json_schemas()
        assert set(schemas) == {
            "command_output",
            "error_output",
            "run_manifest",
            "claim_report",
            "search_checkpoint",
            "coloring_file",
            "density_row",
        }
        assert "colors" in schemas["coloring_file"]["properties"]

    def test_write_schemas(self, tmp_path):
        paths = write_schemas(tmp_path)
        assert len(paths) == 7
        assert all(path.name.endswith(".schema.json") for path in paths)


@pytest.mark.unit
class TestClaimBattery:
    @pytest.mark.parametrize("p_list", [[2], [9], [3, 15]])
    def test_rejects_bad_primes(self, p_list):
        with pytest.raises(InfeasibleDomain):
            validate_primes(p_list)

    def test_check_seeds_are_stable(self):
        verifier = ClaimVerifier([3], [], seed=5)
        assert verifier.rng("counting.3").integers(0, 1 << 30) == ClaimVerifier([3], [], seed=5).rng("counting.3").integers(0, 1 << 30)

    def test_individual_checks(self):
        settings = CornerLabConfig()
        settings.verify.gaussian_samples = 100
        settings.verify.decomposition_samples = 5
        settings.verify.random_sets = 3
        settings.verify.saturation_max_p = 13
        verifier = ClaimVerifier([3, 7], [3], seed=1, settings=settings)
        verifier.check_grid_core(7)
        verifier.check_gaussian_identities(7)
        verifier.check_counting(3)
        verifier.check_decomposition(7)
        verifier.check_uniform_cover(3)
        verifier.check_vertical_lines()
        verifier.check_exact_saturation()
        verifier.check_extremal_grid(3)
        assert [c.name for c in verifier.checks if not c.passed] == []
        assert any(c.name == "configs.uniform_cover[square,3]" for c in verifier.checks)

    def test_sum_difference_primes_include_nineteen(self):
        verifier = ClaimVerifier([3, 5, 7], [], seed=0, settings=CornerLabConfig())
        assert verifier.katz_tao_primes() == [3, 7, 19]

    def test_sum_difference_primes_must_be_three_mod_four(self):
        settings = CornerLabConfig()
        settings.verify.katz_tao_primes = [13]
        with pytest.raises(InfeasibleDomain):
            ClaimVerifier([3], [], settings=settings)

    def test_sum_difference_check_on_f19(self):
        verifier = ClaimVerifier([3], [], seed=2, settings=CornerLabConfig())
        verifier.check_katz_tao(Domain.prime_plane(19), SaturationKind.SQUARE)
        check = verifier.checks[-1]
        assert check.name == "saturation.katz_tao[p19]"
        assert check.passed

    def test_counting_f5_samples_by_default(self):
        settings = CornerLabConfig()
        settings.verify.random_sets = 4
        verifier = ClaimVerifier([5], [], seed=3, settings=settings)
        verifier.check_counting(5)
        assert verifier.checks[-1].measured["sets"] == 4

    @pytest.mark.slow
    def test_exhaustive_counting_f5(self):
        settings = CornerLabConfig()
        settings.verify.exhaustive_max_p = 5
        verifier = ClaimVerifier([5], [], seed=3, settings=settings)
        verifier.check_counting(5)
        check = verifier.checks[-1]
        assert check.name == "configs.counting[5]"
        assert check.passed
        assert check.measured["sets"] == 1 + 25 + 300 + 2300 + 12650
