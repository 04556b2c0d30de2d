"""Tests for the command-line interface."""

import json

import pytest
import yaml
from typer.testing import CliRunner

from cornerlab.cli import app
from cornerlab.module.ramsey import Coloring
from cornerlab.module.grid_core import Domain

runner = CliRunner()

FAST_BATTERY = {
    "verify": {
        "gaussian_samples": 50,
        "random_sets": 3,
        "decomposition_samples": 5,
        "saturation_max_p": 11,
    },
    "analysis": {"audit_points": 2000},
    "ramsey": {"random_colorings": 5},
}


def document(result) -> dict:
    """The JSON document printed on stdout."""
    text = result.stdout
    return json.JSONDecoder().raw_decode(text[text.index("{\n"):])[0]


@pytest.fixture
def fast_config(tmp_path):
    path = tmp_path / "fast.yaml"
    path.write_text(yaml.safe_dump(FAST_BATTERY), encoding="utf-8")
    return str(path)


@pytest.mark.integration
class TestSearchCommand:
    def test_exact_corner_saturation(self, tmp_path):
        result = runner.invoke(app, ["search", "--kind", "corner-sat", "--p", "3", "--mode", "exact", "-o", str(tmp_path)])
        assert result.exit_code == 0
        doc = document(result)
        assert doc["ok"] is True
        assert doc["result"]["best_size"] == 3
        assert doc["result"]["status"] == "ProvedOptimal"
        manifests = list((tmp_path / "manifests").glob("search-*.json"))
        assert len(manifests) == 1
        assert json.loads(manifests[0].read_text())["results_digest"] == doc["manifest"]["results_digest"]

    def test_digest_ignores_thread_count(self, tmp_path):
        args = ["search", "--kind", "corner-free-max", "--n", "3", "--mode", "heuristic", "--budget", "60", "--seed", "4"]
        one = document(runner.invoke(app, args + ["--threads", "1", "-o", str(tmp_path / "a")]))
        two = document(runner.invoke(app, args + ["--threads", "2", "-o", str(tmp_path / "b")]))
        assert one["manifest"]["results_digest"] == two["manifest"]["results_digest"]

    @pytest.mark.parametrize("mode", ["exact", "branch-bound"])
    def test_saturation_digest_ignores_thread_count(self, tmp_path, mode):
        args = ["search", "--kind", "corner-sat", "--p", "3", "--mode", mode]
        one = document(runner.invoke(app, args + ["--threads", "1", "-o", str(tmp_path / "a")]))
        four = document(runner.invoke(app, args + ["--threads", "4", "-o", str(tmp_path / "b")]))
        assert one["result"]["best_set"] == four["result"]["best_set"]
        assert one["manifest"]["results_digest"] == four["manifest"]["results_digest"]

    def test_strict_budget_exit_code(self, tmp_path):
        args = ["search", "--kind", "corner-sat", "--p", "5", "--mode", "branch-bound", "--budget", "3", "-o", str(tmp_path)]
        relaxed = runner.invoke(app, args)
        assert relaxed.exit_code == 0
        assert document(relaxed)["result"]["status"] == "BestFound"
        strict = runner.invoke(app, args + ["--strict"])
        assert strict.exit_code == 1
        assert document(strict)["error"] == "BudgetExhausted"

    def test_extremal_exact(self):
        result = runner.invoke(app, ["search", "--kind", "axis-corner-free-max", "--n", "2", "--mode", "exact"])
        assert result.exit_code == 0
        assert document(result)["result"]["max_size_found"] == 3

    def test_needs_exactly_one_domain(self):
        result = runner.invoke(app, ["search", "--kind", "corner-sat", "--p", "3", "--n", "3"])
        assert result.exit_code == 2
        assert document(result)["error"] == "UsageError"

    def test_unknown_kind(self):
        result = runner.invoke(app, ["search", "--kind", "triangle", "--p", "3"])
        assert result.exit_code == 2

    def test_bad_prime(self):
        result = runner.invoke(app, ["search", "--kind", "corner-sat", "--p", "9"])
        assert result.exit_code == 2
        assert document(result)["error"] == "InfeasibleDomain"

    def test_resume_from_missing_checkpoint(self, tmp_path):
        result = runner.invoke(
            app,
            ["search", "--kind", "corner-sat", "--p", "3", "--mode", "exact", "--checkpoint", str(tmp_path / "none.json"), "--resume"],
        )
        assert result.exit_code == 3
        assert document(result)["error"] == "CheckpointError"

    def test_checkpoint_rejected_for_extremal(self, tmp_path):
        result = runner.invoke(
            app, ["search", "--kind", "square-free-max", "--n", "3", "--checkpoint", str(tmp_path / "c.json")]
        )
        assert result.exit_code == 2


@pytest.mark.integration
class TestAuditCommand:
    def test_non_residue_ratio(self):
        result = runner.invoke(app, ["audit-coloring", "--random", "--p", "7", "--a", "1", "--b", "3"])
        assert result.exit_code == 2
        assert document(result)["error"] == "NotQuadraticResidue"

    def test_forced_non_residue(self):
        result = runner.invoke(app, ["audit-coloring", "--random", "--p", "7", "--a", "1", "--b", "3", "--force"])
        assert result.exit_code == 0
        assert document(result)["result"]["collinear_triple"] is None

    def test_uniform_coloring(self):
        result = runner.invoke(app, ["audit-coloring", "--generate", "uniform", "--p", "5", "--bound-constant", "0"])
        assert result.exit_code == 0
        res = document(result)["result"]
        assert res["mono_corners"]["sigma_R"] == 600
        assert res["mono_corners"]["sigma_B"] == 0
        assert res["decomposition"]["exact"] is True
        assert res["axis_corner"]["color"] == 0

    def test_coloring_file(self, tmp_path):
        path = tmp_path / "c.json"
        Coloring.random(Domain.prime_plane(7), seed=3).save(path)
        result = runner.invoke(app, ["audit-coloring", "--input", str(path), "--a", "1", "--b", "2"])
        assert result.exit_code == 0
        res = document(result)["result"]
        assert res["r"] == 2
        assert res["collinear_triple"] is not None

    def test_malformed_file(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"p": 3, "r": 2, "colors": [0, 1]}), encoding="utf-8")
        result = runner.invoke(app, ["audit-coloring", "--input", str(path)])
        assert result.exit_code == 3
        doc = document(result)
        assert doc["error"] == "ColoringFormatError"
        assert doc["context"]["field"] == "colors"

    def test_three_colors_skip_corner_counts(self):
        result = runner.invoke(app, ["audit-coloring", "--random", "--r", "3", "--p", "5"])
        assert result.exit_code == 0
        assert document(result)["result"]["mono_corners"] is None

    def test_needs_a_source(self):
        result = runner.invoke(app, ["audit-coloring", "--p", "5"])
        assert result.exit_code == 2


@pytest.mark.integration
class TestOtherCommands:
    def test_density_table(self, tmp_path):
        result = runner.invoke(app, ["density-table", "--kind", "corner", "--sizes", "2,3", "-o", str(tmp_path)])
        assert result.exit_code == 0
        rows = document(result)["result"]["rows"]
        assert [row["max_found"] for row in rows][0] == 2
        assert (tmp_path / "density_corner.csv").exists()

    def test_density_table_bad_sizes(self):
        result = runner.invoke(app, ["density-table", "--sizes", "2,x"])
        assert result.exit_code == 2

    def test_schemas(self, tmp_path):
        result = runner.invoke(app, ["schemas", "-o", str(tmp_path)])
        assert result.exit_code == 0
        assert (tmp_path / "schemas" / "coloring_file.schema.json").exists()
        assert len(document(result)["result"]["files"]) == 7

    def test_config_show(self, fast_config):
        result = runner.invoke(app, ["--config", fast_config, "config", "show"])
        assert result.exit_code == 0
        assert document(result)["result"]["verify"]["random_sets"] == 3

    def test_missing_config_file(self, tmp_path):
        result = runner.invoke(app, ["--config", str(tmp_path / "nope.yaml"), "config", "show"])
        assert result.exit_code == 3


@pytest.mark.integration
class TestSettingsDefaults:
    def test_seed_from_environment(self, monkeypatch):
        monkeypatch.setenv("CORNERLAB_SEED", "9")
        result = runner.invoke(app, ["search", "--kind", "corner-free-max", "--n", "3", "--mode", "heuristic", "--budget", "20"])
        assert result.exit_code == 0
        assert document(result)["manifest"]["seed"] == 9

    def test_seed_option_beats_environment(self, monkeypatch):
        monkeypatch.setenv("CORNERLAB_SEED", "9")
        result = runner.invoke(
            app, ["search", "--kind", "corner-free-max", "--n", "3", "--mode", "heuristic", "--budget", "20", "--seed", "2"]
        )
        assert document(result)["manifest"]["seed"] == 2

    def test_seed_default_is_zero(self):
        result = runner.invoke(app, ["audit-coloring", "--random", "--p", "3"])
        assert document(result)["manifest"]["seed"] == 0

    def test_environment_seed_drives_random_coloring(self, monkeypatch):
        monkeypatch.setenv("CORNERLAB_SEED", "5")
        from_env = document(runner.invoke(app, ["audit-coloring", "--random", "--p", "7"]))
        monkeypatch.delenv("CORNERLAB_SEED")
        explicit = document(runner.invoke(app, ["audit-coloring", "--random", "--p", "7", "--seed", "5"]))
        assert from_env["manifest"]["results_digest"] == explicit["manifest"]["results_digest"]

    def test_battery_primes_from_config_file(self, tmp_path):
        path = tmp_path / "primes.yaml"
        path.write_text(yaml.safe_dump({"verify": {"p_list": [2], "grid_list": [3]}}), encoding="utf-8")
        result = runner.invoke(app, ["--config", str(path), "verify-claims"])
        assert result.exit_code == 2
        assert document(result)["error"] == "InfeasibleDomain"


@pytest.mark.integration
class TestVerifyClaims:
    def test_rejects_two(self):
        result = runner.invoke(app, ["verify-claims", "--p-list", "2"])
        assert result.exit_code == 2
        assert document(result)["error"] == "InfeasibleDomain"

    @pytest.mark.slow
    def test_small_battery_passes(self, fast_config):
        result = runner.invoke(app, ["--config", fast_config, "verify-claims", "--p-list", "3,7", "--grid-list", "3"])
        assert result.exit_code == 0
        doc = document(result)
        assert doc["result"]["passed"] is True
        names = {check["name"] for check in doc["result"]["checks"]}
        assert "bessel.g_min" in names
        assert "ramsey.mono_audit[7]" in names
