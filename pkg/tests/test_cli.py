"""
Tests for the command line front end.
"""

import json

import pytest
from click.testing import CliRunner

from main import cli

IIA_PARAMS = ["--param", "alpha=2", "--param", "gamma=1", "--param", "r=3", "--param", "lam_pi=4"]


@pytest.fixture
def runner():
    return CliRunner()


class TestCatalogAndZeta:
    """Test suite for the commands without inputs."""

    def test_catalog(self, runner, tmp_path):
        """Test that the catalog is written as JSON."""
        # Arrange
        out = tmp_path / "catalog.json"

        # Act
        result = runner.invoke(cli, ["catalog", "--out", str(out)])

        # Assert
        assert result.exit_code == 0, result.output
        document = json.loads(out.read_text(encoding="utf-8"))
        assert len(document) == 8
        assert document["Vc"]["twist_of"] == "Vb"

    def test_zeta(self, runner, tmp_path):
        """Test that every zeta identity holds."""
        # Arrange
        out = tmp_path / "zeta.json"

        # Act
        result = runner.invoke(cli, ["zeta", "--out", str(out)])

        # Assert
        assert result.exit_code == 0, result.output
        document = json.loads(out.read_text(encoding="utf-8"))
        assert all(identity["holds"] for identity in document["identities"])
        assert document["exceptional_siegelized_value"] == "(r^2)/(r^2 - 1)"


class TestTowerAndSolve:
    """Test suite for the tower and solve commands."""

    def test_tower(self, runner, tmp_path):
        """Test the IIa main tower at α = 2, γ = 1, q = 9 with CSV output."""
        # Arrange
        out = tmp_path / "tower.json"

        # Act
        result = runner.invoke(
            cli, ["tower", "--type", "IIa", "--case", "inert", *IIA_PARAMS, "--window", "1", "1", "--out", str(out)]
        )

        # Assert
        assert result.exit_code == 0, result.output
        document = json.loads(out.read_text(encoding="utf-8"))
        values = {(row["l"], row["m"]): row["value"] for row in document["values"]}
        assert values[(1, 0)] == "2/81"
        assert values[(0, 1)] == "1/27"
        assert (tmp_path / "tower.csv").read_text(encoding="utf-8").startswith("l,m,w,value\n")

    def test_solve(self, runner, tmp_path):
        """Test the IIa kernel in the smallest window."""
        # Arrange
        out = tmp_path / "kernel.json"

        # Act
        result = runner.invoke(
            cli, ["solve", "--type", "IIa", "--case", "inert", *IIA_PARAMS, "--window", "0", "0", "--out", str(out)]
        )

        # Assert
        assert result.exit_code == 0, result.output
        document = json.loads(out.read_text(encoding="utf-8"))
        assert document["unknowns"] == 4
        assert document["dim"] == 3
        assert document["distinguished"]["(0,0,E)"]["attainable"] is True

    def test_missing_type(self, runner):
        """Test that tower without --type is a usage error."""
        # Act
        result = runner.invoke(cli, ["tower", "--case", "inert"])

        # Assert
        assert result.exit_code == 1
        assert "needs --type" in result.output

    def test_malformed_param(self, runner):
        """Test that --param without '=' is rejected."""
        # Act
        result = runner.invoke(cli, ["tower", "--type", "IIa", "--case", "inert", "--param", "r"])

        # Assert
        assert result.exit_code == 1
        assert "sym=value" in result.output


class TestVerify:
    """Test suite for the verify and run commands."""

    def test_verify_subset(self, runner, tmp_path):
        """Test a prefix-selected verification run stored in SQLite."""
        # Arrange
        out = tmp_path / "report.json"
        db = tmp_path / "history.db"

        # Act
        result = runner.invoke(cli, ["verify", "--only", "zeta.", "--out", str(out), "--db", str(db)])

        # Assert
        assert result.exit_code == 0, result.output
        document = json.loads(out.read_text(encoding="utf-8"))
        assert document["ok"] is True
        assert document["passed"] == 7
        assert db.exists()

    def test_verify_rejects_even_prime(self, runner):
        """Test that --p 2 is refused."""
        # Act
        result = runner.invoke(cli, ["verify", "--only", "coset.", "--p", "2"])

        # Assert
        assert result.exit_code == 1
        assert "odd prime" in result.output

    def test_run_from_config(self, runner, tmp_path):
        """Test that run takes its command from the config file."""
        # Arrange
        config = tmp_path / "run.json"
        config.write_text('{"command": "catalog"}', encoding="utf-8")
        out = tmp_path / "catalog.json"

        # Act
        result = runner.invoke(cli, ["run", "--config", str(config), "--out", str(out)])

        # Assert
        assert result.exit_code == 0, result.output
        assert "IIa" in json.loads(out.read_text(encoding="utf-8"))

    def test_run_command_option_wins(self, runner, tmp_path):
        """Test that --command overrides the config file."""
        # Arrange
        config = tmp_path / "run.json"
        config.write_text('{"command": "catalog"}', encoding="utf-8")
        out = tmp_path / "zeta.json"

        # Act
        result = runner.invoke(cli, ["run", "--config", str(config), "--command", "zeta", "--out", str(out)])

        # Assert
        assert result.exit_code == 0, result.output
        assert "identities" in json.loads(out.read_text(encoding="utf-8"))
