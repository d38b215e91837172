"""
Tests for loading, validating and merging run configurations.
"""

from fractions import Fraction

import pytest

from errors import ConfigError
from models import BesselCase, Command, RepType, RunConfig, Symbol, Window


class TestRunConfigLoading:
    """Test suite for reading configurations from JSON."""

    def test_defaults(self):
        """Test the configuration used without a file."""
        # Act
        config = RunConfig()

        # Assert
        assert config.command is Command.VERIFY
        assert config.jobs == 1
        assert config.seed == 0
        assert config.window is None

    def test_from_json(self):
        """Test the type alias, the case and a window given as a list."""
        # Act
        config = RunConfig.from_json(
            '{"command": "solve", "type": "IIa", "case": "inert", "window": [1, 2], "params": {"r": 3}}'
        )

        # Assert
        assert config.command is Command.SOLVE
        assert config.rep_type is RepType.IIA
        assert config.case is BesselCase.INERT
        assert config.window == Window(l_max=1, m_max=2)
        assert config.params == {"r": "3"}

    def test_load(self, tmp_path):
        """Test reading a config file."""
        # Arrange
        path = tmp_path / "run.json"
        path.write_text('{"command": "zeta", "seed": 11}', encoding="utf-8")

        # Act
        config = RunConfig.load(path)

        # Assert
        assert config.command is Command.ZETA
        assert config.seed == 11

    def test_missing_file(self, tmp_path):
        """Test that an unreadable file is a ConfigError."""
        # Act & Assert
        with pytest.raises(ConfigError):
            RunConfig.load(tmp_path / "missing.json")

    @pytest.mark.parametrize(
        "text",
        [
            '{"colour": "red"}',
            '{"params": {"beta": "1"}}',
            '{"params": {"r": "1/0"}}',
            '{"params": {"r": "three"}}',
            '{"p": 2}',
            '{"p": 9}',
            '{"jobs": 0}',
            '{"eig_index": 2}',
            "not json",
        ],
    )
    def test_invalid(self, text):
        """Test that invalid documents raise ConfigError."""
        # Act & Assert
        with pytest.raises(ConfigError):
            RunConfig.from_json(text)

    def test_odd_prime(self):
        """Test that an odd prime is accepted."""
        # Act & Assert
        assert RunConfig.from_json('{"p": 5}').p == 5


class TestRunConfigMerge:
    """Test suite for command-line overrides."""

    def test_overrides_replace_values(self):
        """Test that given overrides win and None leaves fields untouched."""
        # Arrange
        config = RunConfig(seed=3, jobs=2)

        # Act
        merged = config.merged(seed=5, jobs=None, type="VIa", window=(2, 3))

        # Assert
        assert merged.seed == 5
        assert merged.jobs == 2
        assert merged.rep_type is RepType.VIA
        assert merged.window == Window(l_max=2, m_max=3)

    def test_merge_keeps_window(self):
        """Test that a stored window survives a merge."""
        # Arrange
        config = RunConfig(window=(1, 1))

        # Act
        merged = config.merged(seed=1)

        # Assert
        assert merged.window == Window(l_max=1, m_max=1)

    def test_invalid_override(self):
        """Test that an invalid override is a ConfigError."""
        # Act & Assert
        with pytest.raises(ConfigError):
            RunConfig().merged(m0=-1)

    def test_specialization(self):
        """Test conversion of params to exact rationals."""
        # Arrange
        config = RunConfig(params={"r": "3", "alpha": "1/2"})

        # Act
        values = config.specialization()

        # Assert
        assert values == {Symbol.R: Fraction(3), Symbol.ALPHA: Fraction(1, 2)}
