"""
Unit tests for configuration management.

Tests the Config class and configuration loading.
"""

import unittest
import sys
import tempfile
import os
from pathlib import Path
from unittest import mock

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from core.config import Config, get_config, reload_config


class TestConfig(unittest.TestCase):
    """Test configuration loading and access."""

    def test_config_defaults(self):
        """Test that default configuration loads when file doesn't exist."""
        with tempfile.TemporaryDirectory() as tmpdir:
            config_path = os.path.join(tmpdir, "nonexistent.yaml")
            with self.assertLogs("core.config", level="WARNING"):
                config = Config(config_path)

            self.assertEqual(config.reality_tol, 1e-9)
            self.assertEqual(config.gap_ratio, 1e3)
            self.assertEqual(config.default_samples, 256)
            self.assertEqual(config.quadrature_points, 64)

    def test_config_get_method(self):
        """Test the get() method for accessing config values."""
        config = Config("config.yaml")

        self.assertIsNotNone(config.get("spectral.kernel_tol"))

        missing = config.get("nonexistent.key", "default_value")
        self.assertEqual(missing, "default_value")

    def test_config_types(self):
        """Test that configuration values have correct types."""
        config = Config("config.yaml")

        for value in (config.reality_tol, config.aliasing_fraction, config.kernel_tol, config.gap_ratio,
                      config.equivariance_tol, config.delta_tol, config.perturbation_size):
            self.assertIsInstance(value, float)
        for value in (config.default_samples, config.trunc_margin, config.colloc_factor,
                      config.quadrature_points, config.quadrature_precision, config.equivariance_samples,
                      config.default_seed, config.perturbations):
            self.assertIsInstance(value, int)
        self.assertIn(config.log_level, ("DEBUG", "INFO", "WARNING", "ERROR"))

    def test_shipped_yaml_matches_defaults(self):
        """The shipped config.yaml carries the documented default tolerances."""
        config = Config("config.yaml")
        self.assertEqual(config.default_samples % 2, 0)
        self.assertEqual(config.aliasing_fraction, 0.9)
        self.assertEqual(config.trunc_margin, 8)
        self.assertEqual(config.colloc_factor, 4)

    def test_config_with_custom_yaml(self):
        """Test loading configuration from custom YAML."""
        yaml_content = """
spectral:
  gap_ratio: 5000.0
  trunc_margin: 10

quadrature:
  points: 128
"""

        with tempfile.TemporaryDirectory() as tmpdir:
            config_path = os.path.join(tmpdir, "test_config.yaml")
            with open(config_path, 'w') as f:
                f.write(yaml_content)

            config = Config(config_path)

            self.assertEqual(config.get("spectral.gap_ratio"), 5000.0)
            self.assertEqual(config.trunc_margin, 10)
            self.assertEqual(config.quadrature_points, 128)
            # Sections absent from the file fall back to property defaults
            self.assertEqual(config.reality_tol, 1e-9)

    def test_malformed_yaml_falls_back(self):
        """A YAML file whose root is not a mapping falls back to defaults."""
        with tempfile.TemporaryDirectory() as tmpdir:
            config_path = os.path.join(tmpdir, "bad.yaml")
            with open(config_path, 'w') as f:
                f.write("- just\n- a list\n")

            with self.assertLogs("core.config", level="ERROR"):
                config = Config(config_path)
            self.assertEqual(config.kernel_tol, 1e-8)

    def test_env_override(self):
        """CROSSCAP_CONFIG redirects relative config paths."""
        with tempfile.TemporaryDirectory() as tmpdir:
            config_path = os.path.join(tmpdir, "env.yaml")
            with open(config_path, 'w') as f:
                f.write("verify:\n  seed: 42\n")

            with mock.patch.dict(os.environ, {"CROSSCAP_CONFIG": config_path}):
                config = Config("config.yaml")
            self.assertEqual(config.default_seed, 42)

    def test_singleton(self):
        """get_config returns one shared instance until reload_config."""
        first = get_config()
        self.assertIs(first, get_config())
        reload_config()
        self.assertIsNot(first, get_config())


if __name__ == "__main__":
    unittest.main()
