"""
Configuration management for the crosscap orientation lab.

Loads settings from config.yaml and provides typed access to configuration values.
"""

import logging
import os
import sys
import yaml
from pathlib import Path
from typing import Dict, Any

logger = logging.getLogger(__name__)


class Config:
    """Configuration loader and accessor for tolerances, sizes and logging."""

    def __init__(self, config_path: str = "config.yaml"):
        """
        Initialize configuration from YAML file.

        Args:
            config_path: Path to configuration file (default: config.yaml in project root)
        """
        self._project_root = Path(__file__).resolve().parents[1]
        self._config_path = config_path
        self._config: Dict[str, Any] = {}
        self._load_config()

    def _resolve_config_path(self) -> Path:
        p = Path(self._config_path)

        if p.is_absolute():
            return p

        env = os.getenv("CROSSCAP_CONFIG")
        if env:
            ep = Path(env)
            return ep if ep.is_absolute() else (self._project_root / ep)

        # Relative to project root, not CWD
        return self._project_root / p

    def _load_config(self):
        config_file = self._resolve_config_path()

        if not config_file.exists():
            logger.warning("Config file not found: %s; using defaults", config_file)
            self._config = self._get_defaults()
            return

        try:
            with open(config_file, "r") as f:
                loaded = yaml.safe_load(f) or {}
                if not isinstance(loaded, dict):
                    raise ValueError(f"config root must be a mapping/dict, got {type(loaded).__name__}")
                self._config = loaded
        except Exception as e:
            logger.error("Failed to load config file %s: %s; using defaults", config_file, e)
            self._config = self._get_defaults()

    def _get_defaults(self) -> Dict[str, Any]:
        """Return default configuration values."""
        return {
            "clutching": {
                "reality_tol": 1e-9,
                "aliasing_fraction": 0.9,
                "default_samples": 256
            },
            "spectral": {
                "kernel_tol": 1e-8,
                "gap_ratio": 1e3,
                "trunc_margin": 8,
                "colloc_factor": 4
            },
            "quadrature": {
                "points": 64,
                "precision": 30
            },
            "realcurves": {
                "equivariance_tol": 1e-9,
                "equivariance_samples": 200,
                "delta_tol": 1e-8
            },
            "verify": {
                "seed": 0,
                "perturbations": 20,
                "perturbation_size": 0.05
            },
            "logging": {
                "level": "INFO",
                "format": "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
            }
        }

    def get(self, key_path: str, default: Any = None) -> Any:
        """
        Get configuration value by dot-separated path.

        Args:
            key_path: Dot-separated path (e.g., "spectral.gap_ratio")
            default: Default value if key not found

        Returns:
            Configuration value or default
        """
        keys = key_path.split('.')
        value = self._config

        for key in keys:
            if isinstance(value, dict) and key in value:
                value = value[key]
            else:
                return default

        return value

    @property
    def reality_tol(self) -> float:
        """Tolerance for the discrete reality condition on clutching loops."""
        return float(self.get("clutching.reality_tol", 1e-9))

    @property
    def aliasing_fraction(self) -> float:
        """Phase jumps at or above this fraction of pi signal undersampling."""
        return float(self.get("clutching.aliasing_fraction", 0.9))

    @property
    def default_samples(self) -> int:
        return int(self.get("clutching.default_samples", 256))

    @property
    def kernel_tol(self) -> float:
        """Relative singular-value threshold for kernel detection."""
        return float(self.get("spectral.kernel_tol", 1e-8))

    @property
    def gap_ratio(self) -> float:
        """Required ratio between smallest accepted and largest rejected singular value."""
        return float(self.get("spectral.gap_ratio", 1e3))

    @property
    def trunc_margin(self) -> int:
        return int(self.get("spectral.trunc_margin", 8))

    @property
    def colloc_factor(self) -> int:
        return int(self.get("spectral.colloc_factor", 4))

    @property
    def quadrature_points(self) -> int:
        return int(self.get("quadrature.points", 64))

    @property
    def quadrature_precision(self) -> int:
        """Working precision (decimal digits) for contour quadrature."""
        return int(self.get("quadrature.precision", 30))

    @property
    def equivariance_tol(self) -> float:
        return float(self.get("realcurves.equivariance_tol", 1e-9))

    @property
    def equivariance_samples(self) -> int:
        return int(self.get("realcurves.equivariance_samples", 200))

    @property
    def delta_tol(self) -> float:
        """Chordal tolerance for matching orbit points in the degenerate locus."""
        return float(self.get("realcurves.delta_tol", 1e-8))

    @property
    def default_seed(self) -> int:
        return int(self.get("verify.seed", 0))

    @property
    def perturbations(self) -> int:
        return int(self.get("verify.perturbations", 20))

    @property
    def perturbation_size(self) -> float:
        return float(self.get("verify.perturbation_size", 0.05))

    @property
    def log_level(self) -> str:
        return str(self.get("logging.level", "INFO")).upper()

    @property
    def log_format(self) -> str:
        return self.get("logging.format", "%(asctime)s - %(name)s - %(levelname)s - %(message)s")


# Global configuration instance
_config_instance = None


def get_config() -> Config:
    """
    Get global configuration instance (singleton).

    Returns:
        Config instance
    """
    global _config_instance
    if _config_instance is None:
        _config_instance = Config()
    return _config_instance


def reload_config():
    """Reload configuration from file."""
    global _config_instance
    _config_instance = Config()


def setup_logging(level: str = None):
    """Configure root logging from the config's logging section. Diagnostics go to stderr."""
    config = get_config()
    logging.basicConfig(
        level=getattr(logging, (level or config.log_level).upper(), logging.INFO),
        format=config.log_format,
        stream=sys.stderr,
        force=True,
    )
