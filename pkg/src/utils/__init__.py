"""Configuration and logging helpers for gemcraft."""

from .config import RunConfig, load_config, resolve_threads
from .logging import setup_logging, verbosity_level

__all__ = ["RunConfig", "load_config", "resolve_threads", "setup_logging", "verbosity_level"]
