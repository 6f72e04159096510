"""Configuration management utilities."""

import argparse
import json
import os
from dataclasses import dataclass
from typing import Any

from ..gemcraft.exceptions import ConfigurationError

THREADS_ENV = "GEMCRAFT_THREADS"

DEFAULTS: dict[str, Any] = {
    "limit": 1_000_000,
    "heuristic_budget": 2_000,
    "seed": 0,
    "mode": "exhaustive",
    "threads": 1,
    "svg_max_vertices": 200,
    "identify_colour_permutations": False,
}

MODES = ("exhaustive", "heuristic")


def _check_types(config: dict[str, Any], source: str) -> None:
    for key, value in config.items():
        if key not in DEFAULTS:
            raise ConfigurationError(f"{source}: unknown setting {key!r}")
        expected = type(DEFAULTS[key])
        if type(value) is not expected:
            raise ConfigurationError(
                f"{source}: {key} must be {expected.__name__}, got {type(value).__name__}"
            )
    if config.get("mode", "exhaustive") not in MODES:
        raise ConfigurationError(f"{source}: mode must be one of {', '.join(MODES)}")


def load_config(config_path: str = "gemcraft.json") -> dict[str, Any]:
    """Load configuration from JSON file.

    Args:
        config_path: Path to configuration file.

    Returns:
        The defaults, overridden by the settings found in the file.
    """
    if not os.path.exists(config_path):
        return dict(DEFAULTS)

    try:
        with open(config_path, encoding="utf-8") as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as error:
        raise ConfigurationError(f"{config_path}: {error}") from error
    if not isinstance(data, dict):
        raise ConfigurationError(f"{config_path}: expected a JSON object")
    _check_types(data, config_path)
    return {**DEFAULTS, **data}


def resolve_threads(config: dict[str, Any]) -> int:
    """Worker count, with ``GEMCRAFT_THREADS`` taking precedence over the config."""
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        threads = int(config.get("threads", DEFAULTS["threads"]))
    else:
        try:
            threads = int(raw)
        except ValueError as error:
            raise ConfigurationError(f"{THREADS_ENV}={raw!r} is not an integer") from error
    if threads < 1:
        raise ConfigurationError(f"thread count must be positive, got {threads}")
    return threads


@dataclass(frozen=True)
class RunConfig:
    """Effective settings of one command invocation."""

    command: str
    input_path: str | None = None
    output_path: str | None = None
    alpha: int | None = None
    permutation: tuple[int, ...] | None = None
    limit: int = DEFAULTS["limit"]
    heuristic_budget: int = DEFAULTS["heuristic_budget"]
    seed: int = DEFAULTS["seed"]
    mode: str = DEFAULTS["mode"]
    output_format: str = "json"
    threads: int = DEFAULTS["threads"]
    svg_max_vertices: int = DEFAULTS["svg_max_vertices"]
    identify_colour_permutations: bool = DEFAULTS["identify_colour_permutations"]
    verbosity: int = 0

    def __post_init__(self) -> None:
        if self.limit < 1:
            raise ConfigurationError(f"limit must be at least 1, got {self.limit}")
        if self.heuristic_budget < 0:
            raise ConfigurationError(
                f"heuristic budget must not be negative, got {self.heuristic_budget}"
            )
        if self.mode not in MODES:
            raise ConfigurationError(f"mode must be one of {', '.join(MODES)}, got {self.mode}")
        if self.threads < 1:
            raise ConfigurationError(f"thread count must be positive, got {self.threads}")
        if self.mode == "heuristic" and self.heuristic_budget < 1:
            raise ConfigurationError("heuristic mode needs a positive heuristic budget")

    @classmethod
    def from_namespace(cls, args: argparse.Namespace, config: dict[str, Any]) -> "RunConfig":
        """Merge parsed flags over the loaded configuration; flags left unset defer to it."""

        def pick(name: str) -> Any:
            value = getattr(args, name, None)
            return config.get(name, DEFAULTS[name]) if value is None else value

        permutation = getattr(args, "permutation", None)
        threads = getattr(args, "threads", None) or resolve_threads(config)
        verbosity = 2 if getattr(args, "debug", False) else int(getattr(args, "verbose", False))
        return cls(
            command=args.command,
            input_path=getattr(args, "input", None),
            output_path=getattr(args, "output", None),
            alpha=getattr(args, "alpha", None),
            permutation=tuple(permutation) if permutation is not None else None,
            limit=pick("limit"),
            heuristic_budget=pick("heuristic_budget"),
            seed=pick("seed"),
            mode=pick("mode"),
            output_format=getattr(args, "format", None) or "json",
            threads=threads,
            svg_max_vertices=int(config.get("svg_max_vertices", DEFAULTS["svg_max_vertices"])),
            identify_colour_permutations=bool(
                config.get("identify_colour_permutations", False)
            ),
            verbosity=verbosity,
        )
