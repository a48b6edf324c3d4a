"""
Configuration loading.

Settings come from, in decreasing priority: command-line flags, the
INVOLUTE_SEED environment variable (seed only), an optional JSON config
file, and the built-in defaults.
"""

import json
import os
import sys
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from colorama import Fore

from .errors import InputError

CONFIG_FILE = "involute.json"
SEED_ENV = "INVOLUTE_SEED"
FORMATS = ("json", "text")

DEFAULT_CONFIG: Dict[str, Any] = {
    "seed": 0,
    "sample_budget": 1000,
    "format": None,
    "instances": {},
}


@dataclass
class CliConfig:
    """Resolved settings for one CLI invocation."""
    command: str
    seed: int = 0
    sample_budget: int = 1000
    format: str = "json"
    instances: Dict[str, List[str]] = field(default_factory=dict)
    config_path: Optional[str] = None


def load_config(config_file: str = None) -> Dict[str, Any]:
    """Load configuration from a JSON file, falling back to defaults."""
    config_path = config_file or CONFIG_FILE
    config = dict(DEFAULT_CONFIG)

    if not os.path.exists(config_path):
        return config

    try:
        with open(config_path, 'r') as f:
            loaded = json.load(f)
    except Exception as e:
        print(f"{Fore.RED}Error loading config file: {str(e)}{Fore.RESET}", file=sys.stderr)
        return config

    if not isinstance(loaded, dict):
        print(f"{Fore.RED}Ignoring config file {config_path}: not a JSON object{Fore.RESET}", file=sys.stderr)
        return config

    config.update({k: v for k, v in loaded.items() if k in DEFAULT_CONFIG})
    return config


def seed_from_env() -> Optional[int]:
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw.strip() == "":
        return None
    try:
        return int(raw, 0)
    except ValueError:
        print(f"{Fore.YELLOW}Ignoring {SEED_ENV}={raw!r}: not an integer{Fore.RESET}", file=sys.stderr)
        return None


def _config_int(config: Dict[str, Any], key: str, default: int) -> int:
    value = config.get(key, default)
    if value is None:
        return default
    if not isinstance(value, int) or isinstance(value, bool):
        raise InputError(f"config {key} must be an integer, got {value!r}")
    return value


def _config_instances(config: Dict[str, Any]) -> Dict[str, List[str]]:
    instances = config.get("instances") or {}
    if not isinstance(instances, dict) or not all(
        isinstance(v, list) and all(isinstance(i, str) for i in v) for v in instances.values()
    ):
        raise InputError("config instances must map suite names to lists of instance names")
    return dict(instances)


def resolve_settings(command: str, args: Any, config: Dict[str, Any], default_format: str = "json") -> CliConfig:
    """Combine flags, environment and config file into a CliConfig; bad config values raise InputError."""
    seed = getattr(args, "seed", None)
    if seed is None:
        seed = seed_from_env()
    if seed is None:
        seed = _config_int(config, "seed", 0)

    budget = getattr(args, "budget", None)
    if budget is None:
        budget = _config_int(config, "sample_budget", 1000)

    fmt = getattr(args, "format", None) or config.get("format") or default_format
    if fmt not in FORMATS:
        raise InputError(f"format must be one of {', '.join(FORMATS)}, got {fmt!r}")

    return CliConfig(
        command=command,
        seed=seed & 0xFFFFFFFFFFFFFFFF,
        sample_budget=max(1, budget),
        format=fmt,
        instances=_config_instances(config),
        config_path=getattr(args, "config", None),
    )
