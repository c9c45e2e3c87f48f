# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

import argparse
import os
import sys
from importlib.metadata import version as get_version
from pathlib import Path
from typing import Any

from ..exceptions import UsageError, check_optional_dependency


def get_package_version(package_name: str = "cfasl-core") -> str:
    try:
        version = get_version(package_name)
    except Exception:
        return "unknown"
    return version if version != "0.0.0" else "unknown"


def display_version() -> None:
    python_version = (
        f"{sys.version_info.major}.{sys.version_info.minor}.{sys.version_info.micro}"
    )
    print(f"CFASL version: {get_package_version()}")
    print(f"Torch version: {get_package_version('torch')}")
    print(f"Python version: {python_version}")
    print(f"Platform: {sys.platform}")

    extras = []
    if check_optional_dependency("PIL", "PNG export", "analysis", raise_error=False):
        extras.append("analysis")
    print(f"Installed extras: {', '.join(extras) if extras else 'none'}")


def setup_logging(verbose: bool) -> None:
    if verbose:
        os.environ["CFASL_LOG"] = "DEBUG"


def add_config_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--config", type=Path, help="TOML run configuration (CFASL_* env vars also apply)"
    )


def set_nested(target: dict[str, Any], dotted: str, value: Any) -> None:
    """set_nested(d, "objective.beta", 4.0) -> d["objective"]["beta"] = 4.0"""
    *parents, leaf = dotted.split(".")
    for key in parents:
        target = target.setdefault(key, {})
    target[leaf] = value


def collect_overrides(args: argparse.Namespace, mapping: dict[str, str]) -> dict[str, Any]:
    """Config overrides from CLI flags that were actually given.

    mapping: argparse dest -> dotted RunConfig field.
    """
    overrides: dict[str, Any] = {}
    for dest, field_name in mapping.items():
        value = getattr(args, dest, None)
        if value is not None:
            set_nested(overrides, field_name, value)
    return overrides


def parse_assignments(items: list[str] | None, flag: str) -> dict[str, str]:
    """["shape=1", "scale=0"] -> {"shape": "1", "scale": "0"}"""
    result = {}
    for item in items or []:
        key, sep, value = item.partition("=")
        if not sep or not key or not value:
            raise UsageError(f"{flag} expects NAME=VALUE, got '{item}'")
        result[key.strip()] = value.strip()
    return result
