# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

import importlib.util
from pathlib import Path


class CFASLError(Exception):
    pass


class InvalidArgumentError(CFASLError, ValueError):
    pass


class ConfigurationError(CFASLError):
    pass


class UsageError(CFASLError):
    pass


class DegenerateRepresentationError(CFASLError):
    pass


class CorruptArchiveError(CFASLError):
    def __init__(self, message: str, path: str | Path | None = None):
        super().__init__(message)
        self.message = message
        self.path = Path(path) if path is not None else None

    def __str__(self) -> str:
        if self.path is not None:
            return f"Corrupt archive [{self.path}]: {self.message}"
        return f"Corrupt archive: {self.message}"


class NumericalError(CFASLError):
    def __init__(
        self,
        message: str,
        loss_name: str | None = None,
        step: int | None = None,
        batch_indices: list[int] | None = None,
        dump_path: Path | None = None,
    ):
        """Initialize NumericalError.

        Args:
            message: Human-readable error message
            loss_name: Name of the first non-finite loss term
            step: Training step at which the value was observed
            batch_indices: Dataset rows of the offending mini-batch
            dump_path: Diagnostic dump written before aborting
        """
        super().__init__(message)
        self.message = message
        self.loss_name = loss_name
        self.step = step
        self.batch_indices = batch_indices or []
        self.dump_path = dump_path

    def __str__(self) -> str:
        if self.loss_name:
            return f"Numerical failure [{self.loss_name} @ step {self.step}]: {self.message}"
        return f"Numerical failure: {self.message}"


def check_optional_dependency(
    name: str,
    feature: str,
    extra: str,
    raise_error: bool = True,
) -> bool:
    """Check if an optional dependency is available, raise helpful error if not.

    The caller keeps a regular import statement afterward so type hints and
    navigation keep working.

    Args:
        name: Module name to check (e.g., "PIL")
        feature: Feature name for error message (e.g., "PNG export")
        extra: extras_require key (e.g., "analysis")
        raise_error: Whether to raise an ImportError if the module is not installed

    Raises:
        ImportError: If the module is not installed, with installation instructions
    """
    spec = importlib.util.find_spec(name)
    if spec is not None:
        return True

    msg = (
        f"{feature} requires {extra} dependencies. "
        f"Install with: pip install cfasl-core[{extra}]"
    )
    if raise_error:
        raise ImportError(msg)
    return False
