# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

import pickle
import zipfile
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import torch

from ..constants import CHECKPOINT_PREFIX, CHECKPOINT_SUFFIX
from ..exceptions import CorruptArchiveError
from ..logging import get_logger
from .config import RunConfig, config_from_snapshot

logger = get_logger("training.checkpoint")

_REQUIRED_KEYS = ("model", "optimizer", "config", "step", "generator_state")
_ENCODER_INPUT_WEIGHT = "encoder.features.0.weight"


@dataclass
class Checkpoint:
    """Everything needed to resume a run bit-for-bit on the same platform."""

    model_state: dict[str, torch.Tensor]
    optimizer_state: dict[str, Any]
    config: RunConfig
    step: int
    generator_state: torch.Tensor
    path: Path | None = None

    @property
    def channels(self) -> int:
        """Image channels the stored encoder was built for."""
        weight = self.model_state.get(_ENCODER_INPUT_WEIGHT)
        return int(weight.shape[1]) if weight is not None else 1


def checkpoint_path(output_dir: str | Path, step: int) -> Path:
    return Path(output_dir) / f"{CHECKPOINT_PREFIX}{step}{CHECKPOINT_SUFFIX}"


def save_checkpoint(
    path: str | Path,
    model: torch.nn.Module,
    optimizer: torch.optim.Optimizer,
    config: RunConfig,
    step: int,
    generator: torch.Generator,
) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    torch.save(
        {
            "model": model.state_dict(),
            "optimizer": optimizer.state_dict(),
            "config": config.snapshot(),
            "step": step,
            "generator_state": generator.get_state(),
        },
        path,
    )
    logger.debug(f"Saved checkpoint at step {step} to {path}")
    return path


def load_checkpoint(path: str | Path) -> Checkpoint:
    """Read a checkpoint written by save_checkpoint.

    Raises:
        FileNotFoundError: If the file does not exist
        CorruptArchiveError: If the file is unreadable or incomplete
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"checkpoint not found: {path}")
    try:
        payload = torch.load(path, map_location="cpu", weights_only=True)
    except (RuntimeError, EOFError, pickle.UnpicklingError, zipfile.BadZipFile) as e:
        raise CorruptArchiveError(f"unreadable checkpoint: {e}", path) from e

    if not isinstance(payload, dict):
        raise CorruptArchiveError("checkpoint is not a mapping", path)
    missing = [key for key in _REQUIRED_KEYS if key not in payload]
    if missing:
        raise CorruptArchiveError(f"checkpoint missing {', '.join(missing)}", path)

    return Checkpoint(
        model_state=payload["model"],
        optimizer_state=payload["optimizer"],
        config=config_from_snapshot(payload["config"]),
        step=int(payload["step"]),
        generator_state=payload["generator_state"],
        path=path,
    )


def latest_checkpoint(output_dir: str | Path) -> Path | None:
    """Highest-step checkpoint in a run directory."""
    candidates = []
    for candidate in Path(output_dir).glob(f"{CHECKPOINT_PREFIX}*{CHECKPOINT_SUFFIX}"):
        step = candidate.name[len(CHECKPOINT_PREFIX) : -len(CHECKPOINT_SUFFIX)]
        if step.isdigit():
            candidates.append((int(step), candidate))
    return max(candidates)[1] if candidates else None
