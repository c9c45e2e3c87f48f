# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

from .checkpoint import (
    Checkpoint,
    checkpoint_path,
    latest_checkpoint,
    load_checkpoint,
    save_checkpoint,
)
from .config import RunConfig, config_from_snapshot, load_run_config
from .tracking import LOG_COLUMNS, LossLog, LossRow
from .trainer import Trainer, TrainResult, build_model, restore_model

__all__ = [
    "LOG_COLUMNS",
    "Checkpoint",
    "LossLog",
    "LossRow",
    "RunConfig",
    "TrainResult",
    "Trainer",
    "build_model",
    "checkpoint_path",
    "config_from_snapshot",
    "latest_checkpoint",
    "load_checkpoint",
    "load_run_config",
    "restore_model",
    "save_checkpoint",
]
