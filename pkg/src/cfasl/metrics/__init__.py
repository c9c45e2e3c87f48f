# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

from .protocol import (
    GlobalStatistics,
    Representation,
    global_statistics,
    normalize_latents,
    run_trials,
    trial_generators,
)
from .scores import METRICS, collect_votes, evaluate_metric, fvm, m_fvm, modal_accuracy

__all__ = [
    "METRICS",
    "GlobalStatistics",
    "Representation",
    "collect_votes",
    "evaluate_metric",
    "fvm",
    "global_statistics",
    "m_fvm",
    "modal_accuracy",
    "normalize_latents",
    "run_trials",
    "trial_generators",
]
