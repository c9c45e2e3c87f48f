# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

from .dataset import DatasetSpec, FactorQuery, SyntheticGrid, SyntheticManifest
from .objective import ObjectiveConfig
from .report import MetricReport, SpeedupReport

__all__ = [
    "DatasetSpec",
    "FactorQuery",
    "MetricReport",
    "ObjectiveConfig",
    "SpeedupReport",
    "SyntheticGrid",
    "SyntheticManifest",
]
