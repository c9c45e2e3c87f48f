# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

from .models import (
    DatasetSpec,
    FactorQuery,
    MetricReport,
    ObjectiveConfig,
    SpeedupReport,
    SyntheticGrid,
    SyntheticManifest,
)

__all__ = [
    "DatasetSpec",
    "FactorQuery",
    "MetricReport",
    "ObjectiveConfig",
    "SpeedupReport",
    "SyntheticGrid",
    "SyntheticManifest",
]
