# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

from cfasl.composition import (
    AttentionHeads,
    CompositeSymmetry,
    PairStatistics,
    compose,
    gumbel_switch,
)
from cfasl.data import FactorDataset, generate_synthetic, load_dsprites
from cfasl.equivariance import LossBreakdown, total_objective
from cfasl.exceptions import (
    CFASLError,
    ConfigurationError,
    CorruptArchiveError,
    DegenerateRepresentationError,
    InvalidArgumentError,
    NumericalError,
    UsageError,
    check_optional_dependency,
)
from cfasl.metrics import fvm, m_fvm
from cfasl.symmetry import GroupElement, SymmetryCodebook, matrix_exponential
from cfasl.training import RunConfig, Trainer, load_run_config
from cfasl.types import FactorQuery, MetricReport, ObjectiveConfig
from cfasl.vae import CFASLModel

__all__ = [
    # Symmetry
    "GroupElement",
    "SymmetryCodebook",
    "matrix_exponential",
    # Composition
    "AttentionHeads",
    "CompositeSymmetry",
    "PairStatistics",
    "compose",
    "gumbel_switch",
    # Model and objective
    "CFASLModel",
    "LossBreakdown",
    "ObjectiveConfig",
    "total_objective",
    # Data and metrics
    "FactorDataset",
    "FactorQuery",
    "MetricReport",
    "fvm",
    "generate_synthetic",
    "load_dsprites",
    "m_fvm",
    # Training
    "RunConfig",
    "Trainer",
    "load_run_config",
    # Exceptions
    "CFASLError",
    "ConfigurationError",
    "CorruptArchiveError",
    "DegenerateRepresentationError",
    "InvalidArgumentError",
    "NumericalError",
    "UsageError",
    "check_optional_dependency",
]
