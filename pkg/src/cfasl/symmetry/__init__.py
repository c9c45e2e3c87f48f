# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

from .codebook import (
    GroupElement,
    SymmetryCodebook,
    apply_symmetry,
    init_codebook,
    inverse_symmetry,
    latent_change,
)
from .expm import matrix_exponential, taylor_exponential
from .losses import (
    commutativity_loss,
    parallel_loss,
    perpendicular_loss,
    same_section_pairs,
    sparsity_loss,
)

__all__ = [
    "GroupElement",
    "SymmetryCodebook",
    "apply_symmetry",
    "commutativity_loss",
    "init_codebook",
    "inverse_symmetry",
    "latent_change",
    "matrix_exponential",
    "parallel_loss",
    "perpendicular_loss",
    "same_section_pairs",
    "sparsity_loss",
    "taylor_exponential",
]
