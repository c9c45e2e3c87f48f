# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

from .losses import decoder_equiv_loss, encoder_equiv_loss
from .objective import (
    ABLATION_COLUMNS,
    ABLATION_ROWS,
    LOSS_TERMS,
    LossBreakdown,
    ablation_mask_from_row,
    full_mask,
    total_objective,
)

__all__ = [
    "ABLATION_COLUMNS",
    "ABLATION_ROWS",
    "LOSS_TERMS",
    "LossBreakdown",
    "ablation_mask_from_row",
    "decoder_equiv_loss",
    "encoder_equiv_loss",
    "full_mask",
    "total_objective",
]
