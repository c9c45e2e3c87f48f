# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

from .composite import (
    CompositeSymmetry,
    compose,
    compose_product_form,
    measure_composition_speedup,
)
from .heads import (
    AttentionHeads,
    ChangeTarget,
    PairStatistics,
    change_target,
    element_attention,
    prediction_loss,
)
from .switch import gumbel_softmax_sample, gumbel_switch, hard_switch, sample_gumbel

__all__ = [
    "AttentionHeads",
    "ChangeTarget",
    "CompositeSymmetry",
    "PairStatistics",
    "change_target",
    "compose",
    "compose_product_form",
    "element_attention",
    "gumbel_softmax_sample",
    "gumbel_switch",
    "hard_switch",
    "measure_composition_speedup",
    "prediction_loss",
    "sample_gumbel",
]
