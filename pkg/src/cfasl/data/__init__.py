# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

from .dataset import FactorDataset
from .loaders import load_dataset
from .sampling import matching_rows, random_query, sample_with_fixed_factors
from .storage import load_dsprites, load_synthetic, save_synthetic
from .synthetic import SHAPE_NAMES, generate_synthetic, shape_mask, side_lengths

__all__ = [
    "SHAPE_NAMES",
    "FactorDataset",
    "generate_synthetic",
    "load_dataset",
    "load_dsprites",
    "load_synthetic",
    "matching_rows",
    "random_query",
    "sample_with_fixed_factors",
    "save_synthetic",
    "shape_mask",
    "side_lengths",
]
