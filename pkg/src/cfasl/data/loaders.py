# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

import torch

from ..exceptions import InvalidArgumentError
from ..types import DatasetSpec
from .dataset import FactorDataset
from .storage import load_dsprites, load_synthetic
from .synthetic import generate_synthetic


def load_dataset(spec: DatasetSpec) -> FactorDataset:
    """Materialize the dataset a run is configured with."""
    if spec.kind == "synthetic":
        dataset = generate_synthetic(spec.grid, spec.image_size, spec.seed)
    elif spec.kind == "synthetic_dir":
        dataset = load_synthetic(spec.path)
    elif spec.kind == "dsprites":
        dataset = load_dsprites(spec.path)
    else:
        raise InvalidArgumentError(f"Unknown dataset kind: {spec.kind}")

    if spec.subsample is not None and spec.subsample < 1.0:
        generator = torch.Generator().manual_seed(spec.seed)
        dataset = dataset.subsample(spec.subsample, generator)
    return dataset
