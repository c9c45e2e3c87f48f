# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

import os

import pytest
import torch

from cfasl.data import FactorDataset, generate_synthetic
from cfasl.training import RunConfig
from cfasl.types import SyntheticGrid
from tests.helpers import encoded_factor_dataset


@pytest.fixture(autouse=True)
def clean_env():
    """Clean CFASL_* environment variables before and after each test."""
    original_values = {k: v for k, v in os.environ.items() if k.startswith("CFASL_")}
    for var in original_values:
        del os.environ[var]

    yield

    for var in [k for k in os.environ if k.startswith("CFASL_")]:
        del os.environ[var]
    os.environ.update(original_values)


@pytest.fixture(autouse=True)
def seeded_torch():
    """Deterministic global torch RNG for code paths without an explicit generator."""
    torch.manual_seed(0)


@pytest.fixture
def generator():
    return torch.Generator().manual_seed(1234)


@pytest.fixture
def small_synthetic() -> FactorDataset:
    """8x8 positions x 2 scales at 16 px: 128 images."""
    return generate_synthetic(SyntheticGrid(scales=2), image_size=16, seed=0)


@pytest.fixture
def factor_dataset() -> FactorDataset:
    """Four factors of size 4, exhaustive (256 rows)."""
    return encoded_factor_dataset((4, 4, 4, 4))


@pytest.fixture
def tiny_config(tmp_path) -> RunConfig:
    """A run small enough to train a few steps on CPU in well under a second."""
    return RunConfig(
        latent_dim=3,
        elements_per_section=2,
        batch_size=8,
        steps=3,
        seed=7,
        log_every=1,
        checkpoint_every=2,
        output_dir=tmp_path / "run",
        dataset={"kind": "synthetic", "grid": {"scales": 2}, "image_size": 16},
    )
