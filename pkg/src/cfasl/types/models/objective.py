# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

from typing import Literal

from pydantic import BaseModel, Field

from ...constants import DEFAULT_BETA, DEFAULT_TC_ALPHA, DEFAULT_TC_GAMMA


class ObjectiveConfig(BaseModel):
    """Base VAE objective the symmetry losses are added to."""

    kind: Literal["beta_vae", "beta_tcvae"] = Field(
        default="beta_vae", description="Base VAE objective"
    )
    beta: float = Field(default=DEFAULT_BETA, ge=0.0, description="KL / TC weight")
    alpha: float = Field(
        default=DEFAULT_TC_ALPHA, description="Mutual-information weight (beta_tcvae)"
    )
    gamma: float = Field(
        default=DEFAULT_TC_GAMMA, description="Dimension-wise KL weight (beta_tcvae)"
    )
    dataset_size: int | None = Field(
        default=None,
        ge=1,
        description="Dataset size N for minibatch-weighted sampling (beta_tcvae)",
    )
    likelihood: Literal["bernoulli", "continuous_bernoulli"] = Field(
        default="bernoulli", description="Decoder likelihood"
    )
