# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

from typing import Any

from pydantic import BaseModel, Field

from ...constants import AGGREGATE_MODAL_SUM


class MetricReport(BaseModel):
    """Result of one disentanglement metric run."""

    name: str
    score: float = Field(ge=0.0, le=1.0)
    k: int | None = None
    trials: int = Field(ge=1)
    prune_threshold: float
    votes_per_trial: int = Field(ge=1)
    seed: int
    aggregate: str | None = Field(default=None)
    active_dims: list[int] = Field(default_factory=list)
    config: dict[str, Any] | None = Field(
        default=None, description="RunConfig snapshot of the evaluated model"
    )

    @classmethod
    def for_multi_factor(cls, **kwargs: Any) -> "MetricReport":
        return cls(aggregate=AGGREGATE_MODAL_SUM, **kwargs)


class SpeedupReport(BaseModel):
    """Wall-clock comparison of sum-form and product-form composition."""

    codebook_size: int
    latent_dim: int
    repeats: int
    sum_form_seconds: float
    product_form_seconds: float
    sum_form_exponentials: int = 1
    product_form_exponentials: int
    max_abs_difference: float

    @property
    def speedup(self) -> float:
        if self.sum_form_seconds <= 0:
            return float("inf")
        return self.product_form_seconds / self.sum_form_seconds
