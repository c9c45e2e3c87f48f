# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

from pathlib import Path
from typing import Literal

from pydantic import BaseModel, Field, field_validator, model_validator


class FactorQuery(BaseModel):
    """A set of factors held at fixed values while the rest vary."""

    fixed_factors: tuple[int, ...] = Field(default=())
    fixed_values: tuple[int, ...] = Field(default=())

    @field_validator("fixed_factors")
    @classmethod
    def _distinct(cls, v: tuple[int, ...]) -> tuple[int, ...]:
        if len(set(v)) != len(v):
            raise ValueError(f"fixed factor indices must be distinct, got {v}")
        if any(i < 0 for i in v):
            raise ValueError(f"fixed factor indices must be non-negative, got {v}")
        return v

    @model_validator(mode="after")
    def _matching_lengths(self) -> "FactorQuery":
        if len(self.fixed_factors) != len(self.fixed_values):
            raise ValueError(
                "fixed_factors and fixed_values must have the same length "
                f"({len(self.fixed_factors)} != {len(self.fixed_values)})"
            )
        return self

    @classmethod
    def from_mapping(cls, mapping: dict[int, int]) -> "FactorQuery":
        items = sorted(mapping.items())
        return cls(
            fixed_factors=tuple(k for k, _ in items),
            fixed_values=tuple(v for _, v in items),
        )

    def as_mapping(self) -> dict[int, int]:
        return dict(zip(self.fixed_factors, self.fixed_values))


class SyntheticGrid(BaseModel):
    """Factor grid for the rendered shapes dataset.

    A field set to None drops the factor; the shape then stays a square and the
    scale stays at its largest value.
    """

    positions_x: int = Field(default=8, ge=2)
    positions_y: int = Field(default=8, ge=2)
    scales: int | None = Field(default=4, ge=2)
    shapes: int | None = Field(default=None, ge=2, le=3)


class SyntheticManifest(BaseModel):
    """JSON manifest stored next to the flat binaries of a synthetic dataset."""

    factor_names: list[str]
    factor_sizes: list[int]
    image_size: int
    channels: int = 1
    num_images: int
    seed: int
    images_file: str
    factors_file: str
    images_dtype: Literal["<f4"] = "<f4"
    factors_dtype: Literal["<i4"] = "<i4"


class DatasetSpec(BaseModel):
    """Where the training / evaluation images come from."""

    kind: Literal["synthetic", "synthetic_dir", "dsprites"] = "synthetic"
    path: Path | None = None
    grid: SyntheticGrid = Field(default_factory=SyntheticGrid)
    image_size: Literal[16, 32, 64] = 16
    seed: int = 0
    subsample: float | None = Field(default=None, gt=0.0, le=1.0)

    @model_validator(mode="after")
    def _path_required(self) -> "DatasetSpec":
        if self.kind != "synthetic" and self.path is None:
            raise ValueError(f"dataset kind '{self.kind}' requires a path")
        return self
