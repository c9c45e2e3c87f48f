# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

import math
from collections.abc import Sequence

import torch
from torch.utils.data import Dataset

from ..exceptions import InvalidArgumentError
from ..logging import get_logger

logger = get_logger("data")


class FactorDataset(Dataset):
    """Images with integer ground-truth factors, one factor row per image.

    Images may be held as uint8 {0, 1} or float in [0, 1]; they are returned
    as float32 in [0, 1].
    """

    def __init__(
        self,
        images: torch.Tensor,
        factors: torch.Tensor,
        factor_sizes: Sequence[int],
        factor_names: Sequence[str],
        warnings: Sequence[str] = (),
        seed: int = 0,
    ):
        if images.dim() != 4:
            raise InvalidArgumentError(
                f"images must be (N, C, H, W), got {tuple(images.shape)}"
            )
        if factors.dim() != 2 or factors.shape[0] != images.shape[0]:
            raise InvalidArgumentError(
                f"factors must be (N, F) with N={images.shape[0]}, "
                f"got {tuple(factors.shape)}"
            )
        if len(factor_sizes) != factors.shape[1] or len(factor_names) != len(factor_sizes):
            raise InvalidArgumentError(
                "factor_sizes and factor_names must have one entry per factor column"
            )
        sizes = torch.tensor(list(factor_sizes), dtype=torch.long)
        factors = factors.long()
        if factors.numel() and ((factors < 0).any() or (factors >= sizes).any()):
            raise InvalidArgumentError("factor values out of range of factor_sizes")

        self.images = images
        self.factors = factors
        self.factor_sizes = tuple(int(size) for size in factor_sizes)
        self.factor_names = tuple(factor_names)
        self.warnings = list(warnings)
        self.seed = seed

        # Mixed-radix code of each row; the last factor varies fastest
        strides = [1] * len(self.factor_sizes)
        for index in range(len(self.factor_sizes) - 2, -1, -1):
            strides[index] = strides[index + 1] * self.factor_sizes[index + 1]
        self._strides = torch.tensor(strides, dtype=torch.long)
        codes = (factors * self._strides).sum(dim=1)
        self._row_of_code = torch.full((math.prod(self.factor_sizes),), -1, dtype=torch.long)
        self._row_of_code[codes] = torch.arange(len(codes))
        self._unique = int((self._row_of_code >= 0).sum()) == len(codes)

    def __len__(self) -> int:
        return self.images.shape[0]

    def __getitem__(self, index: int) -> tuple[torch.Tensor, torch.Tensor]:
        return self._to_float(self.images[index]), self.factors[index]

    @staticmethod
    def _to_float(images: torch.Tensor) -> torch.Tensor:
        if images.dtype == torch.uint8:
            return images.to(torch.float32)
        return images.to(torch.float32).clamp(0.0, 1.0)

    @property
    def num_factors(self) -> int:
        return len(self.factor_sizes)

    @property
    def channels(self) -> int:
        return self.images.shape[1]

    @property
    def image_size(self) -> int:
        return self.images.shape[-1]

    @property
    def is_exhaustive(self) -> bool:
        """Every factor combination occurs exactly once."""
        return self._unique and len(self) == math.prod(self.factor_sizes)

    def get_images(self, indices: torch.Tensor | Sequence[int]) -> torch.Tensor:
        return self._to_float(self.images[torch.as_tensor(indices, dtype=torch.long)])

    def all_images(self) -> torch.Tensor:
        return self._to_float(self.images)

    def factor_index(self, values: Sequence[int] | torch.Tensor) -> int:
        """Row holding the given factor combination."""
        values = torch.as_tensor(values, dtype=torch.long)
        if values.shape != (self.num_factors,):
            raise InvalidArgumentError(
                f"expected {self.num_factors} factor values, got {tuple(values.shape)}"
            )
        sizes = torch.tensor(self.factor_sizes)
        if (values < 0).any() or (values >= sizes).any():
            raise InvalidArgumentError(f"factor values {values.tolist()} out of range")
        row = int(self._row_of_code[(values * self._strides).sum()])
        if row < 0:
            raise InvalidArgumentError(f"no image with factors {values.tolist()}")
        return row

    def subset(self, rows: torch.Tensor) -> "FactorDataset":
        return FactorDataset(
            self.images[rows],
            self.factors[rows],
            self.factor_sizes,
            self.factor_names,
            self.warnings,
            self.seed,
        )

    def subsample(
        self, fraction: float, generator: torch.Generator | None = None
    ) -> "FactorDataset":
        """Random subset of about fraction * N rows covering every factor value."""
        if not 0.0 < fraction <= 1.0:
            raise InvalidArgumentError(f"fraction must be in (0, 1], got {fraction}")
        count = max(1, math.ceil(fraction * len(self)))
        order = torch.randperm(len(self), generator=generator)
        keep = torch.zeros(len(self), dtype=torch.bool)
        keep[order[:count]] = True

        added = 0
        for column, size in enumerate(self.factor_sizes):
            present = torch.zeros(size, dtype=torch.bool)
            present[self.factors[keep, column]] = True
            for value in torch.nonzero(~present).flatten().tolist():
                candidates = torch.nonzero(self.factors[:, column] == value).flatten()
                pick = torch.randint(len(candidates), (1,), generator=generator)
                keep[candidates[pick]] = True
                added += 1
        if added:
            logger.debug(f"Subsample added {added} rows to cover every factor value")
        rows = torch.nonzero(keep).flatten()
        logger.info(f"Subsampled {len(rows)} of {len(self)} images (fraction={fraction})")
        return self.subset(rows)
