# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

from dataclasses import dataclass

import torch

from ..exceptions import InvalidArgumentError


@dataclass(frozen=True)
class PairBatch:
    """Two disjoint halves of a mini-batch, paired by position.

    first_indices / second_indices are row positions into the source batch.
    """

    first_half: torch.Tensor
    second_half: torch.Tensor
    first_indices: torch.Tensor
    second_indices: torch.Tensor

    def __len__(self) -> int:
        return self.first_half.shape[0]


def make_pair_batch(
    batch: torch.Tensor, generator: torch.Generator | None = None
) -> PairBatch:
    """Split a (B, C, H, W) batch into B/2 random pairs without replacement."""
    size = batch.shape[0]
    if size < 2 or size % 2:
        raise InvalidArgumentError(f"pair batching needs an even batch >= 2, got {size}")
    order = torch.randperm(size, generator=generator)
    first, second = order[: size // 2], order[size // 2 :]
    return PairBatch(
        first_half=batch[first],
        second_half=batch[second],
        first_indices=first,
        second_indices=second,
    )
