# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

import torch

from ..exceptions import InvalidArgumentError
from ..types import FactorQuery
from .dataset import FactorDataset


def _validate_query(ds: FactorDataset, query: FactorQuery) -> None:
    for factor, value in query.as_mapping().items():
        if factor >= ds.num_factors:
            raise InvalidArgumentError(
                f"factor index {factor} out of range for {ds.num_factors} factors"
            )
        if not 0 <= value < ds.factor_sizes[factor]:
            raise InvalidArgumentError(
                f"value {value} out of range for factor '{ds.factor_names[factor]}' "
                f"(size {ds.factor_sizes[factor]})"
            )


def matching_rows(ds: FactorDataset, query: FactorQuery) -> torch.Tensor:
    """Indices of rows whose fixed factors equal the query values."""
    _validate_query(ds, query)
    mask = torch.ones(len(ds), dtype=torch.bool)
    for factor, value in query.as_mapping().items():
        mask &= ds.factors[:, factor] == value
    return torch.nonzero(mask).flatten()


def sample_with_fixed_factors(
    ds: FactorDataset,
    query: FactorQuery,
    n: int,
    generator: torch.Generator | None = None,
) -> tuple[torch.Tensor, torch.Tensor]:
    """Draw n rows (with replacement) whose fixed factors match the query.

    Returns:
        Tuple of (images (n, C, H, W) float32, factor rows (n, F))
    """
    if n < 1:
        raise InvalidArgumentError(f"n must be >= 1, got {n}")
    rows = matching_rows(ds, query)
    if len(rows) == 0:
        raise InvalidArgumentError(f"no rows match {query.as_mapping()}")
    picks = rows[torch.randint(len(rows), (n,), generator=generator)]
    return ds.get_images(picks), ds.factors[picks]


def random_query(
    ds: FactorDataset, num_fixed: int, generator: torch.Generator | None = None
) -> FactorQuery:
    """Pick num_fixed distinct factors and a uniform value for each."""
    if not 1 <= num_fixed <= ds.num_factors:
        raise InvalidArgumentError(
            f"num_fixed must be in [1, {ds.num_factors}], got {num_fixed}"
        )
    factors = torch.randperm(ds.num_factors, generator=generator)[:num_fixed]
    factors = sorted(factors.tolist())
    values = [
        int(torch.randint(ds.factor_sizes[f], (1,), generator=generator))
        for f in factors
    ]
    return FactorQuery(fixed_factors=tuple(factors), fixed_values=tuple(values))
