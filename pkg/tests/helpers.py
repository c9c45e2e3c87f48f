# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

import torch

from cfasl.data import FactorDataset
from cfasl.symmetry import SymmetryCodebook


def diagonal_codebook(diagonals: list[list[list[float]]]) -> SymmetryCodebook:
    """Codebook whose generators are diag(v) for v in diagonals[section][element]."""
    values = torch.tensor(diagonals, dtype=torch.float64)
    sections, elements, dim = values.shape
    codebook = SymmetryCodebook(sections, elements, dim, scale=0.0, dtype=torch.float64)
    with torch.no_grad():
        codebook.generators.copy_(torch.diag_embed(values))
    return codebook


def codebook_from(generators: torch.Tensor) -> SymmetryCodebook:
    """Codebook holding the given (S, SS, D, D) generators."""
    sections, elements, dim, _ = generators.shape
    codebook = SymmetryCodebook(
        sections, elements, dim, scale=0.0, dtype=generators.dtype
    )
    with torch.no_grad():
        codebook.generators.copy_(generators)
    return codebook


def encoded_factor_dataset(factor_sizes: tuple[int, ...]) -> FactorDataset:
    """Exhaustive dataset whose 1 x F 'image' stores factor / size in [0, 1)."""
    grids = torch.meshgrid(*(torch.arange(size) for size in factor_sizes), indexing="ij")
    factors = torch.stack([g.flatten() for g in grids], dim=1)
    sizes = torch.tensor(factor_sizes, dtype=torch.float32)
    images = (factors.float() / sizes).reshape(len(factors), 1, 1, len(factor_sizes))
    names = [f"f{i}" for i in range(len(factor_sizes))]
    return FactorDataset(images, factors, factor_sizes, names)
