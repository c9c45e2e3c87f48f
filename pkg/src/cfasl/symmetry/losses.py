# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------
"""Codebook regularizers.

All losses take the latent z as a single vector (D,) or a batch (B, D). For a
batch the per-sample loss is averaged, so the value matches the single-vector
case when every row is the same.
"""

import itertools
from typing import Literal

import torch

from ..constants import (
    COSINE_FLOOR,
    DEGENERATE_NORM,
    DEFAULT_PAIR_BUDGET,
    DEFAULT_PERPENDICULAR_PAIRS,
    EXHAUSTIVE_PAIR_LIMIT,
)
from ..exceptions import InvalidArgumentError
from .codebook import SymmetryCodebook

ParallelForm = Literal["neg_log_cos"]
PerpendicularForm = Literal["cos_sq", "abs_cos"]


def _batched(changes: torch.Tensor) -> torch.Tensor:
    # (S, SS, D) -> (1, S, SS, D)
    return changes.unsqueeze(0) if changes.dim() == 3 else changes


def _masked_cosine(
    a: torch.Tensor, b: torch.Tensor
) -> tuple[torch.Tensor, torch.Tensor]:
    """Cosine of paired vectors along the last axis plus a validity mask.

    Pairs where either vector has norm below DEGENERATE_NORM are flagged
    invalid and get a cosine of 0 with no gradient.
    """
    norm_a = torch.linalg.vector_norm(a, dim=-1)
    norm_b = torch.linalg.vector_norm(b, dim=-1)
    valid = (norm_a >= DEGENERATE_NORM) & (norm_b >= DEGENERATE_NORM)
    safe = torch.where(valid, norm_a * norm_b, torch.ones_like(norm_a))
    cosine = (a * b).sum(dim=-1) / safe
    return torch.where(valid, cosine, torch.zeros_like(cosine)), valid


def same_section_pairs(
    elements_per_section: int,
    pair_budget: int,
    generator: torch.Generator | None = None,
) -> torch.Tensor:
    """Unordered (j, k) element pairs, j < k, as a (P, 2) index tensor.

    Exhaustive when the section has at most EXHAUSTIVE_PAIR_LIMIT elements,
    otherwise pair_budget pairs are drawn uniformly with replacement.
    """
    if pair_budget < 1:
        raise InvalidArgumentError(f"pair_budget must be >= 1, got {pair_budget}")
    if elements_per_section < 2:
        return torch.empty(0, 2, dtype=torch.long)
    if elements_per_section <= EXHAUSTIVE_PAIR_LIMIT:
        pairs = list(itertools.combinations(range(elements_per_section), 2))
        return torch.tensor(pairs, dtype=torch.long)

    first = torch.randint(elements_per_section, (pair_budget,), generator=generator)
    offset = torch.randint(
        1, elements_per_section, (pair_budget,), generator=generator
    )
    second = (first + offset) % elements_per_section
    return torch.stack(
        [torch.minimum(first, second), torch.maximum(first, second)], dim=1
    )


def parallel_loss(
    codebook: SymmetryCodebook,
    z: torch.Tensor,
    pair_budget: int = DEFAULT_PAIR_BUDGET,
    generator: torch.Generator | None = None,
    form: ParallelForm = "neg_log_cos",
) -> torch.Tensor:
    """Same-section latent changes should be parallel.

    sum over sections and pairs (j, k) of -log(clamp(cos(dz_j, dz_k), eps, 1)).
    """
    if form != "neg_log_cos":
        raise InvalidArgumentError(f"unknown parallel_form '{form}'")
    pairs = same_section_pairs(codebook.elements_per_section, pair_budget, generator)
    changes = _batched(codebook.latent_changes(z))
    if pairs.numel() == 0:
        return changes.sum() * 0.0

    first = changes[:, :, pairs[:, 0], :]
    second = changes[:, :, pairs[:, 1], :]
    cosine, valid = _masked_cosine(first, second)
    terms = -torch.log(cosine.clamp(min=COSINE_FLOOR, max=1.0))
    terms = torch.where(valid, terms, torch.zeros_like(terms))
    return terms.sum(dim=(1, 2)).mean()


def perpendicular_loss(
    codebook: SymmetryCodebook,
    z: torch.Tensor,
    pairs_per_step: int = DEFAULT_PERPENDICULAR_PAIRS,
    generator: torch.Generator | None = None,
    form: PerpendicularForm = "cos_sq",
    exhaustive: bool = False,
) -> torch.Tensor:
    """Latent changes of different sections should be orthogonal.

    For every unordered section pair (i, k), pairs_per_step element pairs
    (j, l) are sampled and cos^2(dz_j^i, dz_l^k) is summed. With
    exhaustive=True all |SS|^2 element pairs are used instead.
    """
    if codebook.num_sections < 2:
        raise InvalidArgumentError(
            f"perpendicular loss needs at least 2 sections, got {codebook.num_sections}"
        )
    if form not in ("cos_sq", "abs_cos"):
        raise InvalidArgumentError(f"unknown perp_form '{form}'")
    if pairs_per_step < 1:
        raise InvalidArgumentError(f"pairs_per_step must be >= 1, got {pairs_per_step}")

    changes = _batched(codebook.latent_changes(z))
    sections = torch.tensor(
        list(itertools.combinations(range(codebook.num_sections), 2)), dtype=torch.long
    )
    size = codebook.elements_per_section
    if exhaustive:
        grid = torch.cartesian_prod(torch.arange(size), torch.arange(size))
        elem_i = grid[:, 0].repeat(len(sections), 1)
        elem_k = grid[:, 1].repeat(len(sections), 1)
    else:
        shape = (len(sections), pairs_per_step)
        elem_i = torch.randint(size, shape, generator=generator)
        elem_k = torch.randint(size, shape, generator=generator)

    first = changes[:, sections[:, 0, None], elem_i, :]
    second = changes[:, sections[:, 1, None], elem_k, :]
    cosine, valid = _masked_cosine(first, second)
    terms = cosine.square() if form == "cos_sq" else cosine.abs()
    terms = torch.where(valid, terms, torch.zeros_like(terms))
    return terms.sum(dim=(1, 2)).mean()


def sparsity_loss(codebook: SymmetryCodebook, z: torch.Tensor) -> torch.Tensor:
    """Each latent change should move a single coordinate.

    sum_{i,j} (sum_k dz_k^2)^2 - (max_k dz_k^2)^2; zero iff every change is one-hot.
    """
    changes = _batched(codebook.latent_changes(z))
    squared = changes.square()
    total = squared.sum(dim=-1).square()
    peak = squared.max(dim=-1).values.square()
    return (total - peak).sum(dim=(1, 2)).mean()


def commutativity_loss(codebook: SymmetryCodebook) -> torch.Tensor:
    """sum over ordered generator pairs of ||[g_a, g_b]||_F^2."""
    flat = codebook.generators.reshape(-1, codebook.latent_dim, codebook.latent_dim)
    if flat.shape[0] < 2:
        return flat.sum() * 0.0
    products = torch.einsum("aij,bjk->abik", flat, flat)
    commutators = products - products.transpose(0, 1)
    return commutators.square().sum()
