# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

from dataclasses import dataclass

import numpy as np
import torch

from ..constants import DEFAULT_EIGEN_SAMPLES, DEFAULT_SCATTER_SAMPLES, RANK_TOLERANCE
from ..data import FactorDataset, matching_rows
from ..exceptions import InvalidArgumentError
from ..logging import get_logger
from ..types import FactorQuery
from ..vae import CFASLModel, EncoderOutput, per_dimension_kl

logger = get_logger("analysis.latents")


def rank_dimensions_by_kl(out: EncoderOutput) -> list[int]:
    """Latent dimensions by decreasing mean posterior-to-prior KL."""
    kl = per_dimension_kl(out).reshape(-1, out.latent_dim).mean(dim=0)
    return torch.argsort(kl, descending=True, stable=True).tolist()


@torch.no_grad()
def encode_images(model: CFASLModel, images: torch.Tensor) -> EncoderOutput:
    was_training = model.training
    model.eval()
    try:
        return model.encode(images)
    finally:
        model.train(was_training)


@dataclass(frozen=True)
class ScatterTable:
    """Three latent coordinates per sampled image plus the factor used for coloring."""

    dims: tuple[int, int, int]
    coordinates: np.ndarray
    labels: np.ndarray
    color_factor: str
    rows: np.ndarray


def latent_scatter_export(
    model: CFASLModel,
    ds: FactorDataset,
    fixed: FactorQuery | None = None,
    n: int = DEFAULT_SCATTER_SAMPLES,
    dims: tuple[int, int, int] | None = None,
    color_factor: int = 0,
    generator: torch.Generator | None = None,
) -> ScatterTable:
    """Encode up to n distinct images matching fixed and keep three latent coordinates.

    With dims None the three dimensions with the largest mean KL are used.
    """
    if not 0 <= color_factor < ds.num_factors:
        raise InvalidArgumentError(
            f"color_factor must be in [0, {ds.num_factors}), got {color_factor}"
        )
    rows = matching_rows(ds, fixed or FactorQuery())
    if n > len(rows):
        logger.warning(f"Requested {n} scatter samples, only {len(rows)} match; truncating")
        n = len(rows)
    rows = rows[torch.randperm(len(rows), generator=generator)[:n]]

    out = encode_images(model, ds.get_images(rows))
    if dims is None:
        dims = tuple(rank_dimensions_by_kl(out)[:3])
    if len(dims) != 3 or len(set(dims)) != 3:
        raise InvalidArgumentError(f"scatter needs 3 distinct dimensions, got {dims}")
    if any(not 0 <= d < out.latent_dim for d in dims):
        raise InvalidArgumentError(f"dimensions {dims} out of range for D={out.latent_dim}")

    return ScatterTable(
        dims=tuple(int(d) for d in dims),
        coordinates=out.mu[:, list(dims)].cpu().numpy(),
        labels=ds.factors[rows, color_factor].cpu().numpy(),
        color_factor=ds.factor_names[color_factor],
        rows=rows.cpu().numpy(),
    )


@dataclass(frozen=True)
class EigenHeatmap:
    """Principal axes of the latent means, one column per component."""

    eigenvectors: np.ndarray
    eigenvalues: np.ndarray
    one_hotness: float


def one_hotness(eigenvectors: np.ndarray) -> float:
    """Mean over columns of max|v| / ||v||; 1.0 for axis-aligned components."""
    norms = np.linalg.norm(eigenvectors, axis=0)
    return float(np.mean(np.abs(eigenvectors).max(axis=0) / norms))


def eigen_decomposition(latents: np.ndarray) -> EigenHeatmap:
    """Covariance eigendecomposition in descending eigenvalue order.

    Components beyond the numerical rank are dropped with a warning.
    """
    latents = np.asarray(latents, dtype=np.float64)
    if latents.ndim != 2 or latents.shape[0] < latents.shape[1]:
        raise InvalidArgumentError(
            f"need an (n, D) matrix with n >= D, got {latents.shape}"
        )
    covariance = np.cov(latents, rowvar=False)
    values, vectors = np.linalg.eigh(np.atleast_2d(covariance))
    order = np.argsort(values, kind="stable")[::-1]
    values, vectors = values[order], vectors[:, order]

    scale = max(float(values[0]), 0.0)
    rank = int(np.sum(values > RANK_TOLERANCE * max(scale, 1.0)))
    if rank < len(values):
        logger.warning(
            f"Latent covariance is rank deficient ({rank} of {len(values)}); "
            "keeping the leading components"
        )
        values, vectors = values[:rank], vectors[:, :rank]
    score = one_hotness(vectors) if rank else 0.0
    return EigenHeatmap(eigenvectors=vectors, eigenvalues=values, one_hotness=score)


def eigenvector_heatmap(
    model: CFASLModel,
    ds: FactorDataset,
    n: int = DEFAULT_EIGEN_SAMPLES,
    generator: torch.Generator | None = None,
) -> EigenHeatmap:
    if n < model.latent_dim:
        raise InvalidArgumentError(f"n must be >= D={model.latent_dim}, got {n}")
    rows = torch.randint(len(ds), (n,), generator=generator)
    out = encode_images(model, ds.get_images(rows))
    return eigen_decomposition(out.mu.cpu().numpy())
