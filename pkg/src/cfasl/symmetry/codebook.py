# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

from dataclasses import dataclass

import torch
from torch import nn

from ..exceptions import InvalidArgumentError
from ..logging import get_logger
from .expm import matrix_exponential

logger = get_logger("symmetry.codebook")


@dataclass(frozen=True)
class GroupElement:
    """An invertible latent-space symmetry g = exp(A).

    Both fields may carry leading batch dimensions, (..., D, D).
    """

    matrix: torch.Tensor
    source_algebra: torch.Tensor

    @classmethod
    def from_algebra(cls, algebra: torch.Tensor) -> "GroupElement":
        return cls(matrix=matrix_exponential(algebra), source_algebra=algebra)

    @classmethod
    def identity(
        cls, latent_dim: int, dtype: torch.dtype = torch.float32
    ) -> "GroupElement":
        return cls.from_algebra(torch.zeros(latent_dim, latent_dim, dtype=dtype))

    @property
    def latent_dim(self) -> int:
        return self.matrix.shape[-1]


class SymmetryCodebook(nn.Module):
    """Trainable codebook of Lie-algebra generators.

    ``generators[i, j]`` is the j-th element of section i, a dense D x D matrix.
    """

    def __init__(
        self,
        num_sections: int,
        elements_per_section: int,
        latent_dim: int,
        scale: float = 0.01,
        seed: int | None = None,
        dtype: torch.dtype = torch.float32,
    ):
        super().__init__()
        for name, value in (
            ("num_sections", num_sections),
            ("elements_per_section", elements_per_section),
            ("latent_dim", latent_dim),
        ):
            if value < 1:
                raise InvalidArgumentError(f"{name} must be >= 1, got {value}")
        if scale < 0:
            raise InvalidArgumentError(f"scale must be >= 0, got {scale}")

        self.num_sections = num_sections
        self.elements_per_section = elements_per_section
        self.latent_dim = latent_dim

        shape = (num_sections, elements_per_section, latent_dim, latent_dim)
        generator = torch.Generator().manual_seed(seed) if seed is not None else None
        weights = torch.randn(shape, generator=generator, dtype=dtype)
        self.generators = nn.Parameter(weights * (scale / latent_dim))

    @property
    def size(self) -> int:
        return self.num_sections * self.elements_per_section

    def extra_repr(self) -> str:
        return (
            f"num_sections={self.num_sections}, "
            f"elements_per_section={self.elements_per_section}, "
            f"latent_dim={self.latent_dim}"
        )

    def group_matrices(self) -> torch.Tensor:
        """exp of every generator, shape (|S|, |SS|, D, D)."""
        return matrix_exponential(self.generators)

    def element(self, section: int, index: int) -> GroupElement:
        return GroupElement.from_algebra(self.generators[section, index])

    def latent_changes(self, z: torch.Tensor) -> torch.Tensor:
        """Delta z = z - g z for every codebook element.

        Args:
            z: Latent vector (D,) or batch (B, D)

        Returns:
            Tensor (|S|, |SS|, D) or (B, |S|, |SS|, D)
        """
        _check_latent(z, self.latent_dim)
        groups = self.group_matrices()
        moved = torch.einsum("sjdk,...k->...sjd", groups, z)
        return z[..., None, None, :] - moved


def init_codebook(
    num_sections: int,
    elements_per_section: int,
    latent_dim: int,
    scale: float,
    seed: int,
) -> SymmetryCodebook:
    """Build a codebook with N(0, (scale / D)^2) generators, deterministic in seed."""
    codebook = SymmetryCodebook(
        num_sections, elements_per_section, latent_dim, scale=scale, seed=seed
    )
    logger.debug(
        f"Codebook initialized: |S|={num_sections} |SS|={elements_per_section} "
        f"D={latent_dim} (|G|={codebook.size})"
    )
    return codebook


def _check_latent(z: torch.Tensor, latent_dim: int) -> None:
    if z.dim() == 0 or z.shape[-1] != latent_dim:
        raise InvalidArgumentError(
            f"latent has shape {tuple(z.shape)}, expected trailing dimension {latent_dim}"
        )


def apply_symmetry(g: GroupElement, z: torch.Tensor) -> torch.Tensor:
    """Group action g . z as a matrix-vector product (batched over leading dims)."""
    _check_latent(z, g.latent_dim)
    return (g.matrix @ z.unsqueeze(-1)).squeeze(-1)


def inverse_symmetry(g: GroupElement) -> GroupElement:
    """g^-1 = exp(-A); no numerical matrix inverse is taken."""
    return GroupElement.from_algebra(-g.source_algebra)


def latent_change(g: GroupElement | torch.Tensor, z: torch.Tensor) -> torch.Tensor:
    """Delta z = z - g z for a group element or a plain linear map."""
    matrix = g.matrix if isinstance(g, GroupElement) else g
    _check_latent(z, matrix.shape[-1])
    return z - (matrix @ z.unsqueeze(-1)).squeeze(-1)
