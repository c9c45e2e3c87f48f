# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

from dataclasses import dataclass

import torch
import torch.nn.functional as F
from torch import nn

from ..exceptions import InvalidArgumentError
from ..symmetry import SymmetryCodebook


@dataclass(frozen=True)
class PairStatistics:
    """Posterior statistics of a sample pair, each field (B, D) or (D,)."""

    mu1: torch.Tensor
    sigma1: torch.Tensor
    mu2: torch.Tensor
    sigma2: torch.Tensor

    def __post_init__(self):
        shape = self.mu1.shape
        for name in ("sigma1", "mu2", "sigma2"):
            if getattr(self, name).shape != shape:
                raise InvalidArgumentError(
                    f"{name} has shape {tuple(getattr(self, name).shape)}, "
                    f"expected {tuple(shape)}"
                )
        if (self.sigma1 <= 0).any() or (self.sigma2 <= 0).any():
            raise InvalidArgumentError("posterior std must be strictly positive")

    @classmethod
    def from_log_var(
        cls,
        mu1: torch.Tensor,
        log_var1: torch.Tensor,
        mu2: torch.Tensor,
        log_var2: torch.Tensor,
    ) -> "PairStatistics":
        return cls(
            mu1=mu1,
            sigma1=torch.exp(0.5 * log_var1),
            mu2=mu2,
            sigma2=torch.exp(0.5 * log_var2),
        )

    @property
    def latent_dim(self) -> int:
        return self.mu1.shape[-1]

    @property
    def concat(self) -> torch.Tensor:
        """[mu1; sigma1; mu2; sigma2] along the last axis, length 4D."""
        return torch.cat([self.mu1, self.sigma1, self.mu2, self.sigma2], dim=-1)


@dataclass(frozen=True)
class ChangeTarget:
    """Binary per-dimension label: 1 where the pair's means differ by > threshold."""

    target: torch.Tensor

    @property
    def labels(self) -> torch.Tensor:
        return self.target.long()


class AttentionHeads(nn.Module):
    """Per-section linear heads reading the pair statistics.

    element_* scores the |SS| elements of each section, section_* gives the
    2-way (unchanged, changed) logits of each section.
    """

    def __init__(
        self,
        num_sections: int,
        elements_per_section: int,
        latent_dim: int,
        init_std: float = 0.01,
    ):
        super().__init__()
        features = 4 * latent_dim
        self.num_sections = num_sections
        self.elements_per_section = elements_per_section
        self.latent_dim = latent_dim
        self.element_weight = nn.Parameter(
            torch.randn(num_sections, features, elements_per_section) * init_std
        )
        self.element_bias = nn.Parameter(torch.zeros(num_sections, elements_per_section))
        self.section_weight = nn.Parameter(
            torch.randn(num_sections, features, 2) * init_std
        )
        self.section_bias = nn.Parameter(torch.zeros(num_sections, 2))

    def _check(self, stats: PairStatistics) -> torch.Tensor:
        if stats.latent_dim != self.latent_dim:
            raise InvalidArgumentError(
                f"pair statistics have D={stats.latent_dim}, heads expect D={self.latent_dim}"
            )
        return stats.concat

    def element_logits(self, stats: PairStatistics) -> torch.Tensor:
        """(..., |S|, |SS|) attention logits."""
        features = self._check(stats)
        logits = torch.einsum("...f,sfe->...se", features, self.element_weight)
        return logits + self.element_bias

    def section_logits(self, stats: PairStatistics) -> torch.Tensor:
        """(..., |S|, 2) switch logits."""
        features = self._check(stats)
        logits = torch.einsum("...f,sfc->...sc", features, self.section_weight)
        return logits + self.section_bias


def element_attention(
    stats: PairStatistics, heads: AttentionHeads, codebook: SymmetryCodebook
) -> tuple[torch.Tensor, torch.Tensor]:
    """First step: attention-weighted generator per section.

    Returns:
        Tuple of (section algebra (..., |S|, D, D), attention (..., |S|, |SS|))
    """
    if stats.latent_dim != codebook.latent_dim:
        raise InvalidArgumentError(
            f"pair statistics have D={stats.latent_dim}, codebook has D={codebook.latent_dim}"
        )
    if (
        heads.num_sections != codebook.num_sections
        or heads.elements_per_section != codebook.elements_per_section
    ):
        raise InvalidArgumentError("attention heads and codebook disagree on |S| / |SS|")
    attention = F.softmax(heads.element_logits(stats), dim=-1)
    algebra = torch.einsum("...sj,sjdk->...sdk", attention, codebook.generators)
    return algebra, attention


def change_target(stats: PairStatistics, threshold: float) -> ChangeTarget:
    """T_i = 1 iff |mu1_i - mu2_i| > threshold; a constant label (no gradient)."""
    if threshold <= 0:
        raise InvalidArgumentError(f"threshold must be > 0, got {threshold}")
    with torch.no_grad():
        changed = (stats.mu1 - stats.mu2).abs() > threshold
    return ChangeTarget(target=changed.to(stats.mu1.dtype))


def prediction_loss(
    stats: PairStatistics, heads: AttentionHeads, target: ChangeTarget
) -> torch.Tensor:
    """Sum over sections of the 2-class cross-entropy, averaged over pairs."""
    if heads.num_sections != target.target.shape[-1]:
        raise InvalidArgumentError(
            f"prediction needs |S| = D, got |S|={heads.num_sections} "
            f"and target length {target.target.shape[-1]}"
        )
    logits = heads.section_logits(stats)
    per_section = F.cross_entropy(
        logits.reshape(-1, 2), target.labels.reshape(-1), reduction="none"
    ).reshape(target.target.shape)
    return per_section.sum(dim=-1).mean()
