# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

import math
from dataclasses import dataclass

import torch
import torch.nn.functional as F
from torch.distributions import ContinuousBernoulli, Normal

from ..exceptions import InvalidArgumentError
from ..types import ObjectiveConfig
from .networks import EncoderOutput


@dataclass(frozen=True)
class TcvaeTerms:
    """Unweighted decomposition of the beta-TCVAE objective (batch means)."""

    reconstruction: torch.Tensor
    mutual_info: torch.Tensor
    total_correlation: torch.Tensor
    dimension_kl: torch.Tensor

    def as_dict(self) -> dict[str, float]:
        return {
            "reconstruction": float(self.reconstruction),
            "mutual_info": float(self.mutual_info),
            "total_correlation": float(self.total_correlation),
            "dimension_kl": float(self.dimension_kl),
        }


def reconstruction_loss(
    x: torch.Tensor, logits: torch.Tensor, likelihood: str = "bernoulli"
) -> torch.Tensor:
    """Negative log-likelihood summed over pixels, averaged over the batch."""
    if x.shape != logits.shape:
        raise InvalidArgumentError(
            f"reconstruction {tuple(logits.shape)} does not match input {tuple(x.shape)}"
        )
    if likelihood == "bernoulli":
        nll = F.binary_cross_entropy_with_logits(logits, x, reduction="none")
    elif likelihood == "continuous_bernoulli":
        nll = -ContinuousBernoulli(logits=logits).log_prob(x)
    else:
        raise InvalidArgumentError(f"Unknown likelihood: {likelihood}")
    return nll.reshape(x.shape[0], -1).sum(dim=1).mean()


def per_dimension_kl(out: EncoderOutput) -> torch.Tensor:
    """KL(q(z_d|x) || N(0, 1)) per dimension, shape (B, D)."""
    return 0.5 * (out.mu.pow(2) + out.log_var.exp() - out.log_var - 1.0)


def gaussian_kl(out: EncoderOutput) -> torch.Tensor:
    """Closed-form KL(q(z|x) || N(0, I)) summed over dimensions, averaged over the batch."""
    return per_dimension_kl(out).sum(dim=-1).mean()


def elbo_beta_vae(
    x: torch.Tensor,
    recon_logits: torch.Tensor,
    out: EncoderOutput,
    beta: float,
    likelihood: str = "bernoulli",
) -> torch.Tensor:
    """Negative ELBO with a beta-weighted KL term.

    Args:
        x: Input images in [0, 1], (B, C, H, W)
        recon_logits: Decoder logits, same shape as x
        out: Posterior of x
        beta: KL weight
        likelihood: "bernoulli" or "continuous_bernoulli"
    """
    return reconstruction_loss(x, recon_logits, likelihood) + beta * gaussian_kl(out)


def elbo_beta_tcvae(
    x: torch.Tensor,
    recon_logits: torch.Tensor,
    out: EncoderOutput,
    z: torch.Tensor,
    config: ObjectiveConfig,
) -> tuple[torch.Tensor, TcvaeTerms]:
    """beta-TCVAE loss estimated with minibatch-weighted sampling.

    Args:
        x: Input images, (B, C, H, W)
        recon_logits: Decoder logits of z
        out: Posterior of x
        z: Reparameterized samples of out, (B, D)
        config: Objective weights; dataset_size must be set

    Returns:
        Tuple of (loss, unweighted terms)
    """
    batch_size = z.shape[0]
    if batch_size < 2:
        raise InvalidArgumentError("beta-TCVAE needs a batch of at least 2 samples")
    if config.dataset_size is None:
        raise InvalidArgumentError("beta-TCVAE needs dataset_size for its estimator")

    reconstruction = reconstruction_loss(x, recon_logits, config.likelihood)

    posterior = Normal(out.mu, out.sigma)
    log_qz_x = posterior.log_prob(z).sum(dim=1)
    log_pz = Normal(torch.zeros_like(z), torch.ones_like(z)).log_prob(z).sum(dim=1)

    # log q(z_i | x_j) for every pair, (B, B, D)
    pairwise = Normal(out.mu.unsqueeze(0), out.sigma.unsqueeze(0)).log_prob(z.unsqueeze(1))
    log_nm = math.log(config.dataset_size * batch_size)
    log_qz = torch.logsumexp(pairwise.sum(dim=2), dim=1) - log_nm
    log_qz_product = (torch.logsumexp(pairwise, dim=1) - log_nm).sum(dim=1)

    terms = TcvaeTerms(
        reconstruction=reconstruction,
        mutual_info=(log_qz_x - log_qz).mean(),
        total_correlation=(log_qz - log_qz_product).mean(),
        dimension_kl=(log_qz_product - log_pz).mean(),
    )
    loss = (
        reconstruction
        + config.alpha * terms.mutual_info
        + config.beta * terms.total_correlation
        + config.gamma * terms.dimension_kl
    )
    return loss, terms
