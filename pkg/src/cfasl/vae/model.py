# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

import torch
from torch import nn

from ..composition import AttentionHeads, CompositeSymmetry, PairStatistics, compose
from ..constants import DEFAULT_CODEBOOK_SCALE
from ..exceptions import InvalidArgumentError
from ..symmetry import init_codebook
from .networks import Decoder, Encoder, EncoderOutput


class CFASLModel(nn.Module):
    """VAE with a symmetry codebook and composition heads on its latent space."""

    def __init__(
        self,
        image_size: int,
        channels: int,
        latent_dim: int,
        num_sections: int,
        elements_per_section: int,
        codebook_scale: float = DEFAULT_CODEBOOK_SCALE,
        seed: int = 0,
    ):
        super().__init__()
        if num_sections != latent_dim:
            raise InvalidArgumentError(
                f"num_sections must equal latent_dim ({latent_dim}), got {num_sections}"
            )
        self.image_size = image_size
        self.channels = channels
        self.latent_dim = latent_dim
        self.encoder = Encoder(image_size, channels, latent_dim)
        self.decoder = Decoder(image_size, channels, latent_dim)
        self.codebook = init_codebook(
            num_sections, elements_per_section, latent_dim, codebook_scale, seed
        )
        self.heads = AttentionHeads(num_sections, elements_per_section, latent_dim)

    def encode(self, x: torch.Tensor) -> EncoderOutput:
        return self.encoder(x)

    def decode_logits(self, z: torch.Tensor) -> torch.Tensor:
        return self.decoder(z)

    def decode(self, z: torch.Tensor) -> torch.Tensor:
        """Pixel means in [0, 1]."""
        return torch.sigmoid(self.decoder(z))

    @staticmethod
    def pair_statistics(first: EncoderOutput, second: EncoderOutput) -> PairStatistics:
        return PairStatistics.from_log_var(
            first.mu, first.log_var, second.mu, second.log_var
        )

    def compose(
        self,
        first: EncoderOutput,
        second: EncoderOutput,
        threshold: float | None,
        temperature: float,
        generator: torch.Generator | None = None,
        hard: bool = False,
    ) -> CompositeSymmetry:
        stats = self.pair_statistics(first, second)
        return compose(
            self.codebook, self.heads, stats, threshold, temperature, generator, hard
        )

    @torch.no_grad()
    def represent(self, images: torch.Tensor, batch_size: int = 256) -> torch.Tensor:
        """Posterior means for a stack of images, evaluated in chunks."""
        was_training = self.training
        self.eval()
        try:
            means = [
                self.encode(images[start : start + batch_size]).mu
                for start in range(0, images.shape[0], batch_size)
            ]
        finally:
            self.train(was_training)
        return torch.cat(means, dim=0)
