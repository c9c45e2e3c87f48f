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

# Stride-2 conv layers per input resolution
CONV_LAYERS = {16: 3, 32: 4, 64: 4}
HIDDEN_CHANNELS = 32
HIDDEN_UNITS = 256


@dataclass(frozen=True)
class EncoderOutput:
    """Diagonal Gaussian posterior q(z|x), each field (B, D)."""

    mu: torch.Tensor
    log_var: torch.Tensor

    def __post_init__(self):
        if self.mu.shape != self.log_var.shape:
            raise InvalidArgumentError(
                f"mu {tuple(self.mu.shape)} and log_var {tuple(self.log_var.shape)} "
                "must have the same shape"
            )

    @property
    def sigma(self) -> torch.Tensor:
        return torch.exp(0.5 * self.log_var)

    @property
    def latent_dim(self) -> int:
        return self.mu.shape[-1]

    def __getitem__(self, index) -> "EncoderOutput":
        return EncoderOutput(mu=self.mu[index], log_var=self.log_var[index])


def _check_images(x: torch.Tensor, channels: int, image_size: int) -> None:
    expected = (channels, image_size, image_size)
    if x.dim() != 4 or tuple(x.shape[1:]) != expected:
        raise InvalidArgumentError(
            f"images have shape {tuple(x.shape)}, expected (B, {channels}, "
            f"{image_size}, {image_size})"
        )


class Encoder(nn.Module):
    """Stride-2 conv stack followed by a linear head producing (mu, log_var)."""

    def __init__(self, image_size: int, channels: int, latent_dim: int):
        super().__init__()
        if image_size not in CONV_LAYERS:
            raise InvalidArgumentError(
                f"image_size must be one of {sorted(CONV_LAYERS)}, got {image_size}"
            )
        self.image_size = image_size
        self.channels = channels
        self.latent_dim = latent_dim

        layers: list[nn.Module] = []
        in_channels = channels
        for _ in range(CONV_LAYERS[image_size]):
            layers += [
                nn.Conv2d(in_channels, HIDDEN_CHANNELS, 4, stride=2, padding=1),
                nn.ReLU(),
            ]
            in_channels = HIDDEN_CHANNELS
        self.features = nn.Sequential(*layers)

        self.final_size = image_size // 2 ** CONV_LAYERS[image_size]
        flat = HIDDEN_CHANNELS * self.final_size**2
        self.head = nn.Sequential(
            nn.Flatten(),
            nn.Linear(flat, HIDDEN_UNITS),
            nn.ReLU(),
            nn.Linear(HIDDEN_UNITS, 2 * latent_dim),
        )

    def forward(self, x: torch.Tensor) -> EncoderOutput:
        _check_images(x, self.channels, self.image_size)
        mu, log_var = self.head(self.features(x)).chunk(2, dim=-1)
        return EncoderOutput(mu=mu, log_var=log_var)


class Decoder(nn.Module):
    """Mirror of Encoder; returns pixel logits."""

    def __init__(self, image_size: int, channels: int, latent_dim: int):
        super().__init__()
        if image_size not in CONV_LAYERS:
            raise InvalidArgumentError(
                f"image_size must be one of {sorted(CONV_LAYERS)}, got {image_size}"
            )
        self.image_size = image_size
        self.channels = channels
        self.latent_dim = latent_dim

        num_layers = CONV_LAYERS[image_size]
        self.final_size = image_size // 2**num_layers
        self.head = nn.Sequential(
            nn.Linear(latent_dim, HIDDEN_UNITS),
            nn.ReLU(),
            nn.Linear(HIDDEN_UNITS, HIDDEN_CHANNELS * self.final_size**2),
            nn.ReLU(),
            nn.Unflatten(1, (HIDDEN_CHANNELS, self.final_size, self.final_size)),
        )
        layers: list[nn.Module] = []
        for index in range(num_layers):
            last = index == num_layers - 1
            out_channels = channels if last else HIDDEN_CHANNELS
            layers.append(
                nn.ConvTranspose2d(HIDDEN_CHANNELS, out_channels, 4, stride=2, padding=1)
            )
            if not last:
                layers.append(nn.ReLU())
        self.features = nn.Sequential(*layers)

    def forward(self, z: torch.Tensor) -> torch.Tensor:
        if z.dim() != 2 or z.shape[-1] != self.latent_dim:
            raise InvalidArgumentError(
                f"latents have shape {tuple(z.shape)}, expected (B, {self.latent_dim})"
            )
        return self.features(self.head(z))


def reparameterize(
    out: EncoderOutput,
    generator: torch.Generator | None = None,
    noise: torch.Tensor | None = None,
) -> torch.Tensor:
    """z = mu + sigma * eta with eta ~ N(0, I), or the given noise."""
    if noise is None:
        noise = torch.randn(out.mu.shape, generator=generator, dtype=out.mu.dtype)
        noise = noise.to(out.mu.device)
    elif noise.shape != out.mu.shape:
        raise InvalidArgumentError(
            f"noise has shape {tuple(noise.shape)}, expected {tuple(out.mu.shape)}"
        )
    return out.mu + out.sigma * noise
