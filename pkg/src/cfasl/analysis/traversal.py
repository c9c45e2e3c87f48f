# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

from dataclasses import dataclass, field

import torch
import torch.nn.functional as F

from ..exceptions import InvalidArgumentError
from ..symmetry import matrix_exponential
from ..vae import CFASLModel
from .latents import rank_dimensions_by_kl


def _single(x: torch.Tensor) -> torch.Tensor:
    """Accept (C, H, W) or (1, C, H, W)."""
    if x.dim() == 3:
        return x.unsqueeze(0)
    if x.dim() == 4 and x.shape[0] == 1:
        return x
    raise InvalidArgumentError(f"expected one image, got shape {tuple(x.shape)}")


def _act(matrix: torch.Tensor, z: torch.Tensor) -> torch.Tensor:
    return (matrix @ z.unsqueeze(-1)).squeeze(-1)


@dataclass
class TraversalRecord:
    """Cumulative per-dimension edits of a source latent.

    decoded_images[0] decodes the source; decoded_images[t + 1] decodes
    edited_latents[t].
    """

    source_latent: torch.Tensor
    edited_latents: list[torch.Tensor] = field(default_factory=list)
    edited_dims: list[int] = field(default_factory=list)
    decoded_images: list[torch.Tensor] = field(default_factory=list)

    def metadata(self) -> dict:
        return {
            "source_latent": self.source_latent.tolist(),
            "edited_latents": [z.tolist() for z in self.edited_latents],
            "edited_dims": self.edited_dims,
        }


@dataclass
class DecompositionRecord:
    """Frames of g_c applied to z1 one active section at a time."""

    active_sections: list[int]
    switch_values: list[float]
    latents: list[torch.Tensor]
    frames: list[torch.Tensor]
    single_shot: torch.Tensor
    final_mse: float

    def metadata(self) -> dict:
        return {
            "active_sections": self.active_sections,
            "switch_values": self.switch_values,
            "latents": [z.tolist() for z in self.latents],
            "final_mse": self.final_mse,
        }


@dataclass
class ReplayRecord:
    """Images replayed through the symmetry extracted from each consecutive pair."""

    replay_images: list[torch.Tensor]
    replay_mse: list[float]
    reconstruction_mse: list[float]
    active_sections: list[list[int]]

    def metadata(self) -> dict:
        return {
            "replay_mse": self.replay_mse,
            "reconstruction_mse": self.reconstruction_mse,
            "active_sections": self.active_sections,
        }


@torch.no_grad()
def dimension_swap_traversal(
    model: CFASLModel, x1: torch.Tensor, x2: torch.Tensor, num_dims: int
) -> TraversalRecord:
    """Replace z1's dimensions by z2's one at a time, highest-KL dimension first."""
    if not 0 <= num_dims <= model.latent_dim:
        raise InvalidArgumentError(
            f"num_dims must be in [0, {model.latent_dim}], got {num_dims}"
        )
    model.eval()
    first = model.encode(_single(x1))
    second = model.encode(_single(x2))
    order = rank_dimensions_by_kl(first)[:num_dims]

    z = first.mu[0].clone()
    record = TraversalRecord(source_latent=z.clone())
    record.decoded_images.append(model.decode(z.unsqueeze(0))[0])
    for dim in order:
        z = z.clone()
        z[dim] = second.mu[0, dim]
        record.edited_latents.append(z)
        record.edited_dims.append(dim)
        record.decoded_images.append(model.decode(z.unsqueeze(0))[0])
    return record


@torch.no_grad()
def composite_decomposition(
    model: CFASLModel, x1: torch.Tensor, x2: torch.Tensor
) -> DecompositionRecord:
    """Extract g_c in inference mode and apply its active sections cumulatively."""
    model.eval()
    first = model.encode(_single(x1))
    second = model.encode(_single(x2))
    composite = model.compose(first, second, threshold=None, temperature=1.0, hard=True)

    switch = composite.switch_values[0]
    active = torch.nonzero(switch > 0).flatten().tolist()
    z = first.mu[0]
    latents = [z]
    frames = [model.decode(z.unsqueeze(0))[0]]
    for section in active:
        step = matrix_exponential(switch[section] * composite.section_algebra[0, section])
        z = _act(step, z)
        latents.append(z)
        frames.append(model.decode(z.unsqueeze(0))[0])

    single_shot = model.decode(_act(composite.group_matrix, first.mu))[0]
    return DecompositionRecord(
        active_sections=active,
        switch_values=switch.tolist(),
        latents=latents,
        frames=frames,
        single_shot=single_shot,
        final_mse=float(F.mse_loss(frames[-1], single_shot)),
    )


@torch.no_grad()
def sequential_symmetry_replay(
    model: CFASLModel, images: torch.Tensor | list[torch.Tensor]
) -> ReplayRecord:
    """Decode g_(k-1,k) . z_(k-1) for each consecutive pair and compare with x_k."""
    if isinstance(images, list):
        images = torch.stack([_single(x)[0] for x in images])
    if images.dim() != 4 or images.shape[0] < 2:
        raise InvalidArgumentError(
            f"replay needs a sequence of >= 2 images, got shape {tuple(images.shape)}"
        )
    model.eval()
    out = model.encode(images)
    composite = model.compose(
        out[:-1], out[1:], threshold=None, temperature=1.0, hard=True
    )
    replay = model.decode(_act(composite.group_matrix, out.mu[:-1]))
    direct = model.decode(out.mu[1:])
    targets = images[1:]

    def per_step(decoded: torch.Tensor) -> list[float]:
        errors = (decoded - targets).pow(2).reshape(len(targets), -1).mean(dim=1)
        return errors.tolist()

    return ReplayRecord(
        replay_images=list(replay),
        replay_mse=per_step(replay),
        reconstruction_mse=per_step(direct),
        active_sections=[
            torch.nonzero(row > 0).flatten().tolist() for row in composite.switch_values
        ],
    )
