# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

from collections.abc import Callable

import torch
import torch.nn.functional as F

from ..composition import CompositeSymmetry
from ..exceptions import InvalidArgumentError


def _act(matrix: torch.Tensor, z: torch.Tensor) -> torch.Tensor:
    return (matrix @ z.unsqueeze(-1)).squeeze(-1)


def encoder_equiv_loss(
    z1: torch.Tensor, z2: torch.Tensor, g: CompositeSymmetry
) -> torch.Tensor:
    """MSE between z1 and g^-1 . z2."""
    if z1.shape != z2.shape:
        raise InvalidArgumentError(
            f"z1 {tuple(z1.shape)} and z2 {tuple(z2.shape)} must match"
        )
    if z1.shape[-1] != g.latent_dim:
        raise InvalidArgumentError(
            f"latents have D={z1.shape[-1]}, symmetry has D={g.latent_dim}"
        )
    return F.mse_loss(z1, _act(g.inverse_matrix(), z2))


def decoder_equiv_loss(
    x2: torch.Tensor,
    z1: torch.Tensor,
    g: CompositeSymmetry,
    decoder: Callable[[torch.Tensor], torch.Tensor],
) -> torch.Tensor:
    """MSE between decode(g . z1) and x2.

    decoder maps (B, D) latents to pixel means shaped like x2.
    """
    if z1.shape[-1] != g.latent_dim:
        raise InvalidArgumentError(
            f"latents have D={z1.shape[-1]}, symmetry has D={g.latent_dim}"
        )
    decoded = decoder(_act(g.group_matrix, z1))
    if decoded.shape != x2.shape:
        raise InvalidArgumentError(
            f"decoded {tuple(decoded.shape)} does not match target {tuple(x2.shape)}"
        )
    return F.mse_loss(decoded, x2)
