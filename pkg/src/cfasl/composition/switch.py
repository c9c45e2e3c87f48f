# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

import torch
import torch.nn.functional as F

from ..constants import SWITCH_CUTOFF
from ..exceptions import InvalidArgumentError

_TINY = 1e-20


def sample_gumbel(
    shape: torch.Size | tuple[int, ...],
    generator: torch.Generator | None = None,
    dtype: torch.dtype = torch.float32,
) -> torch.Tensor:
    uniform = torch.rand(shape, generator=generator, dtype=dtype)
    return -torch.log(-torch.log(uniform + _TINY) + _TINY)


def gumbel_softmax_sample(
    logits: torch.Tensor,
    temperature: float,
    generator: torch.Generator | None = None,
) -> torch.Tensor:
    """Relaxed one-hot sample over the last axis.

    Same relaxation as torch.nn.functional.gumbel_softmax(hard=False), with the
    noise drawn from an explicit generator.
    """
    if temperature <= 0:
        raise InvalidArgumentError(f"temperature must be > 0, got {temperature}")
    noise = sample_gumbel(logits.shape, generator, logits.dtype).to(logits.device)
    return F.softmax((logits + noise) / temperature, dim=-1)


def gumbel_switch(
    section_logits: torch.Tensor,
    temperature: float,
    generator: torch.Generator | None = None,
) -> torch.Tensor:
    """Soft on/off value per section from its (unchanged, changed) logits.

    G(p_2) when the changed-class probability is >= 0.5, else 1 - G(p_1).

    Args:
        section_logits: Tensor (..., 2)
        temperature: Gumbel-softmax temperature
        generator: RNG stream for the Gumbel noise

    Returns:
        Tensor (...) with values in [0, 1]
    """
    if section_logits.shape[-1] != 2:
        raise InvalidArgumentError(
            f"switch expects 2 logits per section, got {section_logits.shape[-1]}"
        )
    sample = gumbel_softmax_sample(section_logits, temperature, generator)
    probability = F.softmax(section_logits, dim=-1)[..., 1]
    switch = torch.where(
        probability >= SWITCH_CUTOFF, sample[..., 1], 1.0 - sample[..., 0]
    )
    return switch.clamp(0.0, 1.0)


def hard_switch(section_logits: torch.Tensor) -> torch.Tensor:
    """Deterministic inference switch: 1[p_2 >= 0.5]."""
    probability = F.softmax(section_logits, dim=-1)[..., 1]
    return (probability >= SWITCH_CUTOFF).to(section_logits.dtype)
