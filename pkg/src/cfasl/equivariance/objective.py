# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

import torch

from ..constants import DEFAULT_EPSILON
from ..exceptions import InvalidArgumentError

CODEBOOK_TERMS = ("parallel", "perpendicular", "sparsity", "commutative", "prediction")
EQUIVARIANCE_TERMS = ("encoder_equiv", "decoder_equiv")
LOSS_TERMS = CODEBOOK_TERMS + EQUIVARIANCE_TERMS

ABLATION_COLUMNS = (
    "prediction",
    "commutative",
    "equivariance",
    "parallel",
    "perpendicular",
    "sparsity",
)

# On/off rows of the loss ablation over ABLATION_COLUMNS
ABLATION_ROWS: tuple[tuple[int, ...], ...] = (
    (0, 0, 0, 0, 0, 0),
    (0, 1, 1, 1, 1, 1),
    (1, 1, 0, 1, 1, 1),
    (1, 1, 1, 0, 1, 1),
    (1, 1, 1, 1, 0, 1),
    (1, 1, 1, 0, 0, 0),
    (1, 1, 1, 1, 1, 0),
    (1, 1, 1, 1, 1, 1),
)


def ablation_mask_from_row(row: Sequence[int | bool]) -> dict[str, bool]:
    """Expand an ablation row into a per-term mask.

    The equivariance column switches both encoder and decoder terms.
    """
    if len(row) != len(ABLATION_COLUMNS):
        raise InvalidArgumentError(
            f"ablation row needs {len(ABLATION_COLUMNS)} entries "
            f"({', '.join(ABLATION_COLUMNS)}), got {len(row)}"
        )
    columns = dict(zip(ABLATION_COLUMNS, (bool(value) for value in row)))
    equivariance = columns.pop("equivariance")
    return {
        **columns,
        "encoder_equiv": equivariance,
        "decoder_equiv": equivariance,
    }


def full_mask() -> dict[str, bool]:
    return dict.fromkeys(LOSS_TERMS, True)


def _check_names(names, kind: str) -> None:
    unknown = sorted(set(names) - set(LOSS_TERMS))
    if unknown:
        raise InvalidArgumentError(
            f"Unknown loss name(s) in {kind}: {', '.join(unknown)}. "
            f"Valid names: {', '.join(LOSS_TERMS)}"
        )


@dataclass
class LossBreakdown:
    """Per-term losses of one step and their weighted total."""

    vae: torch.Tensor
    total: torch.Tensor
    terms: dict[str, torch.Tensor] = field(default_factory=dict)
    weights: dict[str, float] = field(default_factory=dict)
    extras: dict[str, float] = field(default_factory=dict)

    def __getattr__(self, name: str) -> torch.Tensor:
        if name in LOSS_TERMS:
            return self.terms[name]
        raise AttributeError(name)

    def as_dict(self) -> dict[str, float]:
        values = {"total": float(self.total), "vae": float(self.vae)}
        values.update({name: float(self.terms[name]) for name in LOSS_TERMS})
        values.update(self.extras)
        return values

    def first_non_finite(self) -> str | None:
        if not torch.isfinite(self.vae).all():
            return "vae"
        for name, value in self.terms.items():
            if self.weights.get(name, 0.0) != 0.0 and not torch.isfinite(value).all():
                return name
        if not torch.isfinite(self.total).all():
            return "total"
        return None


def total_objective(
    components: Mapping[str, torch.Tensor],
    weights: Mapping[str, float] | None = None,
    ablation_mask: Mapping[str, bool] | None = None,
    epsilon: float = DEFAULT_EPSILON,
) -> LossBreakdown:
    """vae + sum of codebook terms + encoder_equiv + epsilon * decoder_equiv.

    Args:
        components: "vae" plus any of LOSS_TERMS; terms that are masked off may
            be omitted
        weights: Optional per-term multipliers (default 1.0)
        ablation_mask: Per-term on/off; unnamed terms stay on
        epsilon: Decoder equivariance weight

    Returns:
        LossBreakdown whose weights already fold in the mask and epsilon
    """
    if epsilon < 0:
        raise InvalidArgumentError(f"epsilon must be >= 0, got {epsilon}")
    if "vae" not in components:
        raise InvalidArgumentError("components must include the 'vae' term")
    weights = dict(weights or {})
    mask = dict(ablation_mask or {})
    _check_names(weights, "weights")
    _check_names(mask, "ablation mask")
    _check_names(set(components) - {"vae"}, "components")

    vae = components["vae"]
    zero = torch.zeros((), dtype=vae.dtype, device=vae.device)
    total = vae
    terms: dict[str, torch.Tensor] = {}
    effective: dict[str, float] = {}
    for name in LOSS_TERMS:
        weight = float(weights.get(name, 1.0)) if mask.get(name, True) else 0.0
        if name == "decoder_equiv":
            weight *= epsilon
        effective[name] = weight
        value = components.get(name)
        if value is None:
            if weight != 0.0:
                raise InvalidArgumentError(f"loss term '{name}' is enabled but missing")
            terms[name] = zero
            continue
        terms[name] = value
        if weight != 0.0:
            total = total + weight * value
    return LossBreakdown(vae=vae, total=total, terms=terms, weights=effective)
