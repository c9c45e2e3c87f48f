# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

import time
from dataclasses import dataclass

import torch

from ..exceptions import InvalidArgumentError
from ..logging import get_logger
from ..symmetry import SymmetryCodebook, matrix_exponential
from ..types import SpeedupReport
from .heads import (
    AttentionHeads,
    ChangeTarget,
    PairStatistics,
    change_target,
    element_attention,
)
from .switch import gumbel_switch, hard_switch

logger = get_logger("composition")


@dataclass(frozen=True)
class CompositeSymmetry:
    """Composite symmetry of a pair (or a batch of pairs along leading dims).

    Attributes:
        element_attention: (..., |S|, |SS|), rows on the simplex
        switch_values: (..., |S|) in [0, 1]
        section_algebra: (..., |S|, D, D) attention-weighted generator per section
        aggregate_algebra: (..., D, D) sum of switch-weighted section algebras
        group_matrix: (..., D, D) exp(aggregate_algebra)
        section_logits: (..., |S|, 2) switch logits the prediction loss reads
        target: change labels, None when no threshold was given
    """

    element_attention: torch.Tensor
    switch_values: torch.Tensor
    section_algebra: torch.Tensor
    aggregate_algebra: torch.Tensor
    group_matrix: torch.Tensor
    section_logits: torch.Tensor
    target: ChangeTarget | None = None

    @property
    def latent_dim(self) -> int:
        return self.group_matrix.shape[-1]

    def inverse_matrix(self) -> torch.Tensor:
        """g_c^-1 = exp(-aggregate_algebra)."""
        return matrix_exponential(-self.aggregate_algebra)


def _switched_attention(
    codebook: SymmetryCodebook,
    heads: AttentionHeads,
    stats: PairStatistics,
    temperature: float,
    generator: torch.Generator | None,
    hard: bool,
) -> tuple[torch.Tensor, torch.Tensor, torch.Tensor, torch.Tensor]:
    section_algebra, attention = element_attention(stats, heads, codebook)
    logits = heads.section_logits(stats)
    if hard:
        switch = hard_switch(logits)
    else:
        switch = gumbel_switch(logits, temperature, generator)
    return section_algebra, attention, logits, switch


def compose(
    codebook: SymmetryCodebook,
    heads: AttentionHeads,
    stats: PairStatistics,
    threshold: float | None,
    temperature: float,
    generator: torch.Generator | None = None,
    hard: bool = False,
) -> CompositeSymmetry:
    """Build g_c = exp(sum_i sw_i * A_c^i) with a single matrix exponential.

    Args:
        codebook: Symmetry codebook
        heads: Attention and switch heads
        stats: Posterior statistics of the pair(s)
        threshold: Change threshold for the prediction target, or None to skip it
        temperature: Gumbel-softmax temperature (ignored when hard)
        generator: RNG stream for the Gumbel noise
        hard: Use the deterministic 1[p >= 0.5] switch instead of Gumbel sampling
    """
    section_algebra, attention, logits, switch = _switched_attention(
        codebook, heads, stats, temperature, generator, hard
    )
    aggregate = torch.einsum("...s,...sdk->...dk", switch, section_algebra)
    target = change_target(stats, threshold) if threshold is not None else None
    return CompositeSymmetry(
        element_attention=attention,
        switch_values=switch,
        section_algebra=section_algebra,
        aggregate_algebra=aggregate,
        group_matrix=matrix_exponential(aggregate),
        section_logits=logits,
        target=target,
    )


def _ordered_product(factors: torch.Tensor) -> torch.Tensor:
    """Left-to-right matrix product over axis -3 of (..., n, D, D)."""
    result = factors[..., 0, :, :]
    for index in range(1, factors.shape[-3]):
        result = result @ factors[..., index, :, :]
    return result


def compose_product_form(
    codebook: SymmetryCodebook,
    composite: CompositeSymmetry,
    per_element: bool = True,
) -> torch.Tensor:
    """Product of exponentials equivalent to the sum form when generators commute.

    With per_element, one exponential per codebook element,
    exp(sw_i * attn_ij * A_ij); otherwise one per section, exp(sw_i * A_c^i).

    Returns:
        Tensor (..., D, D)
    """
    if composite.latent_dim != codebook.latent_dim:
        raise InvalidArgumentError(
            f"composite has D={composite.latent_dim}, codebook has D={codebook.latent_dim}"
        )
    if per_element:
        return _element_product(
            codebook, composite.switch_values, composite.element_attention
        )
    flat = composite.switch_values[..., None, None] * composite.section_algebra
    return _ordered_product(matrix_exponential(flat))


def _element_product(
    codebook: SymmetryCodebook, switch: torch.Tensor, attention: torch.Tensor
) -> torch.Tensor:
    dim = codebook.latent_dim
    weights = switch[..., None] * attention
    scaled = weights[..., None, None] * codebook.generators
    flat = scaled.reshape(*scaled.shape[:-4], -1, dim, dim)
    return _ordered_product(matrix_exponential(flat))


def measure_composition_speedup(
    codebook: SymmetryCodebook,
    heads: AttentionHeads,
    stats: PairStatistics,
    repeats: int = 100,
) -> SpeedupReport:
    """Time the single-exponential sum form against the per-element product form.

    Both timings run end to end from the pair statistics: attention, hard
    switches and the exponential(s).
    """
    if repeats < 1:
        raise InvalidArgumentError(f"repeats must be >= 1, got {repeats}")

    with torch.no_grad():
        start = time.perf_counter()
        for _ in range(repeats):
            summed = compose(
                codebook, heads, stats, threshold=None, temperature=1.0, hard=True
            ).group_matrix
        sum_seconds = time.perf_counter() - start

        start = time.perf_counter()
        for _ in range(repeats):
            _, attention, _, switch = _switched_attention(
                codebook, heads, stats, 1.0, None, hard=True
            )
            product = _element_product(codebook, switch, attention)
        product_seconds = time.perf_counter() - start

    report = SpeedupReport(
        codebook_size=codebook.size,
        latent_dim=codebook.latent_dim,
        repeats=repeats,
        sum_form_seconds=sum_seconds,
        product_form_seconds=product_seconds,
        product_form_exponentials=codebook.size,
        max_abs_difference=float((summed - product).abs().max()),
    )
    logger.info(
        f"Composition speedup x{report.speedup:.2f} "
        f"(|G|={report.codebook_size}, D={report.latent_dim}, repeats={repeats})"
    )
    return report
