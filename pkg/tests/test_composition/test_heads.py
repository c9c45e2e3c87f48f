# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

import math

import pytest
import torch

from cfasl.composition import (
    AttentionHeads,
    ChangeTarget,
    PairStatistics,
    change_target,
    element_attention,
    prediction_loss,
)
from cfasl.exceptions import InvalidArgumentError
from cfasl.symmetry import init_codebook


def stats_for(mu1, mu2) -> PairStatistics:
    mu1 = torch.as_tensor(mu1, dtype=torch.float32)
    mu2 = torch.as_tensor(mu2, dtype=torch.float32)
    return PairStatistics(mu1, torch.ones_like(mu1), mu2, torch.ones_like(mu2))


def heads_with_section_logits(logits: list[list[float]]) -> AttentionHeads:
    """Heads whose switch logits ignore the input and equal the given rows."""
    bias = torch.tensor(logits)
    heads = AttentionHeads(bias.shape[0], 1, bias.shape[0])
    with torch.no_grad():
        heads.section_weight.zero_()
        heads.section_bias.copy_(bias)
    return heads


class TestPairStatistics:
    def test_concat_layout(self):
        stats = PairStatistics(
            torch.tensor([1.0]), torch.tensor([2.0]), torch.tensor([3.0]), torch.tensor([4.0])
        )
        assert stats.concat.tolist() == [1.0, 2.0, 3.0, 4.0]
        assert stats.latent_dim == 1

    def test_from_log_var(self):
        zeros = torch.zeros(3)
        stats = PairStatistics.from_log_var(zeros, zeros, zeros, torch.full((3,), 2.0))
        assert torch.equal(stats.sigma1, torch.ones(3))
        torch.testing.assert_close(stats.sigma2, torch.full((3,), math.e))

    def test_shape_mismatch_rejected(self):
        with pytest.raises(InvalidArgumentError, match="expected"):
            PairStatistics(torch.zeros(3), torch.ones(3), torch.zeros(4), torch.ones(4))

    def test_non_positive_sigma_rejected(self):
        with pytest.raises(InvalidArgumentError, match="strictly positive"):
            PairStatistics(torch.zeros(2), torch.zeros(2), torch.zeros(2), torch.ones(2))


class TestElementAttention:
    def test_single_element_sections(self):
        codebook = init_codebook(3, 1, 3, scale=0.5, seed=0)
        heads = AttentionHeads(3, 1, 3)
        algebra, attention = element_attention(
            stats_for(torch.randn(3), torch.randn(3)), heads, codebook
        )

        assert torch.equal(attention, torch.ones(3, 1))
        torch.testing.assert_close(algebra, codebook.generators[:, 0])

    def test_zero_heads_give_uniform_attention(self):
        codebook = init_codebook(2, 4, 2, scale=0.5, seed=0)
        heads = AttentionHeads(2, 4, 2)
        with torch.no_grad():
            heads.element_weight.zero_()
            heads.element_bias.zero_()

        algebra, attention = element_attention(
            stats_for([0.3, -1.0], [2.0, 0.1]), heads, codebook
        )
        torch.testing.assert_close(attention, torch.full((2, 4), 0.25))
        torch.testing.assert_close(algebra, codebook.generators.mean(dim=1))

    def test_rows_sum_to_one(self, generator):
        codebook = init_codebook(4, 5, 4, scale=0.5, seed=0)
        heads = AttentionHeads(4, 5, 4, init_std=1.0)
        stats = stats_for(
            torch.randn(6, 4, generator=generator), torch.randn(6, 4, generator=generator)
        )
        algebra, attention = element_attention(stats, heads, codebook)

        assert algebra.shape == (6, 4, 4, 4)
        assert attention.shape == (6, 4, 5)
        torch.testing.assert_close(attention.sum(dim=-1), torch.ones(6, 4))

    def test_gradient_reaches_heads_and_codebook(self):
        codebook = init_codebook(2, 3, 2, scale=0.5, seed=0)
        heads = AttentionHeads(2, 3, 2, init_std=0.5)
        algebra, _ = element_attention(stats_for([1.0, 0.0], [0.0, 1.0]), heads, codebook)
        algebra.square().sum().backward()

        assert codebook.generators.grad is not None
        assert heads.element_weight.grad.abs().sum() > 0

    def test_dimension_mismatch_rejected(self):
        codebook = init_codebook(3, 2, 3, scale=0.5, seed=0)
        heads = AttentionHeads(3, 2, 3)
        with pytest.raises(InvalidArgumentError, match="codebook has D=3"):
            element_attention(stats_for([0.0, 0.0], [0.0, 0.0]), heads, codebook)


class TestChangeTarget:
    def test_identical_means_give_no_change(self):
        target = change_target(stats_for([0.5, -0.2, 3.0], [0.5, -0.2, 3.0]), 0.5)
        assert target.target.tolist() == [0.0, 0.0, 0.0]

    def test_positive_difference_above_threshold(self):
        target = change_target(stats_for([0.6, 0.1, 0.0], [0.0, 0.0, 0.0]), 0.5)
        assert target.labels.tolist() == [1, 0, 0]

    def test_negative_difference_uses_magnitude(self):
        target = change_target(stats_for([-0.6, 0.0, 0.0], [0.0, 0.0, 0.0]), 0.5)
        assert target.labels.tolist() == [1, 0, 0]

    def test_target_carries_no_gradient(self):
        mu1 = torch.tensor([1.0, 0.0], requires_grad=True)
        stats = PairStatistics(mu1, torch.ones(2), torch.zeros(2), torch.ones(2))
        assert not change_target(stats, 0.2).target.requires_grad

    @pytest.mark.parametrize("threshold", [0.0, -0.5])
    def test_non_positive_threshold_rejected(self, threshold):
        with pytest.raises(InvalidArgumentError, match="threshold must be > 0"):
            change_target(stats_for([0.0], [0.0]), threshold)


class TestPredictionLoss:
    def test_saturated_correct_logits(self):
        heads = heads_with_section_logits([[0.0, 20.0], [20.0, 0.0], [0.0, 20.0]])
        target = ChangeTarget(torch.tensor([1.0, 0.0, 1.0]))
        loss = prediction_loss(stats_for(torch.zeros(3), torch.zeros(3)), heads, target)
        assert loss.item() < 3e-6

    def test_zero_logits_cost_log_two_per_section(self):
        heads = heads_with_section_logits([[0.0, 0.0]] * 4)
        target = ChangeTarget(torch.tensor([1.0, 0.0, 0.0, 1.0]))
        loss = prediction_loss(stats_for(torch.zeros(4), torch.zeros(4)), heads, target)
        assert loss.item() == pytest.approx(4 * math.log(2.0), rel=1e-6)

    def test_closed_form_binary_cross_entropy(self):
        heads = heads_with_section_logits([[1.0, 0.0], [0.0, 1.0]])
        target = ChangeTarget(torch.tensor([1.0, 0.0]))
        loss = prediction_loss(stats_for(torch.zeros(2), torch.zeros(2)), heads, target)

        def neg_log_sigmoid(x: float) -> float:
            return -math.log(1.0 / (1.0 + math.exp(-x)))

        # Both sections put logit margin -1 on their true class
        expected = neg_log_sigmoid(-1.0) + neg_log_sigmoid(-1.0)
        assert loss.item() == pytest.approx(expected, rel=1e-6)

    def test_batch_mean_of_section_sums(self):
        heads = heads_with_section_logits([[0.0, 0.0], [0.0, 0.0]])
        target = ChangeTarget(torch.zeros(5, 2))
        loss = prediction_loss(stats_for(torch.zeros(5, 2), torch.zeros(5, 2)), heads, target)
        assert loss.item() == pytest.approx(2 * math.log(2.0), rel=1e-6)

    def test_target_length_must_match_sections(self):
        heads = heads_with_section_logits([[0.0, 0.0], [0.0, 0.0]])
        with pytest.raises(InvalidArgumentError, match=r"\|S\| = D"):
            prediction_loss(
                stats_for(torch.zeros(2), torch.zeros(2)),
                heads,
                ChangeTarget(torch.zeros(3)),
            )


class TestPredictionLossGradients:
    @pytest.mark.parametrize("seed", range(20))
    def test_gradients_match_finite_differences(self, seed):
        generator = torch.Generator().manual_seed(seed)
        mu1, log_var1, mu2, log_var2 = (
            torch.randn(4, 3, generator=generator, dtype=torch.float64) for _ in range(4)
        )
        weight = torch.randn(3, 12, 2, generator=generator, dtype=torch.float64) * 0.5
        target = change_target(PairStatistics.from_log_var(mu1, log_var1, mu2, log_var2), 0.5)

        def as_function(mu1, log_var1, mu2, log_var2, weight):
            heads = AttentionHeads(3, 2, 3).double()
            del heads.section_weight
            heads.section_weight = weight
            stats = PairStatistics.from_log_var(mu1, log_var1, mu2, log_var2)
            return prediction_loss(stats, heads, target)

        inputs = tuple(
            t.requires_grad_(True) for t in (mu1, log_var1, mu2, log_var2, weight)
        )
        assert torch.autograd.gradcheck(as_function, inputs)
