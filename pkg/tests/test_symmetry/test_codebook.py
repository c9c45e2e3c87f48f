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

from cfasl.exceptions import InvalidArgumentError
from cfasl.symmetry import (
    GroupElement,
    apply_symmetry,
    init_codebook,
    inverse_symmetry,
    latent_change,
)


class TestInitCodebook:
    def test_hundred_element_codebook(self):
        codebook = init_codebook(10, 10, 10, scale=0.01, seed=1)

        assert codebook.size == 100
        assert codebook.generators.shape == (10, 10, 10, 10)
        assert codebook.group_matrices().shape == (10, 10, 10, 10)

    def test_zero_scale_gives_identity_elements(self):
        codebook = init_codebook(3, 2, 4, scale=0.0, seed=1)

        assert torch.count_nonzero(codebook.generators) == 0
        expected = torch.eye(4).expand(3, 2, 4, 4)
        assert torch.equal(codebook.group_matrices(), expected)

    def test_same_seed_is_bit_identical(self):
        first = init_codebook(4, 3, 5, scale=0.01, seed=42)
        second = init_codebook(4, 3, 5, scale=0.01, seed=42)
        assert torch.equal(first.generators, second.generators)

    def test_different_seeds_differ(self):
        first = init_codebook(4, 3, 5, scale=0.01, seed=1)
        second = init_codebook(4, 3, 5, scale=0.01, seed=2)
        assert not torch.equal(first.generators, second.generators)

    def test_generator_spread_is_scale_over_dim(self):
        codebook = init_codebook(10, 10, 10, scale=1.0, seed=3)
        values = codebook.generators.detach()

        assert abs(values.mean().item()) < 0.01
        assert values.std().item() == pytest.approx(0.1, abs=0.01)

    @pytest.mark.parametrize(
        "sizes", [(0, 2, 3), (2, 0, 3), (2, 2, 0), (-1, 2, 3)]
    )
    def test_non_positive_sizes_rejected(self, sizes):
        with pytest.raises(InvalidArgumentError, match="must be >= 1"):
            init_codebook(*sizes, scale=0.01, seed=0)

    def test_latent_changes_shape(self):
        codebook = init_codebook(3, 2, 4, scale=0.5, seed=0)
        assert codebook.latent_changes(torch.randn(4)).shape == (3, 2, 4)
        assert codebook.latent_changes(torch.randn(5, 4)).shape == (5, 3, 2, 4)

    def test_element_is_exponential_of_generator(self):
        codebook = init_codebook(2, 2, 3, scale=0.5, seed=0)
        element = codebook.element(1, 0)
        assert torch.equal(element.source_algebra, codebook.generators[1, 0])
        torch.testing.assert_close(
            element.matrix, torch.linalg.matrix_exp(codebook.generators[1, 0].detach())
        )


class TestApplySymmetry:
    def test_identity_leaves_latent_unchanged(self):
        z = torch.randn(6)
        result = apply_symmetry(GroupElement.identity(6), z)
        assert torch.equal(result, z)

    def test_diagonal_scaling(self):
        algebra = torch.zeros(4, 4, dtype=torch.float64)
        algebra[0, 0] = math.log(2.0)
        e1 = torch.tensor([1.0, 0.0, 0.0, 0.0], dtype=torch.float64)

        result = apply_symmetry(GroupElement.from_algebra(algebra), e1)
        torch.testing.assert_close(result, 2.0 * e1)

    def test_inverse_recovers_latent(self):
        generator = torch.Generator().manual_seed(0)
        algebra = torch.randn(5, 5, generator=generator) * 0.2
        g = GroupElement.from_algebra(algebra)
        z = torch.randn(5, generator=generator)

        recovered = apply_symmetry(inverse_symmetry(g), apply_symmetry(g, z))
        assert (recovered - z).abs().max() < 1e-5

    def test_batched_latents(self):
        g = GroupElement.from_algebra(torch.randn(3, 3) * 0.1)
        z = torch.randn(7, 3)
        result = apply_symmetry(g, z)
        torch.testing.assert_close(result, z @ g.matrix.T)

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(InvalidArgumentError, match="trailing dimension 4"):
            apply_symmetry(GroupElement.identity(4), torch.zeros(3))

    def test_latent_change_of_identity_is_zero(self):
        z = torch.randn(4)
        assert torch.equal(latent_change(GroupElement.identity(4), z), torch.zeros(4))


class TestInverseSymmetry:
    def test_identity_inverse(self):
        inverse = inverse_symmetry(GroupElement.identity(3))
        assert torch.equal(inverse.matrix, torch.eye(3))

    @pytest.mark.parametrize("seed", range(5))
    def test_group_axiom(self, seed):
        generator = torch.Generator().manual_seed(seed)
        algebra = torch.randn(6, 6, generator=generator)
        algebra = algebra / torch.linalg.matrix_norm(algebra, ord=2)
        g = GroupElement.from_algebra(algebra)

        product = g.matrix @ inverse_symmetry(g).matrix
        assert (product - torch.eye(6)).abs().max() < 1e-5

    def test_double_inverse_restores_algebra(self):
        g = GroupElement.from_algebra(torch.randn(4, 4))
        twice = inverse_symmetry(inverse_symmetry(g))
        assert torch.equal(twice.source_algebra, g.source_algebra)
