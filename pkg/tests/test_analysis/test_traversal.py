# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

import pytest
import torch

from cfasl.analysis import (
    composite_decomposition,
    dimension_swap_traversal,
    sequential_symmetry_replay,
)
from cfasl.exceptions import InvalidArgumentError
from cfasl.vae import CFASLModel


def pinned_model(sections_on: bool) -> CFASLModel:
    """Model with diagonal generators and every switch forced on or off."""
    model = CFASLModel(16, 1, latent_dim=3, num_sections=3, elements_per_section=2)
    generator = torch.Generator().manual_seed(5)
    with torch.no_grad():
        values = torch.randn(3, 2, 3, generator=generator) * 0.3
        model.codebook.generators.copy_(torch.diag_embed(values))
        model.heads.section_weight.zero_()
        bias = [-30.0, 30.0] if sections_on else [30.0, -30.0]
        model.heads.section_bias.copy_(torch.tensor(bias).expand(3, 2))
    return model


@pytest.fixture
def pair(small_synthetic):
    return small_synthetic[0][0], small_synthetic[77][0]


class TestDimensionSwapTraversal:
    def test_full_swap_reaches_target(self, pair):
        model = pinned_model(True)
        x1, x2 = pair
        record = dimension_swap_traversal(model, x1, x2, num_dims=3)

        assert sorted(record.edited_dims) == [0, 1, 2]
        assert len(record.decoded_images) == 4
        target = model.represent(x2.unsqueeze(0))[0]
        torch.testing.assert_close(record.edited_latents[-1], target)

    def test_edits_are_cumulative(self, pair):
        record = dimension_swap_traversal(pinned_model(True), *pair, num_dims=2)
        first, second = record.edited_latents
        changed = (first != record.source_latent).nonzero().flatten().tolist()
        assert set(changed) <= {record.edited_dims[0]}
        assert second[record.edited_dims[0]] == first[record.edited_dims[0]]

    def test_zero_dims_decodes_source(self, pair):
        record = dimension_swap_traversal(pinned_model(True), *pair, num_dims=0)
        assert record.edited_latents == []
        assert len(record.decoded_images) == 1
        assert record.decoded_images[0].shape == (1, 16, 16)

    def test_metadata(self, pair):
        record = dimension_swap_traversal(pinned_model(True), *pair, num_dims=1)
        metadata = record.metadata()
        assert len(metadata["source_latent"]) == 3
        assert len(metadata["edited_latents"]) == 1

    def test_num_dims_checked(self, pair):
        with pytest.raises(InvalidArgumentError, match=r"num_dims must be in \[0, 3\]"):
            dimension_swap_traversal(pinned_model(True), *pair, num_dims=4)

    def test_batch_rejected(self, small_synthetic):
        images = small_synthetic.get_images([0, 1])
        with pytest.raises(InvalidArgumentError, match="expected one image"):
            dimension_swap_traversal(pinned_model(True), images, images, num_dims=1)


class TestCompositeDecomposition:
    def test_no_active_sections(self, pair):
        record = composite_decomposition(pinned_model(False), *pair)

        assert record.active_sections == []
        assert len(record.frames) == 1
        assert record.final_mse < 1e-12

    def test_sequential_matches_single_shot(self, pair):
        record = composite_decomposition(pinned_model(True), *pair)

        assert record.active_sections == [0, 1, 2]
        assert record.switch_values == [1.0, 1.0, 1.0]
        assert len(record.frames) == 4
        assert len(record.latents) == 4
        assert record.final_mse < 1e-8
        assert record.metadata()["final_mse"] == record.final_mse


class TestSequentialReplay:
    def test_two_images(self, small_synthetic):
        images = small_synthetic.get_images([3, 40])
        record = sequential_symmetry_replay(pinned_model(True), images)

        assert len(record.replay_images) == 1
        assert record.replay_images[0].shape == (1, 16, 16)
        assert len(record.replay_mse) == 1
        assert len(record.reconstruction_mse) == 1
        assert record.active_sections == [[0, 1, 2]]

    def test_list_input(self, small_synthetic):
        frames = [small_synthetic[i][0] for i in (1, 9, 17)]
        record = sequential_symmetry_replay(pinned_model(False), frames)

        assert len(record.replay_mse) == 2
        assert record.active_sections == [[], []]
        # With no active section the replay is the plain reconstruction of the previous frame
        assert all(error >= 0 for error in record.replay_mse)

    def test_single_image_rejected(self, small_synthetic):
        with pytest.raises(InvalidArgumentError, match=">= 2 images"):
            sequential_symmetry_replay(pinned_model(True), small_synthetic.get_images([0]))
