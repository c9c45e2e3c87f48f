# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

import pydantic
import pytest
import torch

from cfasl.data import matching_rows, random_query, sample_with_fixed_factors
from cfasl.exceptions import InvalidArgumentError
from cfasl.types import FactorQuery


class TestMatchingRows:
    def test_rows_share_fixed_values(self, small_synthetic):
        query = FactorQuery(fixed_factors=(0, 1), fixed_values=(1, 3))
        rows = matching_rows(small_synthetic, query)

        assert len(rows) == 8
        assert (small_synthetic.factors[rows, 0] == 1).all()
        assert (small_synthetic.factors[rows, 1] == 3).all()

    def test_empty_query_matches_everything(self, small_synthetic):
        assert len(matching_rows(small_synthetic, FactorQuery())) == len(small_synthetic)

    def test_factor_index_checked(self, small_synthetic):
        query = FactorQuery(fixed_factors=(5,), fixed_values=(0,))
        with pytest.raises(InvalidArgumentError, match="factor index 5 out of range"):
            matching_rows(small_synthetic, query)

    def test_value_checked(self, small_synthetic):
        query = FactorQuery(fixed_factors=(0,), fixed_values=(2,))
        with pytest.raises(InvalidArgumentError, match="out of range for factor 'scale'"):
            matching_rows(small_synthetic, query)


class TestSampleWithFixedFactors:
    def test_thousand_draws_respect_query(self, small_synthetic, generator):
        query = FactorQuery.from_mapping({2: 5})
        images, factors = sample_with_fixed_factors(small_synthetic, query, 1000, generator)

        assert images.shape == (1000, 1, 16, 16)
        assert (factors[:, 2] == 5).all()
        # Free factors still vary
        assert len(factors[:, 0].unique()) == 2
        assert len(factors[:, 1].unique()) == 8

    def test_images_match_factor_rows(self, small_synthetic, generator):
        query = FactorQuery.from_mapping({0: 1})
        images, factors = sample_with_fixed_factors(small_synthetic, query, 20, generator)
        for image, row in zip(images, factors):
            expected = small_synthetic.get_images([small_synthetic.factor_index(row)])[0]
            assert torch.equal(image, expected)

    def test_seeded(self, small_synthetic):
        query = FactorQuery.from_mapping({1: 2})
        first = sample_with_fixed_factors(
            small_synthetic, query, 10, torch.Generator().manual_seed(1)
        )
        second = sample_with_fixed_factors(
            small_synthetic, query, 10, torch.Generator().manual_seed(1)
        )
        assert torch.equal(first[1], second[1])

    def test_count_must_be_positive(self, small_synthetic):
        with pytest.raises(InvalidArgumentError, match="n must be >= 1"):
            sample_with_fixed_factors(small_synthetic, FactorQuery(), 0)

    def test_no_matching_rows(self, small_synthetic):
        partial = small_synthetic.subset(torch.nonzero(small_synthetic.factors[:, 0] == 0).flatten())
        with pytest.raises(InvalidArgumentError, match="no rows match"):
            sample_with_fixed_factors(partial, FactorQuery.from_mapping({0: 1}), 4)


class TestRandomQuery:
    def test_distinct_sorted_factors(self, small_synthetic, generator):
        for _ in range(50):
            query = random_query(small_synthetic, 2, generator)
            assert len(set(query.fixed_factors)) == 2
            assert list(query.fixed_factors) == sorted(query.fixed_factors)
            for factor, value in query.as_mapping().items():
                assert 0 <= value < small_synthetic.factor_sizes[factor]

    def test_count_checked(self, small_synthetic):
        with pytest.raises(InvalidArgumentError, match="num_fixed"):
            random_query(small_synthetic, 4)


class TestFactorQuery:
    def test_lengths_must_match(self):
        with pytest.raises(pydantic.ValidationError, match="same length"):
            FactorQuery(fixed_factors=(0, 1), fixed_values=(0,))

    def test_duplicate_factors(self):
        with pytest.raises(pydantic.ValidationError, match="distinct"):
            FactorQuery(fixed_factors=(1, 1), fixed_values=(0, 0))
