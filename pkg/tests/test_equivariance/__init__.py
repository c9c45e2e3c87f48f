"""Tests for equivariance losses and the total objective."""
