"""Tests for the symmetry codebook and its regularizers."""
