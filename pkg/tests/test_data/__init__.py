"""Tests for datasets and factor sampling."""
