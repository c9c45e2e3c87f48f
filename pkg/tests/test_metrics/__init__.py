"""Tests for the FVM and multi-factor FVM scores."""
