"""Tests for latent analyses and exports."""
