"""Tests for the VAE networks and objectives."""
