"""Tests for configuration, checkpoints and the training loop."""
