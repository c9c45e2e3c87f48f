"""Tests for attention, switching and composite symmetries."""
