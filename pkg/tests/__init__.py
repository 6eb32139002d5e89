"""Tests for goldfib."""
