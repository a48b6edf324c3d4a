"""Tests package for involute."""
