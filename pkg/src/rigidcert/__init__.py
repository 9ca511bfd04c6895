"""Exact verification engine for dual certificates of objects with an invertible power."""
