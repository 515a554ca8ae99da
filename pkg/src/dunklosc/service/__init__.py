"""HTTP service exposing the oscillator computations."""

from .app import app

__all__ = ["app"]
