"""Rankin-Selberg coefficient algebra and zero-density toolkits at desk scale."""

__version__ = "0.1.0"
