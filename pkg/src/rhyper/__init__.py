"""Ribbon hypergraphs, their state-sum representations and IBL-infinity checks."""

__version__ = "0.1.0"
