"""Destabilizing invariants of log Fano pairs, computed exactly."""

__version__ = "0.1.0"
