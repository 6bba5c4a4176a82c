"""Reconstruct straight-line routes from the timing and distance information
that threat-triggered jamming gives away, and simulate that information."""

__version__ = "0.1.0"
