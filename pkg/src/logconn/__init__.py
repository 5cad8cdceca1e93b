"""Rank-2 logarithmic connections on the projective line.

Fuchsian systems and their cubic-surface invariants, gauge and elementary
transformations, the four-pole (p, q) chart and the Garnier normal form.
"""

__version__ = "0.1.0"
