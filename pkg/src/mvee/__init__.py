"""Build-anomaly detection and multi-version experimental result tracking.

Compares the compiled assembly of marked code sections across builds,
classifies differences against a control-flow-aware equivalence relation,
tracks every observed compiled variant in a per-method version graph, and
keeps benchmark results for all currently relevant versions so reports never
silently mix or drop compiled versions.
"""

__version__ = "0.1.0"
