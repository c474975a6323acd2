"""Rendering for dislokit CSV outputs.

These scripts only parse, fit and draw; every number they print is taken
from (or least-squares fitted to) the input files, never recomputed.
"""

__version__ = "0.1.0"
