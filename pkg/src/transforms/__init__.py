"""
Transforms module.

Contains the Taylor expansion and its inversion:
- taylor: pseudo-experiments and expansion terms
- arithmetic: base-k reading of expansion terms, measures and basis
- components: connected components relative to a boundary
- rebuild: level-by-level rebuilding of boxes
"""

from .rebuild import rebuild, rebuild_from_pair
from .taylor import ExpansionTerm, PseudoExperiment, expand

__all__ = [
    "ExpansionTerm",
    "PseudoExperiment",
    "expand",
    "rebuild",
    "rebuild_from_pair",
]
