"""
Generators module.

Contains seeded random generation of test material:
- random_net: random proof-structures and pseudo-experiments
"""

from .random_net import GenParams, gen_pseudo_experiment, gen_random

__all__ = [
    "GenParams",
    "gen_pseudo_experiment",
    "gen_random",
]
