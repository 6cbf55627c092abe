"""
Semantics module.

Contains the relational interpretation of proof-structures:
- values: signed values, points, renamings and point predicates
- experiments: experiments built from seeds, results, induced pseudo-experiments
- typed_nets: MELL types, typed nets and typechecking
"""

from .experiments import CutPresent, Experiment, ExperimentSeed, build_experiment, result
from .values import Sign, Value

__all__ = [
    "CutPresent",
    "Experiment",
    "ExperimentSeed",
    "Sign",
    "Value",
    "build_experiment",
    "result",
]
