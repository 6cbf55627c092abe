"""
Pipelines module.

Contains batch runs over generated nets:
- roundtrip: expansion then rebuilding of random nets, with a DuckDB report
"""

from .roundtrip import RoundTripPipeline, RoundTripSettings, run_roundtrip_pipeline

__all__ = [
    "RoundTripPipeline",
    "RoundTripSettings",
    "run_roundtrip_pipeline",
]
