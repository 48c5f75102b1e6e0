"""
Betahole Concurrency Module.

Threaded fan-out with deterministic merge, used to split Lyndon enumeration on
word prefixes and to sweep dimension grids.
"""

from .pipeline import WorkPipeline, run_partitioned

__all__ = ["WorkPipeline", "run_partitioned"]
