"""
Betahole Memory Module.

Shared, thread-safe refinement state:
1. EnclosureCache (dyadic root enclosures, optimistic reads)
"""

from .cache import EnclosureCache

__all__ = ["EnclosureCache"]
