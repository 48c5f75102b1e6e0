import logging
import threading
from typing import Callable, List

logger = logging.getLogger(__name__)


class EnclosureCache:
    """
    Ladder of dyadic root enclosures shared by every thread using one base.

    Level ``k`` stores the integer ``a`` such that the root lies in the open
    interval ``(a / 2**k, (a + 1) / 2**k)``. Levels are only ever appended and
    each entry is an immutable int, so readers never take the lock: they read
    optimistically and fall back to the locked path on a miss or when a
    concurrent extension bumped the version while they were reading.
    """

    def __init__(self, refine: Callable[[int, int], int], seed: int = 1):
        # refine(a, k) -> numerator at level k + 1
        self._refine = refine
        self._levels: List[int] = [seed]
        self._version = 0
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._levels)

    @property
    def version(self) -> int:
        return self._version

    def get(self, level: int) -> int:
        """Thread-safe lookup; refines on demand up to ``level``."""
        if level < 0:
            raise ValueError(f"Enclosure level must be nonnegative, got {level}")

        # 1. Optimistic read
        start_version = self._version
        levels = self._levels
        if level < len(levels):
            value = levels[level]
            if self._version == start_version:
                return value

        # 2. Locked extension
        with self._lock:
            levels = self._levels
            if len(levels) <= level:
                logger.debug("Refining enclosure from level %d to %d", len(levels) - 1, level)
            while len(levels) <= level:
                self._version += 1  # Invalidate readers
                k = len(levels) - 1
                levels.append(self._refine(levels[k], k))
                self._version += 1
            return levels[level]
