import logging
import queue
import threading
import time
from collections import deque
from typing import Any, Callable, List, Optional, Sequence, Tuple

logger = logging.getLogger(__name__)

# Seconds the collector waits for any one job before giving up
RESULT_TIMEOUT = 600.0


class WorkPipeline:
    """
    Fan-out / fan-in worker pool over bounded queues.

    Architecture:
    1. Submission: jobs ``(job_id, payload)`` enter a bounded input queue
    2. Workers: N threads apply ``worker(payload)``
    3. Collection: results leave through an unbounded output queue and are
       re-ordered by job id, so the merged output never depends on timing
    """

    def __init__(
        self,
        worker: Callable[[Any], Any],
        workers: int = 4,
        name: str = "betahole",
        result_timeout: float = RESULT_TIMEOUT,
    ):
        if workers < 1:
            raise ValueError(f"Worker count must be positive, got {workers}")
        self.worker = worker
        self.workers = workers
        self.result_timeout = result_timeout

        # Backpressure on submission; results are never dropped
        self.input_queue: queue.Queue = queue.Queue(maxsize=workers * 2)
        self.output_queue: queue.Queue = queue.Queue()

        self.stages: List[threading.Thread] = [
            threading.Thread(target=self._work_stage, name=f"{name}-worker-{i}", daemon=True)
            for i in range(workers)
        ]

        self.stage_timings: deque = deque(maxlen=1000)
        self.running = False

    def start_pipeline(self) -> None:
        """Start all worker threads."""
        self.running = True
        for stage in self.stages:
            stage.start()
        logger.debug("Started %d pipeline workers", self.workers)

    def stop_pipeline(self) -> None:
        """Graceful shutdown: one sentinel per worker."""
        self.running = False
        for _ in self.stages:
            try:
                self.input_queue.put(None, timeout=1.0)
            except queue.Full:
                pass
        for stage in self.stages:
            stage.join(timeout=1.0)

    def _work_stage(self) -> None:
        while self.running:
            try:
                item = self.input_queue.get(timeout=0.1)
            except queue.Empty:
                continue
            if item is None:
                break

            job_id, payload = item
            start_time = time.perf_counter()
            try:
                result: Tuple[int, Any, Optional[BaseException]] = (job_id, self.worker(payload), None)
            except Exception as exc:  # surfaced to the collector, re-raised there
                logger.exception("Pipeline job %d failed", job_id)
                result = (job_id, None, exc)
            self.stage_timings.append(time.perf_counter() - start_time)
            self.output_queue.put(result)
            self.input_queue.task_done()

    def submit(self, job_id: int, payload: Any) -> None:
        self.input_queue.put((job_id, payload))

    def get_result(self, timeout: Optional[float] = None) -> Tuple[int, Any, Optional[BaseException]]:
        """
        Blocking retrieval of the next finished job.

        Raises:
            queue.Empty: nothing finished within ``timeout`` (default ``result_timeout``).
        """
        return self.output_queue.get(timeout=self.result_timeout if timeout is None else timeout)

    def map_ordered(self, payloads: Sequence[Any]) -> List[Any]:
        """Run every payload and return results in submission order."""
        self.start_pipeline()
        try:
            for job_id, payload in enumerate(payloads):
                self.submit(job_id, payload)
            results: List[Any] = [None] * len(payloads)
            failure: Optional[BaseException] = None
            for _ in payloads:
                job_id, value, exc = self.get_result()
                if exc is not None and failure is None:
                    failure = exc
                results[job_id] = value
        finally:
            self.stop_pipeline()
        if failure is not None:
            raise failure
        return results


def run_partitioned(worker: Callable[[Any], Any], payloads: Sequence[Any], jobs: int = 1) -> List[Any]:
    """``[worker(p) for p in payloads]``, on ``jobs`` threads when ``jobs > 1``."""
    if jobs <= 1 or len(payloads) <= 1:
        return [worker(p) for p in payloads]
    return WorkPipeline(worker, workers=min(jobs, len(payloads))).map_ordered(payloads)
