"""
Process pool for batch verification.

Tasks are independent and carry only picklable identifiers; results come back
in submission order whatever the scheduling.
"""

import logging
import multiprocessing as mp
import sys
import traceback
from typing import Callable, Iterable, List, Optional, TypeVar

import psutil
from tqdm import tqdm

from src.utils.config import Config, get_config
from src.utils.logging_setup import setup_logging

T = TypeVar("T")
R = TypeVar("R")


def default_jobs() -> int:
    """Configured job count, else the number of physical cores"""
    jobs = get_config("pipeline.jobs")
    if jobs:
        return max(1, int(jobs))
    return psutil.cpu_count(logical=False) or psutil.cpu_count() or 1


def _worker_init(level: int, engine: dict):
    Config.override("engine", engine)
    setup_logging(logging.getLevelName(level))


class VerificationPool:
    def __init__(self, jobs: Optional[int] = None, start_method: Optional[str] = None,
                 progress: Optional[bool] = None):
        self.logger = logging.getLogger("Pipeline")
        self.jobs = max(1, int(jobs)) if jobs else default_jobs()
        self.start_method = start_method or get_config("pipeline.start_method", "spawn")
        if progress is None:
            progress = bool(get_config("pipeline.progress", True))
        self.progress = progress and sys.stderr.isatty()
        self._pool = None

    def __enter__(self) -> "VerificationPool":
        if self.jobs > 1:
            try:
                context = mp.get_context(self.start_method)
            except ValueError:
                self.logger.warning(f"Start method {self.start_method!r} unavailable, using spawn")
                context = mp.get_context("spawn")
            level = logging.getLogger().getEffectiveLevel()
            # workers reload the YAML files, so carry over in-process overrides
            engine = dict(get_config("engine", {}) or {})
            self._pool = context.Pool(self.jobs, initializer=_worker_init, initargs=(level, engine))
            self.logger.info(f"Started {self.jobs} workers ({context.get_start_method()})")
        return self

    def __exit__(self, exc_type, exc, tb):
        self.close(terminate=exc_type is not None)
        return False

    def close(self, terminate: bool = False):
        if self._pool is not None:
            if terminate:
                self._pool.terminate()
            else:
                self._pool.close()
            self._pool.join()
            self._pool = None
            self.logger.info("Workers stopped")

    def map_ordered(self, fn: Callable[[T], R], items: Iterable[T], desc: str = "tasks") -> List[R]:
        """fn over items; inline when jobs == 1, otherwise imap across the pool"""
        items = list(items)
        if self._pool is None:
            results = map(fn, items)
        else:
            results = self._pool.imap(fn, items)
        collected = []
        with tqdm(total=len(items), desc=desc, file=sys.stderr, disable=not self.progress) as bar:
            try:
                for result in results:
                    collected.append(result)
                    bar.update(1)
            except Exception as e:
                self.logger.error(f"Error in pool: {e}")
                self.logger.error(traceback.format_exc())
                raise
        return collected
