"""
Run lifecycle for one CLI invocation.

This module acts as the central controller between the command line and the
library, responsible for:
- Holding the resolved RunConfig and the application metadata.
- Mapping sweep and search chunks over a process pool (or inline).
- Looking results up in, and adding them to, the result cache.
- Emitting the final report as text or canonical JSON on stdout.
"""
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import Callable, Iterable, List, Optional, Tuple

from fuforge.config.config import get_app_paths, load_app_info
from fuforge.config.config_manager import RunConfig
from fuforge.db.cache_controller import ResultCache

logger = logging.getLogger(__name__)


def run_partitioned(func: Callable, chunks: Iterable, workers: int = 1) -> List:
    """
    Applies `func` to every chunk, in chunk order.

    Args:
        func: A module-level (picklable) function of one argument.
        chunks: The work items; their split never depends on `workers`.
        workers: 1 runs inline, more uses a process pool.

    Returns:
        The results, in the same order as the chunks.
    """
    chunks = list(chunks)
    if workers <= 1 or len(chunks) <= 1:
        return [func(chunk) for chunk in chunks]
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, chunks))


class ApplicationManager:
    """
    Manages the per-run services the command mixins rely on.

    Args:
        config: The resolved RunConfig.
        out: Stream for the report (stdout by default).
    """

    def __init__(self, config: RunConfig, out=None):
        self.config = config
        self.out = out or sys.stdout
        self.app_info = load_app_info()
        self._cache: Optional[ResultCache] = None
        self._started = time.perf_counter()

    # --- Workers ---

    @property
    def mapper(self) -> Optional[Callable]:
        """A map-like callable for the library, or None to run branches lazily inline."""
        if self.config.workers <= 1:
            return None
        return partial(run_partitioned, workers=self.config.workers)

    # --- Cache ---

    @property
    def cache(self) -> Optional[ResultCache]:
        if not self.config.use_cache or not self.config.cache_path:
            return None
        if self._cache is None:
            paths = get_app_paths(self.config.cache_path)
            self._cache = ResultCache(paths["CACHE_PATH"], self.app_info.get("version", "0"))
        return self._cache

    def cached(self, payload: dict, compute: Callable[[], dict],
               store: Callable[[dict], bool] = lambda result: True) -> Tuple[dict, bool]:
        """
        Returns the cached result for `payload`, computing and storing it on a miss.

        Args:
            payload: The canonical query description (hashed into the key).
            compute: Produces the JSON-serializable result.
            store: Decides whether a fresh result may be cached.

        Returns:
            (result, hit)
        """
        cache = self.cache
        if cache is None:
            return compute(), False
        key = ResultCache.key_for(payload)
        hit = cache.get(key)
        if hit is not None:
            logger.debug("cache hit for %s", key[:12])
            return hit, True
        result = compute()
        if store(result):
            cache.put(key, result)
        return result, False

    # --- Output ---

    def emit(self, record: dict, text_lines: Iterable[str]):
        """
        Writes the report. JSON output is canonical (sorted keys) so identical
        runs are byte-identical; wall_time is only added with --timing.
        """
        if self.config.timing:
            record = dict(record, wall_time=round(time.perf_counter() - self._started, 6))
        if self.config.output_format == "json":
            self.out.write(json.dumps(record, sort_keys=True) + "\n")
            return
        for line in text_lines:
            self.out.write(line + "\n")
        if self.config.timing:
            self.out.write(f"wall_time={record['wall_time']}\n")
