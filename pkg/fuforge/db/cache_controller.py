import hashlib
import json
import logging
import os
from typing import Optional

logger = logging.getLogger(__name__)


class ResultCache:
    """Manages the append-only JSON-lines cache of search results."""

    def __init__(self, path: str, version: str):
        """
        Opens the cache and indexes the records written by this version.

        Args:
            path (str): The absolute path to the .jsonl cache file.
            version (str): The application version; records stamped with any
                other version are stale and ignored.
        """
        self.path = path
        self.version = version
        self._index = {}
        self._load()

    @staticmethod
    def key_for(payload: dict) -> str:
        """Hash of the canonical JSON form of a query."""
        canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()

    def _load(self):
        """Reads every line once; unreadable lines are skipped with a warning."""
        if not os.path.exists(self.path):
            return
        stale = 0
        try:
            with open(self.path, "r", encoding="utf-8") as f:
                for lineno, line in enumerate(f, start=1):
                    line = line.strip()
                    if not line:
                        continue
                    try:
                        record = json.loads(line)
                        key, version = record["key"], record["version"]
                    except (json.JSONDecodeError, KeyError, TypeError) as e:
                        logger.warning("Skipping corrupt cache line %d in '%s': %s", lineno, self.path, e)
                        continue
                    if version != self.version:
                        stale += 1
                        continue
                    self._index[key] = record["result"]
        except OSError as e:
            logger.warning("Could not read cache '%s': %s", self.path, e)
        if stale:
            logger.debug("Ignored %d stale cache records", stale)

    def get(self, key: str) -> Optional[dict]:
        return self._index.get(key)

    def __contains__(self, key: str) -> bool:
        return key in self._index

    def __len__(self) -> int:
        return len(self._index)

    def put(self, key: str, result: dict):
        """
        Appends a record and indexes it.

        Args:
            key (str): The query hash from `key_for`.
            result (dict): The JSON-serializable result.
        """
        self._index[key] = result
        record = {"key": key, "version": self.version, "result": result}
        try:
            os.makedirs(os.path.dirname(self.path) or ".", exist_ok=True)
            with open(self.path, "a", encoding="utf-8") as f:
                f.write(json.dumps(record, sort_keys=True) + "\n")
        except OSError as e:
            logger.error("Could not write to cache '%s': %s", self.path, e)
