"""
On-disk store for deterministic sweep results: c1 calibrations and LP gamma tables.

An entry is one JSON file named by the SHA-256 of its key. The key is the result
kind followed by the canonical JSON of its parameters, so any parameter change
misses. DataFrames inside a payload survive the round trip in 'split' layout.
"""
import hashlib
import json
import os
from datetime import datetime
from typing import Any, Callable, Dict, Iterator, Optional, Tuple

import pandas as pd

from utils.logger import setup_logger

logger = setup_logger(__name__)

CACHE_DIR = os.path.join(os.path.dirname(os.path.dirname(__file__)), 'data', 'cache')

# Bump when the layout of cached payloads changes
SCHEMA_VERSION = 1

_FRAME_TAG = '_frame'

CACHED_KINDS = ('calibration', 'gamma_table')


def _encode(data: Any) -> Any:
    if isinstance(data, pd.DataFrame):
        return {_FRAME_TAG: data.to_dict(orient='split')}
    if isinstance(data, dict):
        return {k: _encode(v) for k, v in data.items()}
    return data


def _decode(data: Any) -> Any:
    if isinstance(data, dict):
        if _FRAME_TAG in data:
            split = data[_FRAME_TAG]
            return pd.DataFrame(split['data'], index=split['index'], columns=split['columns'])
        return {k: _decode(v) for k, v in data.items()}
    return data


def kind_of(key: str) -> str:
    """Result kind of a key built by make_key"""
    return key.split(':', 1)[0]


class ResultCache:
    """Sweep results keyed by kind and parameters"""

    def __init__(self, cache_dir: str = CACHE_DIR, schema_version: int = SCHEMA_VERSION):
        self.cache_dir = cache_dir
        self.schema_version = schema_version
        os.makedirs(self.cache_dir, exist_ok=True)

    @staticmethod
    def make_key(kind: str, params: Dict[str, Any]) -> str:
        return f"{kind}:" + json.dumps(params, sort_keys=True, default=str)

    def _path(self, key: str) -> str:
        digest = hashlib.sha256(key.encode('utf-8')).hexdigest()
        return os.path.join(self.cache_dir, f"{digest}.json")

    def _entries(self) -> Iterator[Tuple[str, Optional[Dict[str, Any]]]]:
        """(path, entry) for every JSON file; entry is None when unreadable"""
        for filename in sorted(os.listdir(self.cache_dir)):
            if not filename.endswith('.json'):
                continue
            path = os.path.join(self.cache_dir, filename)
            try:
                with open(path, 'r', encoding='utf-8') as f:
                    yield path, json.load(f)
            except (OSError, json.JSONDecodeError) as e:
                logger.warning(f"Unreadable cache file {filename}: {e}")
                yield path, None

    def get(self, key: str) -> Optional[Any]:
        """
        Cached payload for key.

        Returns:
            The payload with DataFrames restored, or None when missing, unreadable,
            written under another schema version or colliding with another key
        """
        path = self._path(key)
        if not os.path.exists(path):
            logger.debug(f"Cache miss: {key}")
            return None
        try:
            with open(path, 'r', encoding='utf-8') as f:
                entry = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            logger.warning(f"Cache read error for {key}: {e}")
            return None
        if entry.get('schema_version') != self.schema_version or entry.get('key') != key:
            logger.debug(f"Cache stale: {key}")
            return None
        logger.debug(f"Cache hit: {key}")
        return _decode(entry.get('data'))

    def set(self, key: str, data: Any) -> bool:
        """Store a payload; False when it cannot be serialized"""
        entry = {
            'key': key,
            'kind': kind_of(key),
            'schema_version': self.schema_version,
            'timestamp': datetime.now().isoformat(),
            'data': _encode(data)
        }
        try:
            text = json.dumps(entry, default=str)
        except (TypeError, ValueError) as e:
            logger.warning(f"Cache write error for {key}: {e}")
            return False
        with open(self._path(key), 'w', encoding='utf-8') as f:
            f.write(text)
        logger.debug(f"Cache set: {key}")
        return True

    def fetch(self, kind: str, params: Dict[str, Any], compute: Callable[[], Any]) -> Any:
        """Cached result for (kind, params), or compute() stored under that key"""
        key = self.make_key(kind, params)
        result = self.get(key)
        if result is not None:
            logger.info(f"Using cached {kind} result")
            return result
        result = compute()
        self.set(key, result)
        return result

    def summary(self) -> pd.DataFrame:
        """Columns: kind, entries, stale, size_bytes"""
        rows: Dict[str, Dict[str, Any]] = {}
        for path, entry in self._entries():
            kind = (entry.get('kind') or kind_of(entry.get('key', '?'))) if entry else 'unreadable'
            row = rows.setdefault(kind, {'kind': kind, 'entries': 0, 'stale': 0, 'size_bytes': 0})
            row['entries'] += 1
            row['size_bytes'] += os.path.getsize(path)
            if entry is None or entry.get('schema_version') != self.schema_version:
                row['stale'] += 1
        return pd.DataFrame(list(rows.values()), columns=['kind', 'entries', 'stale', 'size_bytes'])

    def clear(self, kind: Optional[str] = None) -> int:
        """Delete the entries of one kind, or every entry when kind is None; returns the count"""
        removed = 0
        for path, entry in list(self._entries()):
            if kind is not None:
                entry_kind = (entry.get('kind') or kind_of(entry.get('key', ''))) if entry else None
                if entry_kind != kind:
                    continue
            os.remove(path)
            removed += 1
        logger.info(f"Removed {removed} cache entries" + (f" of kind {kind}" if kind else ""))
        return removed


_cache = None


def get_cache() -> ResultCache:
    """Process-wide cache under data/cache"""
    global _cache
    if _cache is None:
        _cache = ResultCache()
    return _cache
