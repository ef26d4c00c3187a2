"""
In-process cache for write-once computation results.

Universal Witt polynomial tables and distinguished element families are
expensive to build and never change once built.
"""

import threading
from functools import wraps
from typing import Any, Callable, Dict, Hashable, Optional

from loguru import logger


class ComputationCache:
    """Thread-safe write-once key/value store with hit statistics."""

    def __init__(self):
        self._store: Dict[Hashable, Any] = {}
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def get(self, key: Hashable) -> Optional[Any]:
        """Get cached value by key."""
        with self._lock:
            if key in self._store:
                self.hits += 1
                return self._store[key]
            self.misses += 1
            return None

    def set(self, key: Hashable, value: Any) -> Any:
        """Store a value; the first writer wins."""
        with self._lock:
            return self._store.setdefault(key, value)

    def exists(self, key: Hashable) -> bool:
        with self._lock:
            return key in self._store

    def clear(self, namespace: Optional[str] = None) -> int:
        """Drop entries, optionally only one namespace."""
        with self._lock:
            if namespace is None:
                count = len(self._store)
                self._store.clear()
                return count
            keys = [k for k in self._store if isinstance(k, tuple) and k and k[0] == namespace]
            for key in keys:
                del self._store[key]
            return len(keys)

    def get_stats(self) -> Dict[str, Any]:
        """Get cache statistics."""
        with self._lock:
            total = self.hits + self.misses
            return {
                "entries": len(self._store),
                "hits": self.hits,
                "misses": self.misses,
                "hit_rate": (self.hits / total * 100) if total > 0 else 0.0,
            }


def cached_computation(namespace: str):
    """Decorator memoizing a pure function on its hashable arguments."""

    def decorator(func: Callable):
        @wraps(func)
        def wrapper(*args, **kwargs):
            key = (namespace, args, tuple(sorted(kwargs.items())))
            cached = computation_cache.get(key)
            if cached is not None:
                return cached
            result = func(*args, **kwargs)
            logger.debug(f"Cached {namespace} result for {func.__name__}")
            return computation_cache.set(key, result)

        return wrapper

    return decorator


# Global cache instance
computation_cache = ComputationCache()
