from __future__ import annotations

import contextlib
import fcntl
import json
import logging
import os
import tempfile
from typing import Any, Callable, Dict, Optional, Tuple

from cmpl.core.errors import CacheIoError
from cmpl.util.util import canonical_json, content_hash


class ResultCache:

    def __init__(self, directory: str, logger: logging.Logger = None):
        """
        Content addressed store of JSON results. The key of an entry is the SHA-256 hash of the canonical JSON of
        its input. Entries are written atomically, concurrent writers are serialized by advisory locks.
        :param directory: cache directory, created on demand
        """
        self.directory = directory
        if logger is None:
            self.logger = logging.getLogger('Cache')
        else:
            self.logger = logger

        try:
            os.makedirs(self.directory, exist_ok=True)
        except OSError as ex:
            raise CacheIoError(f'Unable to create cache directory {directory}: {ex}')

    @staticmethod
    def key(obj: Any) -> str:
        return content_hash(obj)

    def _path(self, key: str) -> str:
        return os.path.join(self.directory, key[:2], f'{key}.json')

    @contextlib.contextmanager
    def _lock(self, key: str, exclusive: bool):
        path = f'{self._path(key)}.lock'
        os.makedirs(os.path.dirname(path), exist_ok=True)
        with open(path, 'a') as fh:
            fcntl.flock(fh, fcntl.LOCK_EX if exclusive else fcntl.LOCK_SH)
            try:
                yield
            finally:
                fcntl.flock(fh, fcntl.LOCK_UN)

    def _read(self, key: str) -> Optional[Dict]:
        path = self._path(key)
        if not os.path.exists(path):
            return None
        try:
            with open(path, 'r') as fh:
                entry = json.load(fh)
            if not isinstance(entry, dict) or entry.get('key') != key or 'value' not in entry:
                raise ValueError('entry does not match its key')
            return entry['value']
        except (ValueError, OSError) as ex:
            self.logger.warning(f'Removing corrupted cache entry {path}: {ex}')
            with contextlib.suppress(OSError):
                os.remove(path)
            return None

    def _write(self, key: str, value: Dict) -> None:
        path = self._path(key)
        fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path), suffix='.tmp')
        try:
            with os.fdopen(fd, 'w') as fh:
                fh.write(canonical_json({'key': key, 'value': value}))
            os.replace(tmp, path)
        except OSError:
            with contextlib.suppress(OSError):
                os.remove(tmp)
            raise

    def get(self, key: str) -> Optional[Dict]:
        try:
            with self._lock(key, exclusive=False):
                return self._read(key)
        except OSError as ex:
            self.logger.warning(f'Cache lookup of {key} failed: {ex}')
            return None

    def put(self, key: str, value: Dict) -> None:
        try:
            with self._lock(key, exclusive=True):
                self._write(key, value)
        except OSError as ex:
            self.logger.warning(f'Unable to store cache entry {key}: {ex}')

    def get_or_compute(self, key: str, fn: Callable[[], Dict],
                       store: Callable[[Dict], bool] = None) -> Tuple[Dict, bool]:
        """
        Look up key and compute the value on a miss. The exclusive lock is held during the computation, so of two
        concurrent identical requests only one computes while the other waits for the stored entry.
        :param store: predicate deciding whether a computed value is written, all values are written if None
        :return: (value, cache hit)
        """
        with contextlib.ExitStack() as stack:
            try:
                stack.enter_context(self._lock(key, exclusive=True))
            except OSError as ex:
                self.logger.warning(f'Cache unavailable for {key}, computing without it: {ex}')
                return fn(), False

            value = self._read(key)
            if value is not None:
                self.logger.debug(f'Cache hit {key}')
                return value, True
            value = fn()
            if store is not None and not store(value):
                self.logger.debug(f'Not storing {key}')
                return value, False
            try:
                self._write(key, value)
            except OSError as ex:
                self.logger.warning(f'Unable to store cache entry {key}: {ex}')
            return value, False
