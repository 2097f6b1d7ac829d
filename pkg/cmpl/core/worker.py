from __future__ import annotations

import abc
import logging
import os
import socket
import timeit
from typing import Any, Dict, Optional, Tuple

from cmpl.core.cache import ResultCache
from cmpl.core.errors import CacheIoError, CmplError
from cmpl.core.model import SCHEMA_VERSION, Outcome, Runtime, StatusType, Task, TaskResult


class Worker(abc.ABC):
    """
    The worker is responsible for a single task at a time. Scheduling of the tasks is done by the Dispatcher and
    the tasks are determined by the Master. To implement your own worker, overwrite the `compute`-method.
    """

    def __init__(self,
                 logger: logging.Logger = None,
                 wid: str = None,
                 cache_dir: Optional[str] = None):
        """
        :param logger: logger used for debugging output
        :param wid: if multiple workers are started in the same process, you MUST provide a unique id for each one of
            them using the `id` argument.
        :param cache_dir: directory of the result cache, results are not cached if None
        """
        self.worker_id = f'worker.{wid}'
        self.cache_dir = cache_dir

        if logger is None:
            self.logger = logging.getLogger('Worker')
        else:
            self.logger = logger

        self.logger.debug(f'Running on {socket.gethostname()} with pid {os.getpid()}')

    @staticmethod
    def cache_key(task: Task) -> Dict[str, Any]:
        return {'schema_version': SCHEMA_VERSION, 'command': task.command, 'kwargs': task.kwargs}

    def start_computation(self, task: Task) -> TaskResult:
        start = timeit.default_timer()
        cached = False
        try:
            if self.cache_dir is None:
                outcome = self.compute(task.command, **task.kwargs)
            else:
                outcome, cached = self._cached_computation(task)
        except KeyboardInterrupt:
            raise
        except CmplError as ex:
            self.logger.info(f'Task {task.name} stopped with {type(ex).__name__}: {ex}')
            outcome = Outcome(ex.status, message=f'{type(ex).__name__}: {ex}')
        except Exception as ex:
            # Should never occur, just a safety net
            self.logger.exception(f'Unexpected error during computation of {task.name}: \'{ex}\'')
            outcome = Outcome(StatusType.FAILED, message=f'{type(ex).__name__}: {ex}')

        runtime = Runtime(timeit.default_timer() - start, timestamp=start)
        self.logger.debug(f'Task {task.name} finished with {outcome.status.name} in {runtime.total:.3f}s')
        return TaskResult(task.name, outcome, runtime, cached)

    def _cached_computation(self, task: Task) -> Tuple[Outcome, bool]:
        try:
            cache = ResultCache(self.cache_dir)
        except CacheIoError as ex:
            self.logger.warning(f'Computing {task.name} without cache: {ex}')
            return self.compute(task.command, **task.kwargs), False
        raw, cached = cache.get_or_compute(ResultCache.key(self.cache_key(task)),
                                           lambda: self.compute(task.command, **task.kwargs).as_dict(),
                                           lambda raw: raw['status'] != StatusType.FAILED.name)
        return Outcome.from_dict(raw), cached

    @abc.abstractmethod
    def compute(self, command: str, **kwargs) -> Outcome:
        """
        The function you have to overload implementing your computation.
        :param command: the sub-command the task belongs to
        :param kwargs: JSON serializable task input, also used as cache key
        """
        pass
