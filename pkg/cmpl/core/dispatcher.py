from __future__ import annotations

import logging
from typing import List, Type

import joblib

from cmpl.core.model import Task, TaskResult
from cmpl.core.worker import Worker


def _process_task(worker_class: Type[Worker], wid: str, cache_dir: str, task: Task) -> TaskResult:
    # workers are created inside the worker process, python-flint precision is process global
    worker = worker_class(wid=wid, cache_dir=cache_dir)
    return worker.start_computation(task)


class Dispatcher:

    def __init__(self,
                 worker_class: Type[Worker],
                 n_workers: int = 1,
                 cache_dir: str = None,
                 logger: logging.Logger = None):
        """
        Runs independent tasks, sequentially for a single worker and in a pool of worker processes otherwise.
        """
        if n_workers < 1:
            raise ValueError(f'Expected at least 1 worker, given {n_workers}')
        self.worker_class = worker_class
        self.n_workers = n_workers
        self.cache_dir = cache_dir

        if logger is None:
            self.logger = logging.getLogger('Dispatcher')
        else:
            self.logger = logger

    def run(self, tasks: List[Task]) -> List[TaskResult]:
        """Results are returned in the order of the tasks"""
        if len(tasks) == 0:
            return []
        n_jobs = min(self.n_workers, len(tasks))
        self.logger.debug(f'Processing {len(tasks)} task(s) with {n_jobs} worker(s)')

        if n_jobs == 1:
            worker = self.worker_class(wid='0', cache_dir=self.cache_dir)
            return [worker.start_computation(task) for task in tasks]

        try:
            return joblib.Parallel(n_jobs=n_jobs)(
                joblib.delayed(_process_task)(self.worker_class, str(i % n_jobs), self.cache_dir, task)
                for i, task in enumerate(tasks))
        except KeyboardInterrupt:
            raise
        except Exception as ex:
            # Catch all. Only pool failures end up here, task errors are converted by the worker
            self.logger.exception(f'Worker pool failed, falling back to sequential processing: {ex}')
            worker = self.worker_class(wid='0', cache_dir=self.cache_dir)
            return [worker.start_computation(task) for task in tasks]
