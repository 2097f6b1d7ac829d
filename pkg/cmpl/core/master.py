from __future__ import annotations

import datetime
import logging
import timeit
from typing import List, Type

from cmpl import __version__
from cmpl.core.dispatcher import Dispatcher
from cmpl.core.errors import InputError
from cmpl.core.logger import JsonResultLogger
from cmpl.core.model import Report, RunConfig, Runtime, StatusType, Task, TaskResult
from cmpl.core.worker import Worker
from cmpl.workers import PeriodWorker


class Master:
    def __init__(self,
                 config: RunConfig,
                 logger: logging.Logger = None,
                 result_logger: JsonResultLogger = None,
                 worker_class: Type[Worker] = PeriodWorker):
        """
        The Master translates a run configuration into independent tasks, hands them to the dispatcher and collects
        the results into a single report.
        :param logger: the logger to output some (more or less meaningful) information
        :param result_logger: a result logger that appends every report to disk. Created from config.log_dir if None
        """
        self.config = config

        if logger is None:
            self.logger = logging.getLogger('Master')
        else:
            self.logger = logger

        if result_logger is None and config.log_dir is not None:
            result_logger = JsonResultLogger(config.log_dir, overwrite=False)
        self.result_logger = result_logger

        self.dispatcher = Dispatcher(worker_class, config.n_workers, config.cache_dir)

    def tasks(self) -> List[Task]:
        c = self.config
        subject = dict(c.subject)
        bounds = {'prec_bits': c.prec_bits, 'height_bound': str(c.height_bound)}

        if c.command in ('relations', 'biq', 'siegel', 'hilbert', 'weyl'):
            return [Task(c.command, c.command, subject)]
        if c.command == 'verify siegel-g1':
            return [Task(f'siegel-g1 {tau0}', c.command, {'tau0': tau0, 'degree_bound': c.degree_bound, **bounds})
                    for tau0 in subject.get('tau0', [])]
        if c.command == 'verify beta-diag':
            return [Task(f'beta-diag {d}', c.command, {'disc': d, 'perturb': subject.get('perturb'), **bounds})
                    for d in subject.get('discs', [])]
        if c.command in ('verify falsify', 'verify quasi'):
            return [Task(c.command, c.command, {'discs': subject.get('discs', []),
                                                'planted': bool(subject.get('planted', False)), **bounds})]
        if c.command == 'verify legendre':
            return [Task(f'legendre {p}', c.command, {'samples': subject.get('samples', 100),
                                                      'seed': subject.get('seed', 0), 'prec_bits': p})
                    for p in subject.get('precisions', [c.prec_bits])]
        raise InputError(f'Unknown command {c.command}')

    def run(self) -> Report:
        start = timeit.default_timer()
        self.logger.info(f'starting {self.config.command} at {datetime.datetime.now():%Y-%m-%d %H:%M:%S}. '
                         f'Configuration:\n'
                         f'\tprec_bits: {self.config.prec_bits}\n'
                         f'\tdegree_bound: {self.config.degree_bound}\n'
                         f'\theight_bound: {self.config.height_bound}\n'
                         f'\tcache_dir: {self.config.cache_dir}')

        tasks = self.tasks()
        if len(tasks) == 0:
            raise InputError(f'Nothing to do for {self.config.command} with {self.config.subject}')
        results = self.dispatcher.run(tasks)
        report = self._report(results, start)

        self.logger.info(f'{self.config.command} finished with {report.status.name} in {report.runtime.total:.3f}s, '
                         f'{report.cache_hits} cache hit(s)')
        if self.result_logger is not None:
            self.result_logger.log_report(report)
        return report

    def _report(self, results: List[TaskResult], start: float) -> Report:
        status = StatusType.combine([r.outcome.status for r in results])
        certificates = [c for r in results for c in r.outcome.certificates]
        messages = [f'{r.name}: {r.outcome.message}' if len(results) > 1 else r.outcome.message
                    for r in results if r.outcome.message is not None]

        if len(results) == 1:
            payload = results[0].outcome.payload
        else:
            payload = {'results': [{'name': r.name, 'status': r.outcome.status.name, 'payload': r.outcome.payload}
                                   for r in results]}
        return Report(__version__, self.config, status, payload, certificates,
                      Runtime(timeit.default_timer() - start, timestamp=start),
                      cache_hits=sum(1 for r in results if r.cached),
                      message='; '.join(messages) if len(messages) > 0 else None)
