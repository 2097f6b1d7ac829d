from __future__ import annotations

import math
import os
from collections import namedtuple
from enum import Enum
from typing import Optional, List, Dict, Any

SCHEMA_VERSION = 1
CACHE_ENV = 'CMPL_CACHE_DIR'


class StatusType(Enum):
    """Outcome of a run. The value doubles as the process exit code"""
    SUCCESS = 0
    FAILED = 1
    INCONCLUSIVE = 2
    INPUT_ERROR = 3

    @staticmethod
    def combine(statuses: List[StatusType]) -> StatusType:
        """Worst status of a batch; a failed check outranks an exhausted search"""
        if len(statuses) == 0:
            return StatusType.SUCCESS
        order = [StatusType.INPUT_ERROR, StatusType.FAILED, StatusType.INCONCLUSIVE, StatusType.SUCCESS]
        return min(statuses, key=order.index)


# Namedtuple instead of class to allow sharing between processes
Bounds = namedtuple('Bounds', 'prec_bits degree_bound height_bound')
Task = namedtuple('Task', 'name command kwargs')
TaskResult = namedtuple('TaskResult', 'name outcome runtime cached')


class RunConfig:

    def __init__(self,
                 command: str,
                 subject: Dict[str, Any] = None,
                 prec_bits: int = 256,
                 degree_bound: int = 8,
                 height_bound: int = 10 ** 30,
                 cache_dir: Optional[str] = None,
                 output: str = 'json',
                 n_workers: int = 1,
                 log_dir: Optional[str] = None):
        """
        Complete configuration of a single cmpl invocation.
        :param command: sub-command, e.g. 'relations' or 'verify siegel-g1'
        :param subject: command specific input data (CM data, g, tau0, discriminants, ...)
        :param prec_bits: working precision in bits of all numerical computations
        :param degree_bound: maximal degree of algebraicity certificates
        :param height_bound: maximal height of algebraicity certificates and integer relations
        :param cache_dir: directory of the persistent result cache. Falls back to the environment variable
            CMPL_CACHE_DIR, caching is disabled if neither is set
        :param output: 'json' or 'text'
        :param n_workers: number of parallel workers for batch verifications
        :param log_dir: optional directory where every report is appended to reports.json
        """
        # local import due to circular imports
        from cmpl.core.errors import InputError

        if prec_bits < 64:
            raise InputError(f'prec_bits must be at least 64, given {prec_bits}')
        if degree_bound < 1 or height_bound < 1:
            raise InputError(f'Bounds must be positive, given degree {degree_bound} and height {height_bound}')
        if output not in ('json', 'text'):
            raise InputError(f'Unknown output format {output}')
        if n_workers < 1:
            raise InputError(f'Expected at least 1 worker, given {n_workers}')

        self.command = command
        self.subject = subject if subject is not None else {}
        self.prec_bits = prec_bits
        self.degree_bound = degree_bound
        self.height_bound = height_bound
        self.cache_dir = cache_dir if cache_dir is not None else os.environ.get(CACHE_ENV) or None
        self.output = output
        self.n_workers = n_workers
        self.log_dir = log_dir

    @property
    def bounds(self) -> Bounds:
        return Bounds(self.prec_bits, self.degree_bound, self.height_bound)

    def as_dict(self):
        # cache_dir, n_workers and log_dir do not influence the payload and are not echoed
        return {
            'command': self.command,
            'subject': self.subject,
            'prec_bits': self.prec_bits,
            'degree_bound': self.degree_bound,
            'height_bound': str(self.height_bound),
            'output': self.output,
        }

    @staticmethod
    def from_dict(raw: dict) -> RunConfig:
        return RunConfig(raw['command'], raw['subject'], raw['prec_bits'], raw['degree_bound'],
                         int(raw['height_bound']), output=raw.get('output', 'json'))


class Runtime:

    def __init__(self, total: float, timestamp: float):
        self.total = total
        self.timestamp = timestamp

    def as_dict(self):
        return {
            'total': self.total,
            'timestamp': self.timestamp,
        }

    @staticmethod
    def from_dict(raw: dict) -> Optional[Runtime]:
        if raw is None:
            return None
        return Runtime(**raw)


class Certificate:

    def __init__(self,
                 kind: str,
                 input: Dict[str, Any],
                 bounds: Dict[str, Any],
                 prec_bits: int,
                 verified_at_bits: int,
                 residual_log2: float,
                 polynomial: List[int] = None,
                 relation: List[int] = None):
        """
        Algebraicity or relation certificate. Exactly one of polynomial and relation is set.
        :param kind: e.g. 'siegel-g1', 'beta-diag', 'falsify'
        :param input: the certified input (tau0, discriminant, labels of the related values, ...)
        :param residual_log2: log2 of an upper bound of the residual at verified_at_bits
        """
        self.kind = kind
        self.input = input
        self.bounds = bounds
        self.prec_bits = prec_bits
        self.verified_at_bits = verified_at_bits
        self.residual_log2 = residual_log2
        self.polynomial = polynomial
        self.relation = relation

    def as_dict(self):
        raw = {
            'kind': self.kind,
            'input': self.input,
            'bounds': self.bounds,
            'prec_bits': self.prec_bits,
            'verified_at_bits': self.verified_at_bits,
            'residual_log2': None if self.residual_log2 == -math.inf else self.residual_log2,
        }
        if self.polynomial is not None:
            raw['polynomial'] = [str(c) for c in self.polynomial]
        if self.relation is not None:
            raw['relation'] = [str(c) for c in self.relation]
        return raw

    @staticmethod
    def from_dict(raw: dict) -> Certificate:
        polynomial = [int(c) for c in raw['polynomial']] if 'polynomial' in raw else None
        relation = [int(c) for c in raw['relation']] if 'relation' in raw else None
        residual = raw['residual_log2']
        return Certificate(raw['kind'], raw['input'], raw['bounds'], raw['prec_bits'], raw['verified_at_bits'],
                           -math.inf if residual is None else residual, polynomial, relation)

    def __repr__(self):
        return f'Certificate({self.kind}, {self.input}, verified at {self.verified_at_bits} bits)'


class Outcome:

    def __init__(self,
                 status: StatusType,
                 payload: Dict[str, Any] = None,
                 certificates: List[Certificate] = None,
                 message: str = None):
        """
        Result of a single computation, e.g. one verification pipeline or one relation lattice.
        """
        self.status = status
        self.payload = payload if payload is not None else {}
        self.certificates = certificates if certificates is not None else []
        self.message = message

    def as_dict(self):
        return {
            'status': self.status.name,
            'payload': self.payload,
            'certificates': [c.as_dict() for c in self.certificates],
            'message': self.message,
        }

    @staticmethod
    def from_dict(raw: dict) -> Outcome:
        return Outcome(StatusType[raw['status']], raw['payload'],
                       [Certificate.from_dict(c) for c in raw['certificates']], raw['message'])


class Report:

    def __init__(self,
                 version: str,
                 config: RunConfig,
                 status: StatusType,
                 payload: Dict[str, Any],
                 certificates: List[Certificate] = None,
                 runtime: Runtime = None,
                 cache_hits: int = 0,
                 message: str = None):
        self.schema_version = SCHEMA_VERSION
        self.version = version
        self.config = config
        self.status = status
        self.payload = payload
        self.certificates = certificates if certificates is not None else []
        self.runtime = runtime
        self.cache_hits = cache_hits
        self.message = message

    @property
    def exit_code(self) -> int:
        return self.status.value

    def as_dict(self):
        return {
            'schema_version': self.schema_version,
            'version': self.version,
            'config': self.config.as_dict(),
            'status': self.status.name,
            'payload': self.payload,
            'certificates': [c.as_dict() for c in self.certificates],
            'runtime': self.runtime.as_dict() if self.runtime is not None else None,
            'cache_hits': self.cache_hits,
            'message': self.message,
        }

    @staticmethod
    def from_dict(raw: dict) -> Report:
        if raw.get('schema_version') != SCHEMA_VERSION:
            # local import due to circular imports
            from cmpl.core.errors import InputError
            raise InputError(f'Unsupported report schema {raw.get("schema_version")}')
        return Report(raw['version'], RunConfig.from_dict(raw['config']), StatusType[raw['status']], raw['payload'],
                      [Certificate.from_dict(c) for c in raw['certificates']], Runtime.from_dict(raw['runtime']),
                      raw['cache_hits'], raw.get('message'))
