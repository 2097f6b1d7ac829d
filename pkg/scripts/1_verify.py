"""
Example 1 - Period identities of CM elliptic curves
===================================================

"""
import argparse
import logging
import os

from cmpl.core.master import Master
from cmpl.core.model import RunConfig, StatusType
from cmpl.util import util

parser = argparse.ArgumentParser(description='Example 1 - certified period identities for g = 1.')
parser.add_argument('--prec_bits', type=int, help='Working precision in bits', default=1024)
parser.add_argument('--workers', type=int, help='Number of worker processes', default=2)
parser.add_argument('--log_dir', type=str, help='Directory used for logging', default='run/')
parser.add_argument('--cache_dir', type=str, help='Directory of the result cache', default=None)
args = parser.parse_args()

util.setup_logging(os.path.join(args.log_dir, 'log.txt'))
logger = logging.getLogger()

runs = [
    RunConfig('verify siegel-g1', {'tau0': ['2i', '(1+i√7)/2']}, prec_bits=args.prec_bits),
    RunConfig('verify beta-diag', {'discs': [-4, -3]}, prec_bits=512, height_bound=10 ** 12),
    RunConfig('verify beta-diag', {'discs': [-4], 'perturb': '1e-10'}, prec_bits=512, height_bound=10 ** 12),
    RunConfig('verify legendre', {'samples': 100, 'precisions': [128, 256, 512]}),
    RunConfig('verify falsify', {'discs': [-4, -3]}, prec_bits=600, height_bound=10 ** 8),
    RunConfig('verify quasi', {'discs': [-4, -3]}, prec_bits=600, height_bound=10 ** 8),
]

for config in runs:
    config.n_workers = args.workers
    config.cache_dir = args.cache_dir
    config.log_dir = args.log_dir
    report = Master(config).run()
    logger.info(f'{config.command} {config.subject}: {report.status.name} in {report.runtime.total:.2f}s')
    for certificate in report.certificates:
        logger.info(f'\t{certificate}')

    # a perturbed identity must not be certified
    if config.subject.get('perturb') is not None and report.status == StatusType.SUCCESS:
        logger.error('Perturbed quasi-period relation was certified')
