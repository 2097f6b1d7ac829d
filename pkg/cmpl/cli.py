"""
Command line interface of cmpl. Every sub-command produces a Report, printed as canonical JSON (--json) or as a
short human readable summary. The exit code is 0 on success, 1 if a verification failed, 2 if a bounded search was
inconclusive and 3 for invalid input.
"""
import argparse
import json
import logging
import os
import sys
from fractions import Fraction
from typing import Any, Dict, List, Optional

from cmpl.core.errors import CmplError, InputError
from cmpl.core.master import Master
from cmpl.core.model import Report, RunConfig
from cmpl.exact.polynomials import parse_polynomial
from cmpl.util import util

DEFAULT_PREC = 256
DEFAULT_VERIFY_PREC = 1024
DEFAULT_HEIGHT = 10 ** 30
# relation searches among several values need smaller heights at the same precision
DEFAULT_HEIGHTS = {
    'verify beta-diag': 10 ** 12,
    'verify falsify': 10 ** 8,
    'verify quasi': 10 ** 8,
}


class ArgumentParser(argparse.ArgumentParser):

    def error(self, message):
        raise InputError(f'{self.prog}: {message}')


def _height(text: str) -> int:
    """Integer heights, also as powers like 10^30 or 1e8"""
    text = text.strip().replace(' ', '')
    try:
        if '^' in text:
            base, exp = text.split('^')
            return int(base) ** int(exp)
        if 'e' in text.lower():
            mantissa, exp = text.lower().split('e')
            return int(mantissa) * 10 ** int(exp)
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f'invalid height {text}')


def _phi(text: str) -> List[int]:
    try:
        return [int(k) for k in text.split(',') if k.strip() != '']
    except ValueError:
        raise argparse.ArgumentTypeError(f'invalid CM type {text}, expected comma separated embedding indices')


def _load_json(path: str) -> Any:
    try:
        with open(path, 'r') as fh:
            return json.load(fh)
    except (OSError, ValueError) as ex:
        raise InputError(f'Unable to read {path}: {ex}')


def build_parser() -> ArgumentParser:
    common = ArgumentParser(add_help=False)
    common.add_argument('--prec-bits', '--prec', dest='prec_bits', type=int, default=None,
                        help=f'Working precision in bits (default {DEFAULT_PREC}, {DEFAULT_VERIFY_PREC} for verify)')
    common.add_argument('--degree-bound', type=int, default=8, help='Maximal degree of algebraicity certificates')
    common.add_argument('--height-bound', type=_height, default=None,
                        help='Maximal height of certificates and relations, e.g. 10^30')
    common.add_argument('--cache-dir', type=str, default=None, help='Result cache, falls back to CMPL_CACHE_DIR')
    common.add_argument('--json', action='store_true', help='Print the report as canonical JSON')
    common.add_argument('--workers', type=int, default=1, help='Number of worker processes')
    common.add_argument('--log-dir', type=str, default=None, help='Directory for log.txt and reports.json')
    common.add_argument('--verbose', '-v', action='count', default=0, help='Increase the log level')

    cm = ArgumentParser(add_help=False)
    cm.add_argument('--min-poly', action='append', default=[], help='Defining polynomial of a CM field')
    cm.add_argument('--phi', action='append', type=_phi, default=[],
                    help='CM type as 0-based embedding indices, one per --min-poly')
    cm.add_argument('--input', type=str, default=None, help='JSON file with a list of CM types')

    parser = ArgumentParser(prog='cmpl', description='Period relations and bi-Qbar-structures of CM points.')
    commands = parser.add_subparsers(dest='command', parser_class=ArgumentParser)

    commands.add_parser('relations', parents=[common, cm], help='Relation lattice and quadratic period analysis')

    biq = commands.add_parser('biq', parents=[common], help='Bi-Qbar-structures from a JSON file')
    biq.add_argument('action', choices=['decompose', 'count', 'test'])
    biq.add_argument('--input', type=str, required=True,
                     help='JSON file with structure, optional relations and subspace')

    for name in ('siegel', 'hilbert'):
        p = commands.add_parser(name, parents=[common, cm], help=f'Labeled tangent space of the {name} variety')
        p.add_argument('--g', type=int, required=True)
        p.add_argument('--relations', type=str, default=None, help='JSON file with a relation lattice')

    weyl = commands.add_parser('weyl', parents=[common], help='Weyl CM fields and their special subvarieties')
    weyl.add_argument('--min-poly', type=str, default=None)
    weyl.add_argument('--scan', type=int, nargs=2, metavar=('A', 'B'), default=None,
                      help='Scan x^4 + a x^2 + b with a <= A, b <= B')

    verify = commands.add_parser('verify', help='Numerically certified period identities')
    pipelines = verify.add_subparsers(dest='pipeline', parser_class=ArgumentParser)
    p = pipelines.add_parser('siegel-g1', parents=[common])
    p.add_argument('--tau0', action='append', required=True, help='Imaginary quadratic point, e.g. 2i')
    p = pipelines.add_parser('beta-diag', parents=[common])
    p.add_argument('--disc', type=int, action='append', required=True)
    p.add_argument('--perturb', type=str, default=None, help='Offset of eta_1, e.g. 1e-10 (must not certify)')
    for name in ('falsify', 'quasi'):
        p = pipelines.add_parser(name, parents=[common])
        p.add_argument('--disc', type=int, action='append', required=True)
        p.add_argument('--planted', action='store_true', help='Search a planted relation instead')
    p = pipelines.add_parser('legendre', parents=[common])
    p.add_argument('--samples', type=int, default=100)
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--precisions', type=int, nargs='+', default=None)
    return parser


def _cm_types(args: argparse.Namespace) -> Optional[List[Dict]]:
    if args.input is not None:
        raw = _load_json(args.input)
        return raw['types'] if isinstance(raw, dict) and 'types' in raw else raw
    if len(args.min_poly) == 0:
        return None
    if len(args.min_poly) != len(args.phi):
        raise InputError(f'Got {len(args.min_poly)} polynomials but {len(args.phi)} CM types')
    return [{'min_poly': parse_polynomial(f), 'phi': phi} for f, phi in zip(args.min_poly, args.phi)]


def _subject(command: str, args: argparse.Namespace) -> Dict[str, Any]:
    if command == 'relations':
        types = _cm_types(args)
        if types is None:
            raise InputError('relations requires --min-poly and --phi or --input')
        return {'types': types}
    if command == 'biq':
        raw = _load_json(args.input)
        if not isinstance(raw, dict):
            raise InputError(f'{args.input} does not contain a JSON object')
        return {'action': args.action, 'structure': raw.get('structure'), 'relations': raw.get('relations'),
                'subspace': raw.get('subspace')}
    if command in ('siegel', 'hilbert'):
        subject = {'g': args.g}
        types = _cm_types(args)
        if types is not None:
            subject['types'] = types
        if args.relations is not None:
            subject['relations'] = _load_json(args.relations)
        return subject
    if command == 'weyl':
        if args.scan is not None:
            return {'scan': args.scan}
        if args.min_poly is None:
            raise InputError('weyl requires --min-poly or --scan')
        return {'min_poly': parse_polynomial(args.min_poly)}
    if command == 'verify siegel-g1':
        return {'tau0': args.tau0}
    if command == 'verify beta-diag':
        if args.perturb is not None:
            try:
                Fraction(args.perturb)
            except (ValueError, ZeroDivisionError):
                raise InputError(f'Invalid perturbation {args.perturb}')
        return {'discs': args.disc, 'perturb': args.perturb}
    if command in ('verify falsify', 'verify quasi'):
        return {'discs': args.disc, 'planted': args.planted}
    if command == 'verify legendre':
        subject = {'samples': args.samples, 'seed': args.seed}
        if args.precisions is not None:
            subject['precisions'] = args.precisions
        return subject
    raise InputError(f'Unknown command {command}')


def config_from_args(args: argparse.Namespace) -> RunConfig:
    if args.command is None:
        raise InputError('No command given, see cmpl --help')
    command = args.command
    if command == 'verify':
        if args.pipeline is None:
            raise InputError('No verification pipeline given, see cmpl verify --help')
        command = f'verify {args.pipeline}'

    prec = args.prec_bits
    if prec is None:
        prec = DEFAULT_VERIFY_PREC if command.startswith('verify') else DEFAULT_PREC
    height = args.height_bound if args.height_bound is not None else DEFAULT_HEIGHTS.get(command, DEFAULT_HEIGHT)

    return RunConfig(command, _subject(command, args), prec_bits=prec, degree_bound=args.degree_bound,
                     height_bound=height, cache_dir=args.cache_dir, output='json' if args.json else 'text',
                     n_workers=args.workers, log_dir=args.log_dir)


def _text(value: Any, indent: int = 0) -> List[str]:
    pad = '  ' * indent
    if isinstance(value, dict):
        lines = []
        for k, v in value.items():
            if isinstance(v, (dict, list)) and len(v) > 0 and not _flat(v):
                lines.append(f'{pad}{k}:')
                lines += _text(v, indent + 1)
            else:
                lines.append(f'{pad}{k}: {_scalar(v)}')
        return lines
    if isinstance(value, list):
        if _flat(value):
            return [f'{pad}{_scalar(value)}']
        lines = []
        for v in value:
            sub = _text(v, indent + 1) or ['{}']
            lines.append(f'{pad}- {sub[0].strip()}')
            lines += sub[1:]
        return lines
    return [f'{pad}{_scalar(value)}']


def _flat(value: Any) -> bool:
    return isinstance(value, list) and all(not isinstance(v, (dict, list)) or _flat(v) for v in value)


def _scalar(value: Any) -> str:
    if isinstance(value, list):
        return '[' + ', '.join(_scalar(v) for v in value) + ']'
    return str(value)


def emit_report(report: Report, output: str = 'json') -> str:
    if output == 'json':
        return util.canonical_json(report.as_dict())
    lines = [f'cmpl {report.version}: {report.config.command} -> {report.status.name} (exit {report.exit_code})']
    if report.message is not None:
        lines.append(report.message)
    lines += _text(report.payload)
    for c in report.certificates:
        lines.append(f'certificate {c.kind}: verified at {c.verified_at_bits} bits, residual 2^{c.residual_log2}')
    if report.runtime is not None:
        lines.append(f'runtime {report.runtime.total:.2f}s, {report.cache_hits} cache hit(s)')
    return '\n'.join(lines)


def main(argv: List[str] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        level = [logging.WARNING, logging.INFO, logging.DEBUG][min(args.verbose, 2)] \
            if hasattr(args, 'verbose') else logging.WARNING
        log_dir = getattr(args, 'log_dir', None)
        util.setup_logging(os.path.join(log_dir, 'log.txt') if log_dir is not None else None, level)

        config = config_from_args(args)
        report = Master(config).run()
    except CmplError as ex:
        print(f'error: {ex}', file=sys.stderr)
        return ex.status.value

    print(emit_report(report, config.output))
    return report.exit_code


if __name__ == '__main__':
    sys.exit(main())
