"""Command line interface: ``blaschke-curves <command> ...``.

Commands: ``preimages``, ``exterior-eq``, ``sample``, ``verify``, ``plot``.
Errors print one line starting with ``error:`` to stderr; bad input exits
with status 2, failed verification with status 1. ``BLASCHKE_LOG``
(off|info|debug) sets log verbosity.
"""

import argparse
import json
import logging
import os
import sys

import numpy as np

from .complexfmt import format_complex, parse_complex, parse_complex_list
from .core import make_canonical, preimages
from .errors import BlaschkeError
from .exterior import (exterior_equation, exterior_equation_closed,
                       exterior_samples, scalar_match)
from .interior import envelope_samples
from .render import DEFAULT_LAYERS, PlotSpec, render_svg
from .sympoly import to_real_form
from .verify import SUITES, run_suite

log = logging.getLogger('blaschke_curves')

CLOSED_FORM_TOL = 1e-10


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _setup_logging():
    level = os.environ.get('BLASCHKE_LOG', 'off').lower()
    levels = {'off': logging.CRITICAL + 1, 'info': logging.INFO, 'debug': logging.DEBUG}
    logging.basicConfig(level=levels.get(level, logging.CRITICAL + 1),
                        format='%(levelname)s %(name)s: %(message)s', stream=sys.stderr)


def _product(args):
    try:
        zeros = parse_complex_list(args.zeros)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return make_canonical(zeros)


def _write(path, text):
    if path in (None, '-'):
        sys.stdout.write(text)
        return
    try:
        with open(path, 'w', encoding='utf-8', newline='') as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f'cannot write {path}: {exc.strerror}') from None


def cmd_preimages(args):
    B = _product(args)
    try:
        lam = parse_complex(args.lam)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    fan = preimages(B, lam)
    resid = np.abs(B(fan.points) - fan.lam)
    if args.json:
        doc = {
            'degree': B.degree, 'lambda': [lam.real, lam.imag],
            'points': [[z.real, z.imag] for z in fan.points],
            'residues': [[m.real, m.imag] for m in fan.residues],
            'residuals': resid.tolist(),
            'residue_sum': [fan.residues.sum().real, fan.residues.sum().imag],
        }
        print(json.dumps(doc, indent=1))
        return 0
    print(f'degree {B.degree}, lambda = {format_complex(lam)}')
    print(f'{"j":>2}  {"point":>36}  {"|B(z)-lambda|":>13}  residue')
    for j, (z, m, r) in enumerate(zip(fan.points, fan.residues, resid), 1):
        print(f'{j:>2}  {format_complex(z, 15):>36}  {r:13.3e}  {format_complex(m, 15)}')
    print(f'sum of residues: {format_complex(fan.residues.sum(), 15)}')
    return 0


def cmd_exterior_eq(args):
    B = _product(args)
    P = exterior_equation(B)
    print(to_real_form(P) if args.form == 'real' else P)
    print(f'total degree {P.total_degree} (nominal {B.degree - 1})')
    if B.degree <= 5:
        _, err = scalar_match(P, exterior_equation_closed(B.degree, B.sigma))
        verdict = 'true' if err < CLOSED_FORM_TOL else 'false'
        print(f'closed-form match: {verdict} (relative error {err:.2e})')
    return 0


def cmd_sample(args):
    if args.n < 8:
        raise UsageError('--n must be at least 8')
    B = _product(args)
    thetas = np.linspace(0.0, 2 * np.pi, args.n, endpoint=False)
    fn = exterior_samples if args.curve == 'exterior' else envelope_samples
    samples = fn(B, thetas)
    as_json = args.format == 'json' or (
        args.format is None and args.out and args.out.endswith('.json'))
    _write(args.out, samples.to_json(with_footer=True) + '\n' if as_json
           else samples.to_csv())
    return 0


def cmd_verify(args):
    ok, report = run_suite(args.suite, seed=args.seed, duality_tol=args.tol)
    print(f'suite {args.suite} (seed {args.seed})')
    for check in report['checks']:
        gate = '' if check.get('gating', True) else ' (info)'
        status = 'PASS' if check['pass'] else 'FAIL'
        print(f'  {status}  {check["name"]}{gate}')
    print('overall:', 'PASS' if ok else 'FAIL')
    if args.out:
        _write(args.out, json.dumps(report, indent=1, default=_json_default) + '\n')
    return 0 if ok else 1


def _json_default(obj):
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.bool_):
        return bool(obj)
    raise TypeError(type(obj).__name__)


def cmd_plot(args):
    B = _product(args)
    layers = tuple(s.strip() for s in args.layers.split(',') if s.strip())
    try:
        spec = PlotSpec(args.viewport, args.grid, layers, args.chord_frames)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _write(args.out, render_svg(B, spec))
    return 0


def build_parser():
    p = _Parser(prog='blaschke-curves',
                description='Interior and exterior curves of finite Blaschke products.')
    sub = p.add_subparsers(dest='command', required=True, parser_class=_Parser)

    def zeros_arg(sp):
        sp.add_argument('--zeros', required=True,
                        help='comma separated non-origin zeros, e.g. "0.4+0.7i,0.6"')

    sp = sub.add_parser('preimages', help='solve B(z) = lambda on the unit circle')
    zeros_arg(sp)
    sp.add_argument('--lambda', dest='lam', required=True)
    sp.add_argument('--json', action='store_true')
    sp.set_defaults(func=cmd_preimages)

    sp = sub.add_parser('exterior-eq', help='print the exterior curve equation')
    zeros_arg(sp)
    sp.add_argument('--form', choices=('complex', 'real'), default='complex')
    sp.set_defaults(func=cmd_exterior_eq)

    sp = sub.add_parser('sample', help='sample a curve on a uniform theta grid')
    zeros_arg(sp)
    sp.add_argument('--curve', choices=('exterior', 'interior'), required=True)
    sp.add_argument('--n', type=int, default=256)
    sp.add_argument('--out', default=None)
    sp.add_argument('--format', choices=('csv', 'json'), default=None)
    sp.set_defaults(func=cmd_sample)

    sp = sub.add_parser('verify', help='run a verification suite')
    sp.add_argument('--suite', choices=sorted(SUITES), default='all')
    sp.add_argument('--seed', type=int, default=7)
    sp.add_argument('--tol', type=float, default=None,
                    help='duality tolerance (default 1e-5)')
    sp.add_argument('--out', default=None, help='write the JSON report here')
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser('plot', help='write an SVG figure')
    zeros_arg(sp)
    sp.add_argument('--out', required=True)
    sp.add_argument('--viewport', type=float, default=4.0)
    sp.add_argument('--grid', type=int, default=512)
    sp.add_argument('--layers', default=','.join(DEFAULT_LAYERS))
    sp.add_argument('--chord-frames', type=int, default=24)
    sp.set_defaults(func=cmd_plot)
    return p


def main(argv=None):
    _setup_logging()
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except (UsageError, BlaschkeError) as exc:
        print(f'error: {exc}', file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - every failure gets the error: prefix
        log.debug('unhandled', exc_info=True)
        print(f'error: {type(exc).__name__}: {exc}', file=sys.stderr)
        return 1


if __name__ == '__main__':
    sys.exit(main())
