"""Command-line interface: ``fusionlab <command> --algebra A --level K ...``.

Exit status is 0 on success, 1 when a verification finds failures and 2 for bad input.
Signs in labels are literal ``+``/``-``; quote labels in the shell (``"PI:2,1:+"``).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import __version__
from .catalog import (FoldConvention, contragredient, enumerate_labels, lowest_weight,
                      parse_label)
from .errors import FusionLabError, Unsupported
from .fusion import fuse
from .labels import AlgebraKind, OrbAffineLabel, Twisted, TwistedTilde, TypeI, TypeII
from .qdim import qdim_numeric, qdim_of
from .verify import CHECKS, FusionTable, build_table, verify_ring, verify_table

__all__ = ['run', 'main', 'table_document', 'SCHEMA_VERSION']

SCHEMA_VERSION = 1
ALGEBRAS = [a.value for a in AlgebraKind]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f'{self.prog}: {message}')


def _kind(x) -> str:
    if isinstance(x, OrbAffineLabel):
        return 'twisted' if x.twisted else 'untwisted'
    if isinstance(x, TypeI):
        return 'type-I'
    if isinstance(x, TypeII):
        return 'type-II'
    if isinstance(x, TwistedTilde):
        return 'twisted-tilde'
    if isinstance(x, Twisted):
        return 'twisted'
    return 'module'


def _rational(q: Fraction) -> str:
    return f'{q.numerator}/{q.denominator}'


def _weight_or_none(algebra, k, x):
    try:
        return _rational(lowest_weight(algebra, k, x))
    except Unsupported:
        return None


def _module_record(algebra, k, x, digits=40) -> dict:
    q = qdim_of(algebra, k, x)
    return {'id': str(x), 'kind': _kind(x), 'weight': _weight_or_none(algebra, k, x),
            'qdim': {'a': [_rational(c) for c in q.a], 'b': [_rational(c) for c in q.b],
                     'numeric': qdim_numeric(q, digits)}}


def table_document(table: FusionTable, ordered: bool = False) -> dict:
    algebra, k, labels = table.algebra, table.k, table.labels
    fusion = []
    for n, a in enumerate(labels):
        for b in (labels if ordered else labels[n:]):
            fusion.append({'left': str(a), 'right': str(b),
                           'outputs': [{'id': str(c), 'mult': m} for c, m in table.outcome(a, b)]})
    return {'algebra': str(algebra), 'level': k, 'schema_version': SCHEMA_VERSION,
            'ordered': ordered,
            'modules': [_module_record(algebra, k, x) for x in labels], 'fusion': fusion}


def _label(args, text):
    return parse_label(args.algebra, args.level, text, args.fold_convention)


def _emit(args, text, doc):
    if getattr(args, 'json', False):
        print(json.dumps(doc, indent=2))
    else:
        print(text)


# ---------------------------------------------------------------------------
# commands

def cmd_list(args):
    labels = enumerate_labels(args.algebra, args.level)
    doc = {'algebra': args.algebra, 'level': args.level,
           'modules': [_module_record(args.algebra, args.level, x) for x in labels]}
    _emit(args, '\n'.join(map(str, labels)), doc)
    return 0


def cmd_fuse(args):
    a, b = _label(args, args.left), _label(args, args.right)
    out = fuse(args.algebra, args.level, a, b, args.fold_convention, args.literal)
    doc = {'algebra': args.algebra, 'level': args.level, 'left': str(a), 'right': str(b),
           'outputs': [{'id': str(c), 'mult': m} for c, m in out]}
    _emit(args, str(out), doc)
    return 0


def cmd_qdim(args):
    x = _label(args, args.label)
    q = qdim_of(args.algebra, args.level, x)
    value = qdim_numeric(q, args.digits)
    doc = {'id': str(x), 'exact': str(q), 'a': [_rational(c) for c in q.a],
           'b': [_rational(c) for c in q.b], 'numeric': value}
    _emit(args, value, doc)
    return 0


def cmd_weight(args):
    x = _label(args, args.label)
    w = lowest_weight(args.algebra, args.level, x)
    _emit(args, _rational(w), {'id': str(x), 'weight': _rational(w)})
    return 0


def cmd_dual(args):
    x = _label(args, args.label)
    d = contragredient(args.algebra, args.level, x)
    _emit(args, str(d), {'id': str(x), 'dual': str(d)})
    return 0


def cmd_table(args):
    table = build_table(args.algebra, args.level, args.fold_convention, args.literal,
                        args.workers)
    fmt = args.format or ('csv' if args.out.lower().endswith('.csv') else 'json')
    if fmt == 'json':
        text = json.dumps(table_document(table, args.ordered), indent=1)
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator='\n')
        w.writerow(['left', 'right', 'output', 'mult'])
        for n, a in enumerate(table.labels):
            for b in (table.labels if args.ordered else table.labels[n:]):
                for c, m in table.outcome(a, b):
                    w.writerow([str(a), str(b), str(c), m])
        text = buf.getvalue()
    if args.out == '-':
        sys.stdout.write(text if text.endswith('\n') else text + '\n')
    else:
        with open(args.out, 'w', encoding='utf-8') as fh:
            fh.write(text)
    return 0


def cmd_verify(args):
    checks = args.checks.split(',') if args.checks else None
    if args.from_table:
        with open(args.from_table, encoding='utf-8') as fh:
            table = FusionTable.from_document(json.load(fh))
        report = verify_table(table, checks, args.workers)
    else:
        if args.algebra is None or args.level is None:
            raise UsageError('verify needs --algebra and --level, or --from-table')
        report = verify_ring(args.algebra, args.level, checks, args.workers,
                             args.fold_convention, args.literal)
    _emit(args, report.summary(), report.to_dict())
    return 0 if report.passed else 1


# ---------------------------------------------------------------------------
# argument parsing

def _common(p, required=True):
    p.add_argument('--algebra', choices=ALGEBRAS, required=required)
    p.add_argument('--level', type=int, required=required)
    p.add_argument('--fold-convention', choices=[f.value for f in FoldConvention],
                   default='preserve',
                   help='how signs travel through W(k,l) = W(k,k-l) (default: preserve)')


def _literal(p):
    p.add_argument('--literal', action='store_true',
                   help='para-orb, even k: keep the uncorrected untwisted x twisted entries '
                        'at W(k,k/2) and Wtilde (not self-dual, not associative)')


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog='fusionlab', description='Fusion rings of affine sl2, the parafermion '
                     'algebra and their Z2-orbifolds.')
    parser.add_argument('--version', action='version', version=f'fusionlab {__version__}')
    sub = parser.add_subparsers(dest='command', required=True, parser_class=_Parser)

    p = sub.add_parser('list', help='enumerate the irreducible modules')
    _common(p)
    p.add_argument('--json', action='store_true')
    p.set_defaults(func=cmd_list)

    p = sub.add_parser('fuse', help='fusion product of two labels')
    _common(p)
    _literal(p)
    p.add_argument('left')
    p.add_argument('right')
    p.add_argument('--json', action='store_true')
    p.set_defaults(func=cmd_fuse)

    p = sub.add_parser('qdim', help='quantum dimension of a label')
    _common(p)
    p.add_argument('label')
    p.add_argument('--digits', type=int, default=10)
    p.add_argument('--json', action='store_true')
    p.set_defaults(func=cmd_qdim)

    p = sub.add_parser('weight', help='lowest conformal weight of a label')
    _common(p)
    p.add_argument('label')
    p.add_argument('--json', action='store_true')
    p.set_defaults(func=cmd_weight)

    p = sub.add_parser('dual', help='contragredient of a label')
    _common(p)
    p.add_argument('label')
    p.add_argument('--json', action='store_true')
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser('table', help='write the full fusion table')
    _common(p)
    _literal(p)
    p.add_argument('--out', required=True, help="output path, or '-' for standard output")
    p.add_argument('--format', choices=['json', 'csv'],
                   help='defaults to csv for a .csv path, json otherwise')
    p.add_argument('--ordered', action='store_true', help='list every ordered pair')
    p.add_argument('--workers', type=int, default=1)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser('verify', help='check the ring axioms exhaustively')
    _common(p, required=False)
    _literal(p)
    p.add_argument('--checks', help=f'comma-separated subset of: {",".join(CHECKS)}')
    p.add_argument('--workers', type=int, default=1)
    p.add_argument('--from-table', metavar='PATH', help='verify a table written by `table`')
    p.add_argument('--json', action='store_true')
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, 'workers', 1) < 1:
            raise UsageError('--workers must be positive')
        return args.func(args)
    except (UsageError, FusionLabError, ValueError, KeyError, OSError) as exc:
        print(f'fusionlab: error: {exc}', file=sys.stderr)
        return 2


def main():
    sys.exit(run())
