"""
Command line interface.

Exit codes: 0 success or verdict reached, 1 invalid input, 2 a theory or
invariant violation was found, 3 a resource cap was hit.
"""
import argparse
import hashlib
import json
import os
import sys

from . import options
from .catalog import build_catalog
from .cayley_io import format_sgp, parse_sgp, parse_slt, read_text, sniff, write_text
from .connectivity import (find_short_bypass, find_tight_bypass, in_nongroup_or_idempotent,
                           connectivity_equivalence)
from .error import InvsgError, jsonable
from .fis_core import isomorphism_search, load_semigroup, load_table, monogenic, structural_predicates
from .lattice import verify_theorem_2_4
from .munn import load_semilattice, munn_semigroup
from .pa import is_semilattice, verify_result_3_1, verify_theorem_3_2, verify_theorem_3_4

EXAMPLES_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'examples')
EXAMPLES = ('figure1.slt', 'brandt5.sgp', 'chain2.slt')


def _dump(report):
    return json.dumps(report, sort_keys=True, ensure_ascii=False, default=jsonable) + '\n'


def load_input(path, inverse=True):
    """
    Read a .sgp or .slt file (``-`` for stdin).

    Returns
    -------
    S : FiniteInverseSemigroup or FiniteSemigroup
        A semilattice file is loaded as its semigroup of idempotents
    text : str
        The raw input, for digests
    """
    text = read_text(path)
    if sniff(text) == 'slt':
        data = parse_slt(text, path)
        E = load_semilattice(data.order, data.meet, data.covers, data.labels)
        return E.as_semigroup(), text
    data = parse_sgp(text, path)
    if inverse:
        return load_semigroup(data.order, data.table, data.inv, labels=data.labels), text
    return load_table(data.order, data.table, data.labels), text


def cmd_validate(args):
    text = read_text(args.path)
    kind = sniff(text)
    if kind == 'slt':
        data = parse_slt(text, args.path)
        load_semilattice(data.order, data.meet, data.covers, data.labels)
    else:
        data = parse_sgp(text, args.path)
        load_semigroup(data.order, data.table, data.inv, labels=data.labels)
    sys.stdout.write(_dump({'schema': 1, 'valid': True, 'format': kind, 'order': data.order}))
    return 0


def analysis_report(S, text):
    report = {'schema': 1,
              'digest': hashlib.sha256(text.encode('utf-8')).hexdigest(),
              'order': S.order,
              'idempotent_count': len(S.idempotents),
              'green': {tag: S.green[tag].sizes() for tag in 'HLRDJ'}}
    predicates = structural_predicates(S).to_json()
    predicates.update(connectivity_equivalence(S).to_json())
    report['predicates'] = predicates
    report['monogenic'] = [monogenic(S, x).to_json() for x in range(S.order)]
    return report


def _bypass_report(S, e, x):
    short = find_short_bypass(S, e, x)
    tight = find_tight_bypass(S, e, x) if in_nongroup_or_idempotent(S, x) else None
    return {'e': e, 'x': x,
            'short': short.to_json() if short else 'none',
            'tight': tight.to_json() if tight else 'none'}


def _pretty(report):
    flags = report['predicates']
    lines = [f"order {report['order']}, {report['idempotent_count']} idempotents",
             'Green class sizes: ' + '; '.join(f'{tag} {sizes}' for tag, sizes in report['green'].items())]
    for name in ('combinatorial', 'fundamental', 'shortly_connected', 'tightly_connected',
                 'order_ideal', 'nontrivial_isolated_subgroup'):
        lines.append(f'  {name:<30s} {flags[name]}')
    if 'bypass' in report:
        lines.append(f"bypass: {report['bypass']}")
    return '\n'.join(lines) + '\n'


def cmd_analyze(args):
    S, text = load_input(args.path)
    report = analysis_report(S, text)
    if args.bypass:
        report['bypass'] = _bypass_report(S, *args.bypass)
    sys.stdout.write(_pretty(report) if args.pretty else _dump(report))
    return 0


def cmd_munn(args):
    data = parse_slt(read_text(args.path), args.path)
    E = load_semilattice(data.order, data.meet, data.covers, data.labels)
    T = munn_semigroup(E)
    write_text(args.output, format_sgp(T, labels=True))
    return 0


def _exit_code(report):
    return {'violation': 2, 'inconclusive': 3}.get(report.get('verdict'), 0)


def compare(S, T, mode, limit=None, max_results=None):
    """The report of one comparison mode for the pair (S, T)."""
    if mode == 'iso':
        phi = isomorphism_search(S, T, limit=limit)
        return {'schema': 1, 'mode': 'iso', 'isomorphic': phi is not None,
                'isomorphism': list(phi) if phi is not None else None,
                'verdict': 'isomorphic' if phi is not None else 'not-isomorphic'}
    if mode == 'lattice':
        return verify_theorem_2_4(S, T, limit=limit, max_results=max_results)
    if mode == 'pa':
        report = verify_theorem_3_2(S, T, limit=limit, max_results=max_results)
        if is_semilattice(S):
            report['semilattice'] = verify_result_3_1(S, T, limit=limit, max_results=max_results)
            if report['semilattice']['verdict'] == 'violation':
                report['verdict'] = 'violation'
        return report
    return verify_theorem_3_4(S, T, limit=limit, max_results=max_results)


def cmd_compare(args):
    S, _ = load_input(args.path_a, inverse=args.mode != 'psa')
    T, _ = load_input(args.path_b, inverse=args.mode != 'psa')
    report = compare(S, T, args.mode, limit=args.max_search_steps,
                     max_results=args.max_isomorphisms)
    sys.stdout.write(_dump(report))
    return _exit_code(report)


def cmd_catalog(args):
    catalog = build_catalog(args.max_order)
    write_text(args.output, catalog.dumps())
    return 0


def cmd_example(args):
    with open(os.path.join(EXAMPLES_DIR, args.name), encoding='utf-8') as f:
        sys.stdout.write(f.read())
    return 0


def get_argparser():
    parser = argparse.ArgumentParser('invsg', description='Finite inverse semigroups: structure, '
                                     'Munn semigroups, subsemigroup lattices and partial automorphisms',
                                     formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    for name, _, kind, _, desc in options.declared():
        flag = '--' + name.replace('_', '-')
        if kind is bool:
            parser.add_argument(flag, action='store_true', default=None, help=desc)
        else:
            parser.add_argument(flag, type=kind, default=None, help=desc)
    commands = parser.add_subparsers(dest='command', required=True)

    validate = commands.add_parser('validate', help='check a .sgp or .slt file')
    validate.add_argument('path')
    validate.set_defaults(func=cmd_validate)

    analyze = commands.add_parser('analyze', help='structural report as JSON')
    analyze.add_argument('path')
    analyze.add_argument('--bypass', nargs=2, type=int, metavar=('E', 'X'),
                         help='also search for short and tight bypasses from E to XX⁻¹')
    analyze.add_argument('--pretty', action='store_true', help='human readable summary')
    analyze.set_defaults(func=cmd_analyze)

    munn = commands.add_parser('munn', help='Cayley table of T_E for a semilattice')
    munn.add_argument('path')
    munn.add_argument('-o', '--output', default='-')
    munn.set_defaults(func=cmd_munn)

    comparison = commands.add_parser('compare', help='compare two semigroups')
    comparison.add_argument('path_a')
    comparison.add_argument('path_b')
    comparison.add_argument('--mode', choices=('iso', 'lattice', 'pa', 'psa'), default='iso')
    comparison.set_defaults(func=cmd_compare)

    catalog = commands.add_parser('catalog', help='inverse semigroups up to isomorphism')
    catalog.add_argument('--max-order', type=int, required=True)
    catalog.add_argument('-o', '--output', default='-')
    catalog.set_defaults(func=cmd_catalog)

    example = commands.add_parser('example', help='print a bundled example file')
    example.add_argument('name', choices=EXAMPLES)
    example.set_defaults(func=cmd_example)
    return parser


def main(argv=None):
    args = get_argparser().parse_args(argv)
    overrides = {name: getattr(args, name) for name, *_ in options.declared()}
    try:
        options.configure(overrides)
        return args.func(args)
    except InvsgError as err:
        print(str(err), file=sys.stderr, flush=True)
        sys.stdout.write(_dump({'schema': 1, **err.to_json()}))
        return err.exit_code


if __name__ == '__main__':
    sys.exit(main())
