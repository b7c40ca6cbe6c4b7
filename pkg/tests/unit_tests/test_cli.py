import io
import json
import os
import tempfile
import unittest
from unittest import mock

from invsg import options
from invsg.cayley_io import parse_sgp
from invsg.cli import get_argparser, main

from common_methods import CommonMethods


class TestCommandLine(unittest.TestCase):

    def setUp(self):
        self.common = CommonMethods()
        self.tmpdir = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmpdir.cleanup)
        self.addCleanup(options.configure)

    def run_cli(self, *argv):
        with mock.patch('sys.stdout', new_callable=io.StringIO) as out, \
                mock.patch('sys.stderr', new_callable=io.StringIO) as err:
            code = main(list(argv))
        return code, out.getvalue(), err.getvalue()

    def write(self, name, text):
        path = os.path.join(self.tmpdir.name, name)
        with open(path, 'w', encoding='utf-8') as f:
            f.write(text)
        return path

    def test_validate(self):
        code, out, _ = self.run_cli('validate', self.common.example_path('figure1.slt'))
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out), {'schema': 1, 'valid': True, 'format': 'slt', 'order': 6})

    def test_invalid_file(self):
        code, out, err = self.run_cli('validate', self.write('short.sgp', '2\n0 1\n'))
        self.assertEqual(code, 1)
        self.assertEqual(json.loads(out)['error'], 'InputError')
        self.assertIn('INVSG Input Error', err)

    def test_axiom_failure(self):
        code, out, _ = self.run_cli('validate', self.write('bad.sgp', '2\n1 0\n0 0\n'))
        self.assertEqual(code, 1)
        self.assertEqual(json.loads(out)['error'], 'AxiomError')

    def test_analyze(self):
        code, out, _ = self.run_cli('analyze', self.common.example_path('brandt5.sgp'),
                                    '--bypass', '0', '3')
        self.assertEqual(code, 0)
        report = json.loads(out)
        self.assertEqual(report['order'], 5)
        self.assertEqual(report['green']['D'], [1, 4])
        self.assertTrue(report['predicates']['fundamental'])
        self.assertEqual(report['bypass']['short']['chain'], [0, 1])
        self.assertEqual(len(report['monogenic']), 5)
        self.assertEqual(len(report['digest']), 64)

    def test_analyze_bypass_out_of_range(self):
        path = self.common.example_path('brandt5.sgp')
        for x in ('-1', '9'):
            code, out, err = self.run_cli('analyze', path, '--bypass', '0', x)
            self.assertEqual(code, 1)
            report = json.loads(out)
            self.assertEqual(report['error'], 'PreconditionError')
            self.assertEqual(report['witness'], [int(x), 5])
            self.assertIn('INVSG Precondition Error', err)

    def test_analyze_empty(self):
        code, out, _ = self.run_cli('analyze', self.write('empty.sgp', '0\n'))
        self.assertEqual(code, 0)
        report = json.loads(out)
        self.assertEqual(report['order'], 0)
        self.assertEqual(report['idempotent_count'], 0)
        self.assertEqual(report['green']['H'], [])
        self.assertEqual(report['monogenic'], [])

    def test_missing_file(self):
        code, out, err = self.run_cli('analyze', os.path.join(self.tmpdir.name, 'absent.sgp'))
        self.assertEqual(code, 1)
        self.assertEqual(json.loads(out)['error'], 'InputError')
        self.assertIn('cannot read', err)

    def test_example_figure1(self):
        code, out, _ = self.run_cli('example', 'figure1.slt')
        self.assertEqual(code, 0)
        self.assertIn('hasse:', out)

    def test_analyze_pretty(self):
        code, out, _ = self.run_cli('analyze', self.common.example_path('brandt5.sgp'), '--pretty')
        self.assertEqual(code, 0)
        self.assertTrue(out.startswith('order 5, 3 idempotents'))

    def test_munn(self):
        code, out, _ = self.run_cli('munn', self.common.example_path('figure1.slt'))
        self.assertEqual(code, 0)
        self.assertEqual(parse_sgp(out).order, 18)

    def test_munn_cap(self):
        code, out, _ = self.run_cli('--max-munn-size', '10', 'munn',
                                    self.common.example_path('figure1.slt'))
        self.assertEqual(code, 3)
        self.assertEqual(json.loads(out)['error'], 'CapExceededError')

    def test_compare_iso(self):
        path = self.common.example_path('chain2.slt')
        code, out, _ = self.run_cli('compare', path, path)
        self.assertEqual(code, 0)
        self.assertTrue(json.loads(out)['isomorphic'])

    def test_compare_lattice(self):
        path = self.common.example_path('brandt5.sgp')
        code, out, _ = self.run_cli('compare', path, path, '--mode', 'lattice')
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)['verdict'], 'confirmed')

    def test_compare_pa_of_chains(self):
        path = self.common.example_path('chain2.slt')
        code, out, _ = self.run_cli('compare', path, path, '--mode', 'pa')
        self.assertEqual(code, 0)
        report = json.loads(out)
        self.assertEqual(report['verdict'], 'confirmed')
        self.assertEqual(report['semilattice']['verdict'], 'confirmed')

    def test_compare_psa_plain_semigroup(self):
        left_zero = self.write('left_zero.sgp', '2\n0 0\n1 1\n')
        code, out, _ = self.run_cli('compare', self.common.example_path('chain2.slt'), left_zero,
                                    '--mode', 'psa')
        self.assertEqual(code, 0)
        self.assertFalse(json.loads(out)['psa_isomorphic'])

    def test_compare_capped(self):
        path = self.common.example_path('brandt5.sgp')
        code, out, _ = self.run_cli('--max-pa-size', '3', 'compare', path, path, '--mode', 'pa')
        self.assertEqual(code, 3)
        self.assertEqual(json.loads(out)['verdict'], 'inconclusive')

    def test_catalog(self):
        output = os.path.join(self.tmpdir.name, 'catalog.json')
        code, _, _ = self.run_cli('catalog', '--max-order', '2', '-o', output)
        self.assertEqual(code, 0)
        with open(output, encoding='utf-8') as f:
            data = json.load(f)
        self.assertEqual([m['order'] for m in data['members']], [1, 2, 2])

    def test_catalog_bound(self):
        code, _, _ = self.run_cli('--max-catalog-order', '1', 'catalog', '--max-order', '2')
        self.assertEqual(code, 3)

    def test_example(self):
        code, out, _ = self.run_cli('example', 'chain2.slt')
        self.assertEqual(code, 0)
        self.assertIn('meet:', out)

    def test_cap_flags_declared(self):
        args = get_argparser().parse_args(['--max-lattice-nodes', '7', 'example', 'brandt5.sgp'])
        self.assertEqual(args.max_lattice_nodes, 7)
        self.assertIsNone(args.max_pa_size)


if __name__ == '__main__':
    unittest.main()
