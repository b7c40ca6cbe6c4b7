import unittest

from invsg.cayley_io import format_sgp, format_slt, parse_sgp, parse_slt, read_sgp, read_slt, sniff
from invsg.error import InputError
from invsg.fis_core import load_semigroup
from invsg.munn import load_semilattice

from common_methods import CommonMethods


class TestCayleyFiles(unittest.TestCase):

    def setUp(self):
        self.common = CommonMethods()

    def test_bundled_brandt(self):
        data = read_sgp(self.common.example_path('brandt5.sgp'))
        self.assertEqual(data.order, 5)
        self.assertEqual(data.inv, [0, 1, 2, 4, 3])
        self.assertEqual(data.labels, ['0', 'e11', 'e22', 'e12', 'e21'])
        S = load_semigroup(data.order, data.table, data.inv, labels=data.labels)
        self.assertEqual(S.table.tolist(), self.common.brandt5().table.tolist())

    def test_format_is_canonical(self):
        S = self.common.brandt5()
        text = format_sgp(S)
        data = parse_sgp(text)
        self.assertEqual(format_sgp(load_semigroup(data.order, data.table, data.inv,
                                                   labels=data.labels)), text)
        self.assertTrue(text.endswith('# label 4: e21\n'))

    def test_without_inverse_line(self):
        data = parse_sgp('2\n0 1\n1 0\n')
        self.assertIsNone(data.inv)
        self.assertIsNone(data.labels)

    def test_short_row(self):
        with self.assertRaises(InputError):
            parse_sgp('2\n0 1\n1\n')

    def test_trailing_garbage(self):
        with self.assertRaises(InputError):
            parse_sgp('1\n0\nfoo\n')

    def test_missing_file(self):
        with self.assertRaises(InputError):
            read_sgp(self.common.example_path('no_such_file.sgp'))


class TestSemilatticeFiles(unittest.TestCase):

    def setUp(self):
        self.common = CommonMethods()

    def test_bundled_two_tops(self):
        data = read_slt(self.common.example_path('figure1.slt'))
        self.assertEqual(data.order, 6)
        self.assertEqual(data.labels, ['0', 'f0', 'f1', 'f2', 'e0', 'e1'])
        self.assertEqual(sorted(data.covers), sorted([(0, 1), (0, 2), (0, 3), (1, 4),
                                                      (2, 4), (2, 5), (3, 5)]))

    def test_meet_round_trip(self):
        E = self.common.two_tops()
        text = format_slt(E)
        data = parse_slt(text)
        F = load_semilattice(data.order, meet=data.meet, labels=data.labels)
        self.assertEqual(F.meet.tolist(), E.meet.tolist())

    def test_bad_cover_line(self):
        with self.assertRaises(InputError):
            parse_slt('2\nhasse:\n0 1\n')

    def test_sniff(self):
        self.assertEqual(sniff('2\nmeet:\n0 0\n0 1\n'), 'slt')
        self.assertEqual(sniff('1\n0\n'), 'sgp')


if __name__ == '__main__':
    unittest.main()
