import unittest

from invsg.catalog import Catalog, brandt5, build_catalog, inverse_semigroups_of_order, load_catalog
from invsg.error import CapExceededError, InputError
from invsg.munn import enumerate_semilattices

from common_methods import CommonMethods


class TestCatalog(unittest.TestCase):

    def setUp(self):
        self.common = CommonMethods()

    def test_small_orders(self):
        catalog = build_catalog(2)
        self.assertEqual(len(catalog), 3)
        self.assertEqual([S.order for S in catalog], [1, 2, 2])
        self.assertIsNotNone(catalog.find(self.common.z2()))
        self.assertIsNotNone(catalog.find(self.common.chain2()))

    def test_counts(self):
        semilattices = enumerate_semilattices(4)
        self.assertEqual(len(inverse_semigroups_of_order(3, semilattices)), 5)
        self.assertEqual(len(inverse_semigroups_of_order(4, semilattices)), 16)

    def test_members_are_realised(self):
        for S in build_catalog(3):
            self.common.assert_inverse_semigroup(self, S)
            self.assertEqual(len(S.concrete_rep), S.order)

    def test_bound(self):
        with self.assertRaises(CapExceededError):
            build_catalog(4, bound=3)

    def test_dumps_and_load(self):
        catalog = build_catalog(3)
        text = catalog.dumps()
        loaded = load_catalog(text)
        self.assertIsInstance(loaded, Catalog)
        self.assertEqual(loaded.max_order, 3)
        self.assertEqual(len(loaded.of_order(3)), 5)
        self.assertEqual(loaded.dumps(), text)

    def test_malformed(self):
        with self.assertRaises(InputError):
            load_catalog('{"members": 3}')

    def test_brandt(self):
        S = brandt5()
        self.assertEqual(S.labels, ('0', 'e11', 'e22', 'e12', 'e21'))
        self.assertEqual(int(S.table[3, 4]), 1)
        self.assertEqual(int(S.table[4, 3]), 2)


if __name__ == '__main__':
    unittest.main()
