import unittest

from invsg.connectivity import (Bypass, connectivity_witness, find_short_bypass, find_tight_bypass,
                                is_shortly_connected, is_tightly_connected, connectivity_equivalence,
                                order_ideal_check, tightly_covers, x_covers)
from invsg.error import PreconditionError
from invsg.munn import munn_semigroup

from common_methods import CommonMethods


class TestCovers(unittest.TestCase):

    def setUp(self):
        self.common = CommonMethods()
        self.brandt = self.common.brandt5()

    def test_brandt(self):
        # zero is the only idempotent below e12·e21 = e11
        self.assertTrue(x_covers(self.brandt, 0, 3))
        self.assertTrue(tightly_covers(self.brandt, 0, 3))
        self.assertFalse(x_covers(self.brandt, 2, 3))

    def test_not_idempotent(self):
        with self.assertRaises(PreconditionError):
            x_covers(self.brandt, 3, 3)

    def test_group_element(self):
        with self.assertRaises(PreconditionError):
            tightly_covers(self.common.z2_with_zero(), 0, 2)

    def test_element_out_of_range(self):
        for x in (-1, 5, 9):
            with self.assertRaises(PreconditionError) as cm:
                find_short_bypass(self.brandt, 0, x)
            self.assertEqual(cm.exception.witness, (x, 5))
            with self.assertRaises(PreconditionError):
                x_covers(self.brandt, 0, x)
            with self.assertRaises(PreconditionError):
                find_tight_bypass(self.brandt, 0, x)
        with self.assertRaises(PreconditionError):
            find_short_bypass(self.brandt, -1, 3)


class TestBypass(unittest.TestCase):

    def setUp(self):
        self.common = CommonMethods()
        self.brandt = self.common.brandt5()

    def test_brandt_short(self):
        bypass = find_short_bypass(self.brandt, 0, 3)
        self.assertEqual(bypass.chain, (0, 1))
        self.assertEqual(bypass.stages, (0, 3))
        self.assertEqual(len(bypass), 1)
        self.assertEqual(bypass.first_nongroup_stage(self.brandt), 1)
        self.assertEqual(bypass.validate(self.brandt), [])
        self.assertEqual(bypass.to_json(), {'x': 3, 'chain': [0, 1], 'stages': [0, 3],
                                            'tight': False})

    def test_brandt_tight(self):
        bypass = find_tight_bypass(self.brandt, 0, 3)
        self.assertTrue(bypass.tight)
        self.assertEqual(bypass.validate(self.brandt), [])

    def test_group_with_zero_short_only(self):
        S = self.common.z2_with_zero()
        bypass = find_short_bypass(S, 0, 2)
        self.assertEqual(bypass.chain, (0, 1))
        with self.assertRaises(PreconditionError):
            find_tight_bypass(S, 0, 2)

    def test_not_below(self):
        with self.assertRaises(PreconditionError):
            find_short_bypass(self.brandt, 1, 3)

    def test_validate_rejects_forgery(self):
        forged = Bypass(3, (0, 2), (0, 0), False)
        self.assertNotEqual(forged.validate(self.brandt), [])

    def test_two_tops_munn_bypasses(self):
        T = munn_semigroup(self.common.two_tops())
        for x in range(T.order):
            r = T.range_idempotent(x)
            for e in T.idempotents:
                if T.strictly_below(e, r):
                    bypass = find_short_bypass(T, e, x)
                    self.assertIsNotNone(bypass)
                    self.assertEqual(bypass.validate(T), [])


class TestConnectivity(unittest.TestCase):

    def setUp(self):
        self.common = CommonMethods()

    def test_brandt(self):
        S = self.common.brandt5()
        self.assertTrue(is_shortly_connected(S))
        self.assertTrue(is_tightly_connected(S))
        self.assertTrue(order_ideal_check(S))
        self.assertIsNone(connectivity_witness(S, tight=True))

    def test_semilattice(self):
        self.assertTrue(is_tightly_connected(self.common.two_tops().as_semigroup()))

    def test_connectivity_equivalence(self):
        for S in (self.common.brandt5(), self.common.z2_with_zero(), self.common.chain2()):
            report = connectivity_equivalence(S)
            self.assertTrue(report.holds)
            self.assertTrue(report.to_json()['equivalence_holds'])


if __name__ == '__main__':
    unittest.main()
