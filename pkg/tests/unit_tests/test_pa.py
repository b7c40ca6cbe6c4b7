import unittest

from invsg.error import CapExceededError, PreconditionError
from invsg.pa import (build_pa, check_restriction_psa_to_pa, conjugate, dually_isomorphic_chains,
                      induced_lattice_isomorphism, induced_pa_isomorphism, is_pa_induced_by,
                      pa_isomorphisms, verify_result_3_1, verify_theorem_3_2, verify_theorem_3_4)
from invsg.pbij import PartialBijection

from common_methods import CommonMethods


class TestBuildPA(unittest.TestCase):

    def setUp(self):
        self.common = CommonMethods()

    def test_chain2(self):
        PA = build_pa(self.common.chain2())
        self.assertEqual(PA.order, 6)
        self.assertEqual(PA.summary(), {'order': 6, 'mode': 'pa', 'idempotent_count': 4,
                                        'unit_group_order': 1})
        self.assertEqual(PA.empty, 0)
        self.assertEqual(PA.concrete_rep[PA.empty], PartialBijection.empty(2))
        self.assertEqual(PA.concrete_rep[PA.identity], PartialBijection.identity(2))
        self.assertTrue(PA.idempotents_match_lattice())
        self.common.assert_inverse_semigroup(self, PA)

    def test_psa_of_chain_matches_pa(self):
        S = self.common.chain2()
        self.assertEqual(build_pa(S, 'psa').order, build_pa(S, 'pa').order)

    def test_group(self):
        PA = build_pa(self.common.z2())
        self.assertEqual(PA.order, 3)
        self.assertTrue(PA.idempotents_match_lattice())

    def test_brandt(self):
        PA = build_pa(self.common.brandt5())
        # 1 + 9 + 4 + 2 + 2 isomorphisms over the eight inverse subsemigroups
        self.assertEqual(PA.order, 18)
        self.assertEqual(len(PA.unit_group()), 2)
        self.assertTrue(PA.idempotents_match_lattice())

    def test_psa_of_left_zero(self):
        PSA = build_pa(self.common.left_zero2(), 'psa')
        self.assertEqual(PSA.order, 7)
        self.assertEqual(len(PSA.unit_group()), 2)

    def test_pa_needs_inverse(self):
        with self.assertRaises(PreconditionError):
            build_pa(self.common.left_zero2(), 'pa')

    def test_unknown_mode(self):
        with self.assertRaises(PreconditionError):
            build_pa(self.common.chain2(), 'spa')

    def test_cap(self):
        with self.assertRaises(CapExceededError):
            build_pa(self.common.brandt5(), cap=10)


class TestPAIsomorphisms(unittest.TestCase):

    def setUp(self):
        self.common = CommonMethods()

    def test_conjugate(self):
        alpha = PartialBijection.from_dict(2, {0: 1})
        self.assertEqual(conjugate(alpha, (1, 0)), PartialBijection.from_dict(2, {1: 0}))
        self.assertEqual(conjugate(alpha, PartialBijection.identity(2)), alpha)

    def test_chain2_automorphisms(self):
        PA = build_pa(self.common.chain2())
        found = list(pa_isomorphisms(PA, PA))
        self.assertEqual(len(found), 2)
        node_maps = sorted(induced_lattice_isomorphism(Phi).node_map for Phi in found)
        self.assertEqual(node_maps, [(0, 1, 2, 3), (0, 2, 1, 3)])

    def test_different_orders(self):
        PA_S, PA_T = build_pa(self.common.chain2()), build_pa(self.common.z2())
        self.assertEqual(list(pa_isomorphisms(PA_S, PA_T)), [])

    def test_conjugation_by_dual_chain_map(self):
        PA = build_pa(self.common.chain2())
        Phi = induced_pa_isomorphism(PA, PA, (1, 0))
        self.assertIsNotNone(Phi)
        self.assertTrue(is_pa_induced_by(Phi, (1, 0)))
        self.assertFalse(is_pa_induced_by(Phi, (0, 1)))
        self.assertEqual(induced_lattice_isomorphism(Phi).node_map, (0, 2, 1, 3))
        self.assertTrue(dually_isomorphic_chains(self.common.chain2(), self.common.chain2()))

    def test_conjugation_by_brandt_automorphism(self):
        PA = build_pa(self.common.brandt5())
        Phi = induced_pa_isomorphism(PA, PA, (0, 2, 1, 4, 3))
        self.assertIsNotNone(Phi)
        self.assertEqual(Phi(PA.identity), PA.identity)
        self.assertEqual(Phi(PA.empty), PA.empty)

    def test_restriction_of_psa_isomorphism(self):
        S = self.common.chain2()
        PSA = build_pa(S, 'psa')
        for Phi in pa_isomorphisms(PSA, PSA):
            restricted = check_restriction_psa_to_pa(Phi)
            self.assertEqual(len(restricted.element_map), 6)
            self.assertEqual(sorted(restricted.element_map), list(range(6)))


class TestPAHarnesses(unittest.TestCase):

    def setUp(self):
        self.common = CommonMethods()

    def test_chain2_confirmed(self):
        S = self.common.chain2()
        report = verify_theorem_3_2(S, S)
        self.assertEqual(report['verdict'], 'confirmed')
        self.assertEqual(len(report['records']), 2)
        branches = sorted(r['branch'] for r in report['records'])
        self.assertEqual(branches, ['dual-chain', 'isomorphism'])
        self.assertTrue(report['iff_holds'])

    def test_not_pa_isomorphic(self):
        report = verify_theorem_3_2(self.common.chain2(), self.common.z2())
        self.assertFalse(report['pa_isomorphic'])
        self.assertFalse(report['isomorphic'])
        self.assertEqual(report['verdict'], 'confirmed')

    def test_brandt_confirmed(self):
        S = self.common.brandt5()
        report = verify_theorem_3_2(S, S)
        self.assertEqual(report['verdict'], 'confirmed')
        self.assertTrue(all(r['unique'] for r in report['records']))

    def test_target_not_inverse(self):
        report = verify_theorem_3_2(self.common.chain2(), self.common.left_zero2())
        self.assertEqual(report['verdict'], 'out-of-scope')

    def test_capped(self):
        S = self.common.brandt5()
        report = verify_theorem_3_2(S, S, cap=5)
        self.assertEqual(report['verdict'], 'inconclusive')
        self.assertFalse(report['complete'])

    def test_semilattice_harness(self):
        S = self.common.chain2()
        report = verify_result_3_1(S, S)
        self.assertEqual(report['verdict'], 'confirmed')
        kinds = sorted(r['phi_E_kind'] for r in report['records'])
        self.assertEqual(kinds, ['dual-isomorphism', 'isomorphism'])
        self.assertTrue(all(r['induced_by_E_bijection'] for r in report['records']))

    def test_semilattice_harness_scope(self):
        report = verify_result_3_1(self.common.z2(), self.common.z2())
        self.assertFalse(report['hypotheses']['semilattice'])
        self.assertEqual(report['verdict'], 'out-of-scope')

    def test_psa_against_plain_semigroup(self):
        report = verify_theorem_3_4(self.common.chain2(), self.common.left_zero2())
        self.assertFalse(report['target_inverse'])
        self.assertEqual([m['order'] for m in report['monoids']], [6, 7])
        self.assertFalse(report['psa_isomorphic'])
        self.assertTrue(report['pa_inside_psa'])
        self.assertEqual(report['verdict'], 'confirmed')

    def test_psa_chain2(self):
        S = self.common.chain2()
        report = verify_theorem_3_4(S, S)
        self.assertEqual(report['verdict'], 'confirmed')
        self.assertEqual(len(report['records']), 2)


if __name__ == '__main__':
    unittest.main()
