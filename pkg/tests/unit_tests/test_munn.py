import unittest

from invsg.connectivity import is_tightly_connected
from invsg.error import AxiomError, CapExceededError, PreconditionError
from invsg.fis_core import (automorphisms, check_conjugation_criterion, has_nontrivial_isolated_subgroup,
                            is_combinatorial, is_fundamental)
from invsg.lattice import verify_theorem_2_4
from invsg.munn import (dual_of_chain, enumerate_semilattices, find_semilattice_isomorphism,
                        ideal_automorphism_group_orders, ideal_isomorphisms, load_semilattice,
                        munn_representation, munn_semigroup, principal_ideal)

from common_methods import CommonMethods, TWO_TOPS_COVERS


class TestSemilattice(unittest.TestCase):

    def setUp(self):
        self.common = CommonMethods()

    def test_two_tops_structure(self):
        E = self.common.two_tops()
        self.assertEqual(E.covers(), sorted(TWO_TOPS_COVERS))
        self.assertEqual(E.bottom(), 0)
        self.assertFalse(E.is_chain())
        self.assertEqual(int(E.meet[4, 5]), 2)
        self.assertEqual(E.principal_ideal(4), (0, 1, 2, 4))

    def test_principal_ideal_labels(self):
        F = principal_ideal(self.common.two_tops(), 5)
        self.assertEqual(F.order, 4)
        self.assertEqual(F.labels, ('0', 'f1', 'f2', 'e1'))
        self.assertEqual(F.parent_indices, (0, 2, 3, 5))

    def test_not_commutative(self):
        with self.assertRaises(AxiomError):
            load_semilattice(2, meet=[[0, 0], [1, 1]])

    def test_no_meet(self):
        with self.assertRaises(AxiomError):
            load_semilattice(2, covers=[])

    def test_dual_of_chain(self):
        E = self.common.chain2_semilattice()
        D = dual_of_chain(E)
        self.assertTrue(D.below(1, 0))
        self.assertIsNotNone(find_semilattice_isomorphism(D, E))
        with self.assertRaises(PreconditionError):
            dual_of_chain(self.common.two_tops())

    def test_enumeration_counts(self):
        found = enumerate_semilattices(5)
        self.assertEqual([len(found[n]) for n in range(1, 6)], [1, 1, 2, 5, 15])


class TestMunnSemigroup(unittest.TestCase):

    def setUp(self):
        self.common = CommonMethods()

    def test_chain2(self):
        T = munn_semigroup(self.common.chain2_semilattice())
        self.assertEqual(T.order, 2)
        self.assertEqual(len(T.idempotents), 2)

    def test_one_point(self):
        T = munn_semigroup(load_semilattice(1, meet=[[0]]))
        self.assertEqual(T.order, 1)

    def test_two_tops(self):
        E = self.common.two_tops()
        T = munn_semigroup(E)
        self.assertEqual(T.order, 18)
        self.assertEqual(len(T.idempotents), 6)
        self.assertEqual(sorted(T.identity_of), list(range(6)))
        self.assertTrue(is_fundamental(T))
        self.assertFalse(is_combinatorial(T))
        self.assertFalse(has_nontrivial_isolated_subgroup(T))
        self.assertTrue(is_tightly_connected(T))
        self.common.assert_inverse_semigroup(self, T)

    def test_two_tops_d_classes(self):
        T = munn_semigroup(self.common.two_tops())
        D, H = T.green['D'], T.green['H']
        self.assertEqual(D.sizes(), [1, 8, 9])
        k = len(D.classes)
        self.assertTrue(all(D.order[i, j] or D.order[j, i] for i in range(k) for j in range(k)))

        zero, f0, e0 = T.identity_of[0], T.identity_of[1], T.identity_of[4]
        self.assertEqual(len(D.class_of(zero)), 1)
        lower = set(D.class_of(zero)) | set(D.class_of(f0))
        self.assertEqual(len(lower), 10)
        U, _ = T.restrict(lower)
        self.assertTrue(is_combinatorial(U))

        top = set(D.class_of(e0))
        self.assertEqual(sorted(len(c) for c in H.classes if c[0] in top), [2, 2, 2, 2])

    def test_two_tops_conjugation(self):
        T = munn_semigroup(self.common.two_tops())
        self.assertEqual(len(automorphisms(T)), 2)
        for phi in automorphisms(T):
            self.assertTrue(check_conjugation_criterion(T, T, phi))
        # swap the nonidempotent elements of H_e0 and H_e1, fixing the rest
        H = T.green['H']
        g0, = (x for x in H.class_of(T.identity_of[4]) if x not in T.idempotent_set)
        g1, = (x for x in H.class_of(T.identity_of[5]) if x not in T.idempotent_set)
        phi = list(range(T.order))
        phi[g0], phi[g1] = g1, g0
        self.assertFalse(check_conjugation_criterion(T, T, tuple(phi)))

    def test_two_tops_lattice_harness(self):
        T = munn_semigroup(self.common.two_tops())
        report = verify_theorem_2_4(T, T)
        self.assertEqual(report['verdict'], 'confirmed')
        self.assertEqual(len(report['records']), 2)
        self.assertTrue(all(r['psi_E_kind'] == 'isomorphism' for r in report['records']))
        self.assertTrue(all(r['verdict'] == 'confirmed' for r in report['records']))

    def test_two_tops_labels(self):
        T = munn_semigroup(self.common.two_tops())
        self.assertIn('e0→e1 [0↦0, f0↦f2, f1↦f1, e0↦e1]', T.labels)

    def test_ideal_isomorphisms(self):
        E = self.common.two_tops()
        self.assertEqual(len(ideal_isomorphisms(E, 4, 5)), 2)
        self.assertEqual(ideal_isomorphisms(E, 1, 4), [])
        self.assertEqual(ideal_automorphism_group_orders(E), {0: 1, 1: 1, 2: 1, 3: 1, 4: 2, 5: 2})

    def test_cap(self):
        with self.assertRaises(CapExceededError):
            munn_semigroup(self.common.two_tops(), cap=10)


class TestMunnRepresentation(unittest.TestCase):

    def setUp(self):
        self.common = CommonMethods()

    def test_brandt_is_fundamental(self):
        rep = munn_representation(self.common.brandt5())
        self.assertEqual(rep.munn.order, 5)
        self.assertTrue(rep.is_homomorphism)
        self.assertTrue(rep.is_injective)
        self.assertTrue(rep.is_full)

    def test_group_with_zero_collapses(self):
        rep = munn_representation(self.common.z2_with_zero())
        self.assertEqual(rep.munn.order, 2)
        self.assertFalse(rep.is_injective)
        self.assertEqual(rep.images[1], rep.images[2])


if __name__ == '__main__':
    unittest.main()
