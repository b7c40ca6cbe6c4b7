"""
Structural properties checked exhaustively over the catalog of inverse
semigroups of order at most four (five for semilattices and the
connectivity equivalence).
"""
import unittest

from parameterized import parameterized

from invsg.catalog import brandt5, build_catalog, inverse_semigroups_of_order
from invsg.connectivity import is_shortly_connected, is_tightly_connected, connectivity_equivalence, x_covers
from invsg.fis_core import (automorphisms, check_conjugation_criterion, green_classes_from_rep,
                            is_combinatorial, is_fundamental, isomorphism_search, natural_order)
from invsg.lattice import enumerate_subsemigroups
from invsg.munn import enumerate_semilattices, munn_representation, munn_semigroup
from invsg.pa import automorphism_group, build_pa
from invsg.pbij import natural_leq

CATALOG = build_catalog(4)
MEMBERS = [(f'order{S.order}_{i}', S) for i, S in enumerate(CATALOG)]
SEMILATTICES = [(f'order{n}_{i}', E) for n, found in enumerate_semilattices(5).items()
                for i, E in enumerate(found)]


def signed_powers(S, x):
    """{x^m : m != 0}, with x^-k = (x⁻¹)^k."""
    found = set()
    for base in (x, S.inverse(x)):
        power = base
        for _ in range(S.order + 1):
            found.add(power)
            power = S.product(power, base)
    return found


class TestCatalogMembers(unittest.TestCase):

    @parameterized.expand(MEMBERS)
    def test_green_oracles_agree(self, name, S):
        for tag in 'HLRDJ':
            self.assertEqual(green_classes_from_rep(S, tag).classes, S.green[tag].classes)

    @parameterized.expand(MEMBERS)
    def test_munn_representation(self, name, S):
        rep = munn_representation(S)
        self.assertTrue(rep.is_homomorphism)
        self.assertTrue(rep.is_full)
        self.assertEqual(rep.is_injective, is_fundamental(S))

    @parameterized.expand(MEMBERS)
    def test_connectivity_equivalence(self, name, S):
        self.assertTrue(connectivity_equivalence(S).holds)

    @parameterized.expand(MEMBERS)
    def test_combinatorial_short_is_tight(self, name, S):
        if is_combinatorial(S):
            self.assertEqual(is_shortly_connected(S), is_tightly_connected(S))

    @parameterized.expand(MEMBERS)
    def test_r_class_elements_are_powers(self, name, S):
        for x in S.nongroup:
            powers = signed_powers(S, x)
            for e in S.idempotents:
                shifted = {S.product(e, p) for p in powers}
                for u in S.generate([e, x]):
                    if u != e and S.green['R'].related(u, e):
                        self.assertIn(u, shifted, msg=f'u={u} e={e} x={x}')

    @parameterized.expand(MEMBERS)
    def test_covered_idempotent_has_trivial_h_class(self, name, S):
        for x in S.nongroup:
            for e in S.idempotents:
                if S.product(e, x) not in S.nongroup or not x_covers(S, e, x):
                    continue
                h_class = [u for u in S.generate([e, x])
                           if S.range_idempotent(u) == e and S.domain_idempotent(u) == e]
                self.assertEqual(h_class, [e], msg=f'e={e} x={x}')

    @parameterized.expand(MEMBERS)
    def test_conjugation_criterion_on_automorphisms(self, name, S):
        if not is_fundamental(S):
            return
        for phi in automorphisms(S):
            self.assertTrue(check_conjugation_criterion(S, S, phi))

    @parameterized.expand(MEMBERS)
    def test_natural_order_is_restriction(self, name, S):
        leq = natural_order(S)
        rep = S.concrete_rep
        for x in S.elements():
            for y in S.elements():
                self.assertEqual(bool(leq[x, y]), natural_leq(rep[x], rep[y]), msg=f'x={x} y={y}')

    @parameterized.expand(MEMBERS)
    def test_green_relations_restrict_to_inverse_subsemigroups(self, name, S):
        lattice = enumerate_subsemigroups(S, 'inverse')
        for members in lattice.members:
            if not members:
                continue
            U, embedding = S.restrict(members)
            # D does not restrict in general, so only H, L and R are compared
            for tag in 'HLR':
                direct = sorted(tuple(embedding[i] for i in c) for c in U.green[tag].classes)
                self.assertEqual(S.green[tag].restricted_to(members), direct,
                                 msg=f'{tag} on {members}')

    @parameterized.expand(MEMBERS)
    def test_pa_units_are_automorphisms(self, name, S):
        PA = build_pa(S)
        units = sorted(PA.pa_elements[i].map.mapping for i in PA.unit_group())
        self.assertEqual(units, sorted(tuple(phi) for phi in automorphism_group(S)))

    @parameterized.expand(MEMBERS)
    def test_pa_idempotents_are_the_lattice(self, name, S):
        PA = build_pa(S)
        self.assertEqual(len(PA.idempotents), len(enumerate_subsemigroups(S, 'inverse')))
        self.assertTrue(PA.idempotents_match_lattice())


class TestSemilatticeCatalog(unittest.TestCase):

    @parameterized.expand(SEMILATTICES)
    def test_munn_semigroup_is_fundamental(self, name, E):
        self.assertTrue(is_fundamental(munn_semigroup(E)))


class TestOrderFive(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.members = inverse_semigroups_of_order(5)

    def test_count(self):
        self.assertEqual(len(self.members), 52)

    def test_contains_brandt(self):
        B = brandt5()
        self.assertTrue(any(isomorphism_search(B, S) is not None for S in self.members))

    def test_connectivity_equivalence(self):
        self.assertTrue(all(connectivity_equivalence(S).holds for S in self.members))


if __name__ == '__main__':
    unittest.main()
