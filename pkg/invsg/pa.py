"""
Partial automorphism monoids.

PA(S) consists of all isomorphisms between inverse subsemigroups of an
inverse semigroup S; PSA(S) of all isomorphisms between arbitrary
subsemigroups of any semigroup S. Both include the empty map and are
inverse submonoids of I_S under composition.
"""
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from . import messages
from . import options
from .error import (AxiomError, CapExceededError, InvariantFailure, PreconditionError,
                    TheoryViolation)
from .fis_core import (FiniteInverseSemigroup, FiniteSemigroup, as_inverse_semigroup, automorphisms,
                       has_nontrivial_isolated_subgroup, is_isomorphism, isomorphism_search,
                       iter_isomorphisms, validate_inverse_table)
from .lattice import (LatticeIsomorphism, base_bijection, base_partial_bijection, e_bijection,
                      enumerate_subsemigroups, lattice_harness_hypotheses, validate_lattice_isomorphism)
from .pbij import PartialBijection, compose, invert

MODES = {'pa': 'inverse', 'psa': 'all'}


@dataclass(frozen=True)
class PAElement:
    """An isomorphism from lattice node ``domain`` onto node ``target``."""
    domain: int
    target: int
    map: PartialBijection

    def label(self):
        pairs = ', '.join(f'{i}↦{j}' for i, j in self.map.items())
        return f'H{self.domain}→H{self.target} [{pairs}]'


class PartialAutomorphismMonoid(FiniteInverseSemigroup):
    """
    PA(S) or PSA(S) as a validated inverse monoid.

    Attributes
    ----------
    parent : FiniteSemigroup
    mode : str
        ``pa`` or ``psa``
    lattice : SubsemigroupLattice
        Nodes the maps run between
    pa_elements : tuple of PAElement
    identity, empty : int
        Indices of 1_S and of the empty map
    identity_of_node : dict
        Lattice node to the index of 1_H
    """

    def __init__(self, table, inv, parent, mode, lattice, pa_elements):
        super().__init__(table, inv, [a.map for a in pa_elements], [a.label() for a in pa_elements])
        self.parent = parent
        self.mode = mode
        self.lattice = lattice
        self.pa_elements = tuple(pa_elements)
        self.index_of_map = {a.map: i for i, a in enumerate(self.pa_elements)}
        self.identity_of_node = {a.domain: i for i, a in enumerate(self.pa_elements)
                                 if a.domain == a.target and _is_identity(a.map)}
        self.identity = self.identity_of_node[len(lattice) - 1]
        self.empty = self.identity_of_node[0]

    def unit_group(self):
        top = len(self.lattice) - 1
        return [i for i, a in enumerate(self.pa_elements) if a.domain == top]

    def summary(self):
        return {'order': self.order,
                'mode': self.mode,
                'idempotent_count': len(self.idempotents),
                'unit_group_order': len(self.unit_group())}

    def idempotents_match_lattice(self):
        """1_H ↦ H is an order isomorphism of E_PA onto the subsemigroup lattice."""
        if sorted(self.identity_of_node.values()) != list(self.idempotents):
            return False
        for i, a in self.identity_of_node.items():
            for j, b in self.identity_of_node.items():
                if bool(self.leq[a, b]) != self.lattice.contains(j, i):
                    return False
        return True


def _is_identity(mapping):
    return all(i == j for i, j in mapping.items())


def ensure_inverse(S):
    try:
        return as_inverse_semigroup(S)
    except AxiomError:
        raise PreconditionError('partial automorphisms of inverse subsemigroups need an inverse semigroup')


def _node_semigroups(S, lattice):
    return [FiniteSemigroup.restrict(S, lattice.members[i])[0] for i in range(len(lattice))]


def build_pa(S, mode='pa', cap=None, lattice_cap=None):
    """
    Build PA(S) (``mode='pa'``) or PSA(S) (``mode='psa'``).

    For every ordered pair of nodes, every isomorphism between the
    corresponding subsemigroups is listed; elements are sorted by
    (domain node, target node, map) so the empty map comes first.

    Raises
    ------
    CapExceededError
        More than ``max_pa_size`` elements, or the lattice exceeds its cap
    """
    if mode not in MODES:
        raise PreconditionError(f'unknown partial automorphism mode {mode!r}')
    if mode == 'pa':
        S = ensure_inverse(S)
    cap = options.get('max_pa_size', cap)
    lattice = enumerate_subsemigroups(S, MODES[mode], cap=lattice_cap)
    subs = _node_semigroups(S, lattice)
    buckets = {}
    for i, sub in enumerate(subs):
        buckets.setdefault((sub.order, tuple(sorted(sub.element_invariants()))), []).append(i)
    elements = []
    for i, sub in enumerate(subs):
        key = (sub.order, tuple(sorted(sub.element_invariants())))
        for j in buckets[key]:
            for phi in iter_isomorphisms(sub, subs[j]):
                pairs = {lattice.members[i][k]: lattice.members[j][v] for k, v in enumerate(phi)}
                elements.append(PAElement(i, j, PartialBijection.from_dict(S.order, pairs)))
                if len(elements) > cap:
                    raise CapExceededError(f'{mode.upper()} monoid exceeds {cap} elements')
    elements.sort(key=lambda a: (a.domain, a.target, a.map.mapping))
    index = {a.map: k for k, a in enumerate(elements)}
    n = len(elements)
    table = np.zeros((n, n), dtype=np.int64)
    for k, a in enumerate(elements):
        for m, b in enumerate(elements):
            product = compose(a.map, b.map)
            if product not in index:
                raise InvariantFailure('composite of partial automorphisms is not one',
                                       witness=(k, m, str(product)))
            table[k, m] = index[product]
    inv = [index[invert(a.map)] for a in elements]
    table, inv = validate_inverse_table(n, table, inv)
    messages.status('pa', f'{mode.upper()} has {n} elements over {len(lattice)} subsemigroups')
    return PartialAutomorphismMonoid(table, inv, S, mode, lattice, elements)


@dataclass(frozen=True)
class PAIsomorphism:
    """A monoid isomorphism Φ between partial automorphism monoids."""
    source: PartialAutomorphismMonoid = field(compare=False, repr=False)
    target: PartialAutomorphismMonoid = field(compare=False, repr=False)
    element_map: Tuple[int, ...]

    def __call__(self, k):
        return self.element_map[k]

    def to_json(self):
        return {'element_map': list(self.element_map)}


def pa_isomorphisms(PA_S, PA_T, limit=None):
    """
    Enumerate monoid isomorphisms PA_S → PA_T with the identity and the
    empty map pinned.
    """
    if PA_S.order != PA_T.order:
        return
    pin = {PA_S.identity: PA_T.identity, PA_S.empty: PA_T.empty}
    for phi in iter_isomorphisms(PA_S, PA_T, limit=limit, pin=pin):
        yield PAIsomorphism(PA_S, PA_T, phi)


def induced_lattice_isomorphism(Phi):
    """
    Φ* defined by 1_H Φ = 1_{HΦ*}.

    Raises
    ------
    InvariantFailure
        Some 1_H is not sent to an identity map, or Φ* is not a lattice isomorphism
    """
    source, target = Phi.source, Phi.target
    node_of_identity = {k: node for node, k in target.identity_of_node.items()}
    node_map = []
    for node in range(len(source.lattice)):
        image = Phi(source.identity_of_node[node])
        if image not in node_of_identity:
            raise InvariantFailure('identity map not sent to an identity map', witness=(node, image))
        node_map.append(node_of_identity[image])
    star = LatticeIsomorphism(source.lattice, target.lattice, tuple(node_map))
    if not validate_lattice_isomorphism(star):
        raise InvariantFailure('induced node map is not a lattice isomorphism', witness=node_map)
    return star


def _as_pbij(phi):
    return PartialBijection(len(phi), tuple(int(y) for y in phi))


def conjugate(alpha, phi):
    """α(φ□φ) = φ⁻¹∘α∘φ, with φ a bijection given as a sequence or PartialBijection."""
    if not isinstance(phi, PartialBijection):
        phi = _as_pbij(phi)
    return compose(compose(invert(phi), alpha), phi)


def is_pa_induced_by(Phi, phi):
    """Φ = (φ□φ) restricted to the source monoid."""
    if Phi.source.parent.order != Phi.target.parent.order:
        return False
    target = Phi.target
    for k, a in enumerate(Phi.source.pa_elements):
        if conjugate(a.map, phi) != target.pa_elements[Phi(k)].map:
            return False
    return True


def induced_pa_isomorphism(PA_S, PA_T, phi):
    """
    (φ□φ) restricted to PA_S, or None when it does not map PA_S onto PA_T.
    Any isomorphism or anti-isomorphism φ gives one.
    """
    if PA_S.order != PA_T.order or PA_S.parent.order != PA_T.parent.order:
        return None
    image = []
    for a in PA_S.pa_elements:
        k = PA_T.index_of_map.get(conjugate(a.map, phi))
        if k is None:
            return None
        image.append(k)
    if len(set(image)) != PA_T.order:
        return None
    Phi = PAIsomorphism(PA_S, PA_T, tuple(image))
    if not is_isomorphism(PA_S, PA_T, Phi.element_map):
        raise InvariantFailure('conjugation by a bijection did not give a monoid isomorphism')
    return Phi


def check_restriction_psa_to_pa(Phi_psa, PA_S=None, PA_T=None):
    """
    The restriction of a PSA-isomorphism to PA(S), verified to be a
    PA-isomorphism onto PA(T).

    Raises
    ------
    TheoryViolation
        Some partial automorphism is sent outside PA(T), or the restriction
        is not onto
    """
    S, T = Phi_psa.source.parent, Phi_psa.target.parent
    PA_S = PA_S or build_pa(S, 'pa')
    PA_T = PA_T or build_pa(T, 'pa')
    image = []
    for a in PA_S.pa_elements:
        k = Phi_psa.source.index_of_map[a.map]
        target_map = Phi_psa.target.pa_elements[Phi_psa(k)].map
        m = PA_T.index_of_map.get(target_map)
        if m is None:
            raise TheoryViolation('PSA-isomorphism sends a partial automorphism outside PA(T)',
                                  witness={'element': a.label(), 'image': str(target_map)})
        image.append(m)
    if sorted(image) != list(range(PA_T.order)):
        raise TheoryViolation('restriction of a PSA-isomorphism is not onto PA(T)')
    if not is_isomorphism(PA_S, PA_T, image):
        raise TheoryViolation('restriction of a PSA-isomorphism is not multiplicative')
    return PAIsomorphism(PA_S, PA_T, tuple(image))


def automorphism_group(S, limit=None):
    return automorphisms(S, limit=limit)


def is_chain(S):
    return S.order > 0 and bool((S.leq | S.leq.T).all())


def dually_isomorphic_chains(S, T):
    """Finite chains of the same size are always dually isomorphic."""
    if getattr(S, 'leq', None) is None or getattr(T, 'leq', None) is None:
        return False
    return is_chain(S) and is_chain(T) and S.order == T.order


def _dual_chain_map(S, T):
    rank_s = sorted(range(S.order), key=lambda x: int(S.leq[:, x].sum()))
    rank_t = sorted(range(T.order), key=lambda x: int(T.leq[:, x].sum()), reverse=True)
    phi = [0] * S.order
    for x, y in zip(rank_s, rank_t):
        phi[x] = y
    return tuple(phi)


def _inducing_isomorphisms(S, T, Phi, pin, limit, stop=2):
    found = []
    for gamma in iter_isomorphisms(S, T, limit=limit, pin=pin):
        if is_pa_induced_by(Phi, gamma):
            found.append(gamma)
            if len(found) >= stop:
                break
    return found


def examine_pa_isomorphism(Phi, in_scope, limit=None):
    """
    One record of the PA harness: either φ is the dual isomorphism of two
    chains inducing Φ, or φ̂ is an isomorphism, and it is the unique one
    inducing Φ.
    """
    S, T = Phi.source.parent, Phi.target.parent
    record = {}
    try:
        star = induced_lattice_isomorphism(Phi)
        phi_e = e_bijection(star)
        record['phi_E_kind'] = phi_e.kind
        if not in_scope:
            record['verdict'] = 'out-of-scope'
            return record
        if phi_e.kind == 'dual-isomorphism':
            dual = _dual_chain_map(S, T)
            ok = dually_isomorphic_chains(S, T) and is_pa_induced_by(Phi, dual)
            record['branch'] = 'dual-chain'
            record['verdict'] = 'confirmed' if ok else 'violation'
            return record
        if phi_e.kind != 'isomorphism':
            record['verdict'] = 'violation'
            record['witness'] = 'E-bijection is neither an isomorphism nor a dual isomorphism'
            return record
        partial = base_partial_bijection(star, phi_e)
        hat = base_bijection(star, psi_partial=partial)
        record['branch'] = 'isomorphism'
        record['base_bijection'] = list(hat)
        record['isomorphism'] = is_isomorphism(S, T, hat)
        record['induced'] = is_pa_induced_by(Phi, hat)
        inducing = _inducing_isomorphisms(S, T, Phi, partial, limit)
        record['unique'] = len(inducing) == 1 and inducing[0] == hat
        ok = record['isomorphism'] and record['induced'] and record['unique']
        record['verdict'] = 'confirmed' if ok else 'violation'
    except (TheoryViolation, InvariantFailure) as err:
        record['verdict'] = 'violation'
        record['witness'] = err.to_json()
    return record


def _base_report(mode, hypotheses):
    return {'schema': 1, 'mode': mode, 'hypotheses': hypotheses,
            'in_scope': all(hypotheses.values()), 'records': [], 'complete': True}


def _collect(report, isomorphisms, examine, max_results):
    for k, Phi in enumerate(isomorphisms):
        if k >= max_results:
            report['complete'] = False
            break
        record = examine(Phi)
        record['index'] = k
        report['records'].append(record)


def _finish(report, left, right):
    """Compare both sides of the iff and set the overall verdict."""
    report['iff_holds'] = left == right
    records = report['records']
    if any(r['verdict'] == 'violation' for r in records) or report.get('transfer') is False:
        report['verdict'] = 'violation'
    elif report['in_scope'] and not report['iff_holds']:
        report['verdict'] = 'violation'
    elif not report['complete']:
        report['verdict'] = 'inconclusive'
    elif not report['in_scope']:
        report['verdict'] = 'out-of-scope'
    else:
        report['verdict'] = 'confirmed'
    return report


def _inconclusive(report, err):
    report['complete'] = False
    report['verdict'] = 'inconclusive'
    report['witness'] = err.to_json()
    return report


def verify_theorem_3_2(S, T, limit=None, max_results=None, cap=None):
    """
    PA harness: PA(S) ≅ PA(T) iff S ≅ T or (S, ≤), (T, ≤) are dually
    isomorphic chains, for S tightly connected, fundamental and without
    nontrivial isolated subgroups and T inverse. Every PA-isomorphism found
    must satisfy the dichotomy.
    """
    max_results = options.get('max_isomorphisms', max_results)
    S = ensure_inverse(S)
    hypotheses = lattice_harness_hypotheses(S)
    hypotheses['target_inverse'] = T.is_inverse()
    report = _base_report('pa', hypotheses)
    if not hypotheses['target_inverse']:
        report['verdict'] = 'out-of-scope'
        return report
    T = as_inverse_semigroup(T)
    try:
        PA_S, PA_T = build_pa(S, 'pa', cap=cap), build_pa(T, 'pa', cap=cap)
        report['monoids'] = [PA_S.summary(), PA_T.summary()]
        _collect(report, pa_isomorphisms(PA_S, PA_T, limit=limit),
                 lambda Phi: examine_pa_isomorphism(Phi, report['in_scope'], limit), max_results)
        report['pa_isomorphic'] = bool(report['records'])
        report['isomorphic'] = isomorphism_search(S, T, limit=limit) is not None
        report['dual_chains'] = dually_isomorphic_chains(S, T)
    except CapExceededError as err:
        return _inconclusive(report, err)
    messages.status('pa', f'PA harness over {len(report["records"])} PA-isomorphisms')
    return _finish(report, report['pa_isomorphic'], report['isomorphic'] or report['dual_chains'])


def verify_theorem_3_4(S, T, limit=None, max_results=None, cap=None):
    """
    PSA harness: for S as in :func:`verify_theorem_3_2` and T an arbitrary
    semigroup, PSA(S) ≅ PSA(T) iff S ≅ T or the two are dually isomorphic
    chains. Every PSA-isomorphism must restrict to a PA-isomorphism, and T
    must then be inverse with no nontrivial isolated subgroups.
    """
    max_results = options.get('max_isomorphisms', max_results)
    if not S.is_inverse():
        report = _base_report('psa', {'inverse': False})
        report['verdict'] = 'out-of-scope'
        return report
    S = as_inverse_semigroup(S)
    report = _base_report('psa', lattice_harness_hypotheses(S))
    target_inverse = T.is_inverse()
    report['target_inverse'] = target_inverse
    if target_inverse:
        T = as_inverse_semigroup(T)
    try:
        PSA_S, PSA_T = build_pa(S, 'psa', cap=cap), build_pa(T, 'psa', cap=cap)
        report['monoids'] = [PSA_S.summary(), PSA_T.summary()]
        PA_S = build_pa(S, 'pa', cap=cap)
        report['pa_inside_psa'] = all(a.map in PSA_S.index_of_map for a in PA_S.pa_elements)
        PA_T = build_pa(T, 'pa', cap=cap) if target_inverse else None

        source_ntis = has_nontrivial_isolated_subgroup(S)

        def examine(Phi):
            record = {'target_inverse': target_inverse}
            if not target_inverse:
                if source_ntis:
                    record['verdict'] = 'out-of-scope'
                    return record
                record['verdict'] = 'violation'
                record['witness'] = 'PSA-isomorphic to an inverse semigroup but not inverse'
                return record
            if not source_ntis and has_nontrivial_isolated_subgroup(T):
                record['verdict'] = 'violation'
                record['witness'] = 'nontrivial isolated subgroup appears in the target only'
                return record
            try:
                restricted = check_restriction_psa_to_pa(Phi, PA_S, PA_T)
            except TheoryViolation as err:
                record['verdict'] = 'violation'
                record['witness'] = err.to_json()
                return record
            record.update(examine_pa_isomorphism(restricted, report['in_scope'], limit))
            return record

        _collect(report, pa_isomorphisms(PSA_S, PSA_T, limit=limit), examine, max_results)
        report['psa_isomorphic'] = bool(report['records'])
        report['isomorphic'] = isomorphism_search(S, T, limit=limit) is not None
        report['dual_chains'] = target_inverse and dually_isomorphic_chains(S, T)
    except CapExceededError as err:
        return _inconclusive(report, err)
    messages.status('pa', f'PSA harness over {len(report["records"])} PSA-isomorphisms')
    return _finish(report, report['psa_isomorphic'], report['isomorphic'] or report['dual_chains'])


def is_semilattice(S):
    return len(S.idempotents) == S.order and bool((S.table == S.table.T).all())


def verify_result_3_1(S, T, limit=None, max_results=None, cap=None):
    """
    Semilattice harness: for a semilattice S and an inverse semigroup T,
    PA(S) ≅ PA(T) iff S ≅ T or S is a chain and T ≅ S^d; every
    PA-isomorphism is induced by its E-bijection, which is an isomorphism or,
    for chains, a dual isomorphism. For finite chains S^d ≅ S, so the iff
    collapses to PA(S) ≅ PA(T) iff S ≅ T.
    """
    max_results = options.get('max_isomorphisms', max_results)
    hypotheses = {'semilattice': is_semilattice(S), 'target_inverse': T.is_inverse()}
    report = _base_report('pa-semilattice', hypotheses)
    if not report['in_scope']:
        report['verdict'] = 'out-of-scope'
        return report
    S, T = as_inverse_semigroup(S), as_inverse_semigroup(T)

    def examine(Phi):
        record = {}
        try:
            phi_e = e_bijection(induced_lattice_isomorphism(Phi))
        except InvariantFailure as err:
            return {'verdict': 'violation', 'witness': err.to_json()}
        record['phi_E_kind'] = phi_e.kind
        total = len(phi_e.mapping) == S.order
        phi = tuple(phi_e.mapping[x] for x in range(S.order)) if total else None
        record['induced_by_E_bijection'] = total and is_pa_induced_by(Phi, phi)
        allowed = phi_e.kind == 'isomorphism' or (phi_e.kind == 'dual-isomorphism' and is_chain(S))
        record['verdict'] = 'confirmed' if allowed and record['induced_by_E_bijection'] else 'violation'
        return record

    try:
        PA_S, PA_T = build_pa(S, 'pa', cap=cap), build_pa(T, 'pa', cap=cap)
        report['monoids'] = [PA_S.summary(), PA_T.summary()]
        _collect(report, pa_isomorphisms(PA_S, PA_T, limit=limit), examine, max_results)
        report['pa_isomorphic'] = bool(report['records'])
        report['isomorphic'] = isomorphism_search(S, T, limit=limit) is not None
        report['dual_chains'] = dually_isomorphic_chains(S, T)
    except CapExceededError as err:
        return _inconclusive(report, err)
    return _finish(report, report['pa_isomorphic'], report['isomorphic'] or report['dual_chains'])
