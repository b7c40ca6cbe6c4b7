"""
Finite meet-semilattices and the Munn semigroup T_E of all isomorphisms
between principal ideals of E.
"""
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np

from . import messages
from . import options
from .error import AxiomError, CapExceededError, InputError, InvariantFailure, PreconditionError
from .fis_core import FiniteInverseSemigroup, isomorphism_search, validate_inverse_table
from .pbij import PartialBijection, compose


class Semilattice:
    """
    A finite meet-semilattice given by its meet table.

    Parameters
    ----------
    meet : numpy.ndarray
        n x n table, ``meet[e, f] = e∧f``; assumed valid (see :func:`load_semilattice`)
    parent_indices : sequence or None
        For E = E_S, the index in S of each element
    labels : sequence or None
        Display labels
    """

    def __init__(self, meet, parent_indices=None, labels=None):
        meet = np.asarray(meet, dtype=np.int64)
        meet.setflags(write=False)
        self.meet = meet
        self.order = meet.shape[0]
        self.parent_indices = tuple(parent_indices) if parent_indices is not None else None
        self.labels = tuple(labels) if labels is not None else None
        self.leq = meet == np.arange(self.order)[:, None] if self.order else \
            np.zeros((0, 0), dtype=bool)
        self.leq.setflags(write=False)

    def __repr__(self):
        return f'Semilattice(order={self.order})'

    def label(self, e):
        return str(e) if self.labels is None else str(self.labels[e])

    def below(self, e, f):
        return bool(self.leq[e, f])

    def covers(self):
        """Hasse covers (e, f), e < f with nothing strictly between, sorted."""
        result = []
        for e in range(self.order):
            for f in range(self.order):
                if e == f or not self.leq[e, f]:
                    continue
                between = self.leq[e, :] & self.leq[:, f]
                if between.sum() == 2:
                    result.append((e, f))
        return result

    def principal_ideal(self, e):
        return tuple(int(x) for x in np.flatnonzero(self.leq[:, e]))

    def is_chain(self):
        return bool((self.leq | self.leq.T).all())

    def bottom(self):
        for e in range(self.order):
            if self.leq[e, :].all():
                return e
        return None

    def as_semigroup(self):
        """E as an inverse semigroup (every element idempotent, inv = identity)."""
        inv = np.arange(self.order, dtype=np.int64)
        inv.setflags(write=False)
        return FiniteInverseSemigroup(self.meet, inv, labels=self.labels)


def _check_meet_table(meet):
    n = meet.shape[0]
    for e in range(n):
        if meet[e, e] != e:
            raise AxiomError('meet is not idempotent', witness=(e, int(meet[e, e])))
    bad = np.argwhere(meet != meet.T)
    if len(bad):
        e, f = (int(v) for v in bad[0])
        raise AxiomError('meet is not commutative', witness=(e, f))
    for e in range(n):
        left = meet[meet[e, :], :]
        right = meet[e, meet]
        bad = np.argwhere(left != right)
        if len(bad):
            f, g = (int(v) for v in bad[0])
            raise AxiomError('meet is not associative', witness=(e, f, g))


def _meets_from_covers(order, covers):
    leq = np.eye(order, dtype=bool)
    for e, f in covers:
        if not (0 <= e < order and 0 <= f < order):
            raise InputError('cover refers to an element out of range', witness=(e, f))
        if e == f:
            raise AxiomError('an element cannot cover itself', witness=(e, f))
        leq[e, f] = True
    for k in range(order):
        leq |= leq[:, k:k + 1] & leq[k:k + 1, :]
    cyclic = np.argwhere(leq & leq.T & ~np.eye(order, dtype=bool))
    if len(cyclic):
        e, f = (int(v) for v in cyclic[0])
        raise AxiomError('covers do not define a partial order', witness=(e, f))
    meet = np.zeros((order, order), dtype=np.int64)
    for e in range(order):
        for f in range(e, order):
            lower = np.flatnonzero(leq[:, e] & leq[:, f])
            greatest = [m for m in lower if leq[lower, m].all()]
            if not greatest:
                raise AxiomError('elements have no meet', witness=(e, f))
            meet[e, f] = meet[f, e] = int(greatest[0])
    return meet


def load_semilattice(order, meet=None, covers=None, labels=None):
    """
    Validate a semilattice given by a meet table or by Hasse covers.

    Covers ``(i, j)`` mean i < j; they are completed to a partial order and
    every pair must then have a greatest lower bound.

    Raises
    ------
    AxiomError
        The meet table is not idempotent, commutative and associative, or
        the covers do not define a meet-semilattice
    """
    if (meet is None) == (covers is None):
        raise InputError('give exactly one of meet and covers')
    if labels is not None and len(labels) != order:
        raise InputError(f'expected {order} labels, got {len(labels)}')
    if meet is not None:
        try:
            table = np.array(meet, dtype=np.int64).reshape(order, order)
        except ValueError:
            raise InputError(f'meet is not a {order}x{order} table')
        if order and (table.min() < 0 or table.max() >= order):
            raise InputError('meet entry out of range')
        _check_meet_table(table)
    else:
        table = _meets_from_covers(order, covers)
    return Semilattice(table, labels=labels)


def principal_ideal(E, e):
    """The ideal Ee = {x : x ≤ e} as a Semilattice, with indices into E."""
    members = E.principal_ideal(e)
    local = {x: i for i, x in enumerate(members)}
    meet = [[local[int(E.meet[x, y])] for y in members] for x in members]
    return Semilattice(np.array(meet, dtype=np.int64).reshape(len(members), len(members)),
                       parent_indices=members,
                       labels=[E.label(x) for x in members])


@dataclass(frozen=True)
class MunnElement:
    """An order isomorphism Ee → Ef, kept as a partial bijection on E."""
    source: int
    target: int
    map: PartialBijection

    def label(self, E):
        pairs = ', '.join(f'{E.label(i)}↦{E.label(j)}' for i, j in self.map.items())
        return f'{E.label(self.source)}→{E.label(self.target)} [{pairs}]'


def _order_isomorphisms(E, domain, codomain):
    """All bijections domain → codomain preserving ≤ both ways, in lexicographic order."""
    n = len(domain)
    if n != len(codomain):
        return []
    leq = E.leq
    height = {x: int(leq[:, x].sum()) for x in set(domain) | set(codomain)}
    results = []
    image = [None] * n
    used = set()

    def extend(i):
        if i == n:
            results.append(tuple(image))
            return
        a = domain[i]
        for b in codomain:
            if b in used or height[a] != height[b]:
                continue
            if any(leq[domain[k], a] != leq[image[k], b] or leq[a, domain[k]] != leq[b, image[k]]
                   for k in range(i)):
                continue
            image[i] = b
            used.add(b)
            extend(i + 1)
            used.discard(b)
        image[i] = None

    extend(0)
    return results


def ideal_isomorphisms(E, e, f):
    """
    All isomorphisms Ee → Ef as :class:`MunnElement`, in canonical order.
    """
    domain = E.principal_ideal(e)
    codomain = E.principal_ideal(f)
    elements = []
    for image in _order_isomorphisms(E, domain, codomain):
        mapping = PartialBijection.from_dict(E.order, dict(zip(domain, image)))
        elements.append(MunnElement(e, f, mapping))
    return sorted(elements, key=lambda m: m.map.mapping)


def ideal_automorphism_group_orders(E):
    """|Aut(Ee)| for every e; all finite, so the finiteness hypothesis always holds."""
    return {e: len(ideal_isomorphisms(E, e, e)) for e in range(E.order)}


class MunnSemigroup(FiniteInverseSemigroup):
    """
    T_E with its elements kept as :class:`MunnElement`.

    ``identity_of[e]`` is the index of 1_{Ee}; these are exactly the
    idempotents, which identifies E with E_{T_E}.
    """

    def __init__(self, table, inv, semilattice, munn_elements):
        super().__init__(table, inv, [m.map for m in munn_elements],
                         [m.label(semilattice) for m in munn_elements])
        self.semilattice = semilattice
        self.munn_elements = tuple(munn_elements)
        self.identity_of = {m.source: i for i, m in enumerate(self.munn_elements)
                            if m.source == m.target and m.map == PartialBijection.identity(
                                semilattice.order, semilattice.principal_ideal(m.source))}


def _top_of(E, points):
    for p in points:
        if all(E.leq[q, p] for q in points):
            return p
    raise InvariantFailure('domain of a Munn product is not a principal ideal', witness=sorted(points))


def munn_semigroup(E, cap=None):
    """
    Build T_E.

    Elements are sorted by (source e, target f, map); the product is
    composition of partial maps and closure is checked on every build.

    Raises
    ------
    CapExceededError
        More than ``max_munn_size`` elements
    """
    cap = options.get('max_munn_size', cap)
    elements = []
    for e in range(E.order):
        for f in range(E.order):
            elements.extend(ideal_isomorphisms(E, e, f))
            if len(elements) > cap:
                raise CapExceededError(f'Munn semigroup exceeds {cap} elements')
    index = {m.map: i for i, m in enumerate(elements)}
    n = len(elements)
    table = np.zeros((n, n), dtype=np.int64)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            product = compose(a.map, b.map)
            if product not in index:
                raise InvariantFailure('Munn product is not an ideal isomorphism',
                                       witness=(i, j, str(product)))
            k = index[product]
            if elements[k].source != _top_of(E, product.domain()):
                raise InvariantFailure('Munn product has the wrong source', witness=(i, j, k))
            table[i, j] = k
    inv = [index[m.map.inverse()] for m in elements]
    table, inv = validate_inverse_table(n, table, inv)
    messages.status('munn', f'T_E has {n} elements over a semilattice of order {E.order}')
    return MunnSemigroup(table, inv, E, elements)


@dataclass(frozen=True)
class MunnRepresentation:
    """
    The Munn representation x ↦ (e ↦ x⁻¹ex) of S into T_{E_S}.

    ``images[x]`` indexes T_{E_S}; injective exactly when S is fundamental.
    """
    munn: MunnSemigroup
    images: Tuple[int, ...]
    is_homomorphism: bool
    is_injective: bool
    is_full: bool

    def to_json(self):
        return {'munn_order': self.munn.order,
                'images': list(self.images),
                'homomorphism': self.is_homomorphism,
                'injective': self.is_injective,
                'full': self.is_full}


def munn_representation(S, cap=None):
    E = S.idempotent_semilattice()
    T = munn_semigroup(E, cap=cap)
    local = {e: i for i, e in enumerate(E.parent_indices)}
    index = {m.map: i for i, m in enumerate(T.munn_elements)}
    images = []
    for x in range(S.order):
        x_inv = S.inverse(x)
        r = S.range_idempotent(x)
        pairs = {local[e]: local[S.product(S.product(x_inv, e), x)]
                 for e in S.idempotents if S.leq[e, r]}
        mapping = PartialBijection.from_dict(E.order, pairs)
        if mapping not in index:
            raise InvariantFailure('Munn image is not an ideal isomorphism', witness=(x, str(mapping)))
        images.append(index[mapping])
    homomorphism = all(images[S.product(x, y)] == T.product(images[x], images[y])
                       for x in range(S.order) for y in range(S.order))
    if not homomorphism:
        raise InvariantFailure('Munn representation is not a homomorphism')
    full = set(T.idempotents) <= set(images)
    return MunnRepresentation(T, tuple(images), homomorphism,
                              len(set(images)) == S.order, full)


def _extensions(E):
    """Semilattices obtained from E by adding a new maximal element."""
    n = E.order
    leq = E.leq
    results = []
    for bits in range(1, 1 << n):
        down = [x for x in range(n) if bits >> x & 1]
        down_set = set(down)
        if any(y not in down_set for x in down for y in range(n) if leq[y, x]):
            continue
        meets = []
        for x in range(n):
            lower = [d for d in down if leq[d, x]]
            greatest = [m for m in lower if all(leq[d, m] for d in lower)]
            if not greatest:
                break
            meets.append(greatest[0])
        else:
            table = np.zeros((n + 1, n + 1), dtype=np.int64)
            table[:n, :n] = E.meet
            table[n, :n] = meets
            table[:n, n] = meets
            table[n, n] = n
            results.append(Semilattice(table))
    return results


def enumerate_semilattices(max_order):
    """
    All semilattices of order 1..max_order up to isomorphism.

    Every semilattice of order n+1 arises from one of order n by adding a
    maximal element whose strict down-set meets every principal ideal in a
    principal ideal.

    Returns
    -------
    found : dict
        order to list of :class:`Semilattice`
    """
    found: Dict[int, list] = {}
    if max_order < 1:
        return found
    found[1] = [Semilattice(np.zeros((1, 1), dtype=np.int64))]
    for n in range(1, max_order):
        members = []
        buckets = {}
        for E in found[n]:
            for candidate in _extensions(E):
                semigroup = candidate.as_semigroup()
                key = tuple(sorted(semigroup.element_invariants()))
                bucket = buckets.setdefault(key, [])
                if any(isomorphism_search(semigroup, other) is not None for other in bucket):
                    continue
                bucket.append(semigroup)
                members.append(candidate)
        found[n + 1] = members
        messages.status('munn', f'{len(members)} semilattices of order {n + 1}')
    return found


def find_semilattice_isomorphism(E, F) -> Optional[tuple]:
    return isomorphism_search(E.as_semigroup(), F.as_semigroup())


def dual_of_chain(E):
    """The order dual of a chain, as a semilattice on the same indices."""
    if not E.is_chain():
        raise PreconditionError('only a chain has a dual that is again a meet-semilattice')
    n = E.order
    dual = np.where(E.leq, np.arange(n)[None, :], np.arange(n)[:, None]) if n else \
        np.zeros((0, 0), dtype=np.int64)
    return Semilattice(dual, E.parent_indices, E.labels)
