"""
Finite semigroups given by Cayley tables, and finite inverse semigroups with
their Green's structure, natural partial order and structural predicates.

Elements are the indices 0, ..., n-1 and ``table[x, y]`` is the product x·y.
Index order is the canonical identity: every deterministic output (class
orderings, the first isomorphism found) is defined relative to it.
"""
from collections import deque
from dataclasses import dataclass, field
from typing import FrozenSet, Optional, Tuple

import numpy as np

from . import messages
from . import options
from .error import AxiomError, CapExceededError, InputError, InvariantFailure, PreconditionError
from .pbij import PartialBijection, compose, invert

GREEN_TAGS = ('H', 'L', 'R', 'D', 'J')

# Finite semigroups contain no bicyclic subsemigroup, so they are always
# completely semisimple. Nothing is searched.
COMPLETELY_SEMISIMPLE_NOTE = ('finite inverse semigroups contain no bicyclic subsemigroup '
                              'and are therefore completely semisimple')


def _as_table(order, table):
    try:
        array = np.array(table, dtype=np.int64).reshape(order, order) if order else \
            np.zeros((0, 0), dtype=np.int64)
    except ValueError:
        raise InputError(f'table is not a {order}x{order} array of indices')
    if order and (array.min() < 0 or array.max() >= order):
        bad = np.argwhere((array < 0) | (array >= order))[0]
        raise InputError('table entry out of range', witness=tuple(int(v) for v in bad))
    array.setflags(write=False)
    return array


def _check_associative(table):
    n = table.shape[0]
    if n == 0:
        return
    # one row of the (xy)z = x(yz) cube at a time
    for x in range(n):
        left = table[table[x, :], :]
        right = table[x, table]
        bad = np.argwhere(left != right)
        if len(bad):
            y, z = (int(v) for v in bad[0])
            raise AxiomError('multiplication table is not associative', witness=(x, y, z))


class FiniteSemigroup:
    """
    A finite semigroup given by an associative Cayley table.

    Use :func:`load_table` to build one from unvalidated data.

    Parameters
    ----------
    table : numpy.ndarray
        n x n array of element indices, ``table[x, y] = x·y``
    labels : sequence or None
        Optional display label per element
    """

    def __init__(self, table, labels=None):
        self.table = table
        self.order = table.shape[0]
        self.labels = tuple(labels) if labels is not None else None
        diagonal = table[np.arange(self.order), np.arange(self.order)] if self.order else []
        self.idempotents = tuple(int(i) for i in range(self.order) if diagonal[i] == i)
        self._invariants = None
        self._generating_set = None

    def __repr__(self):
        return f'{type(self).__name__}(order={self.order})'

    def product(self, x, y):
        return int(self.table[x, y])

    def label(self, x):
        return str(x) if self.labels is None else str(self.labels[x])

    def elements(self):
        return range(self.order)

    def closure(self, generators):
        """
        The subsemigroup generated by ``generators`` (a frozenset of indices).
        """
        generators = sorted(set(generators))
        found = set(generators)
        queue = deque(generators)
        table = self.table
        while queue:
            x = queue.popleft()
            for g in generators:
                p = int(table[x, g])
                if p not in found:
                    found.add(p)
                    queue.append(p)
        return frozenset(found)

    def is_closed(self, subset):
        subset = sorted(subset)
        if not subset:
            return True
        block = self.table[np.ix_(subset, subset)]
        return bool(np.isin(block, subset).all())

    def restrict(self, subset):
        """
        The subsemigroup on ``subset`` as a standalone table.

        Returns
        -------
        sub : FiniteSemigroup
            Table over local indices 0..k-1
        embedding : tuple
            ``embedding[i]`` is the index in this semigroup of local element i
        """
        embedding = tuple(sorted(subset))
        if not self.is_closed(embedding):
            raise InputError('subset is not closed under the product', witness=embedding)
        local = {x: i for i, x in enumerate(embedding)}
        k = len(embedding)
        sub = np.zeros((k, k), dtype=np.int64)
        for i, x in enumerate(embedding):
            for j, y in enumerate(embedding):
                sub[i, j] = local[int(self.table[x, y])]
        sub.setflags(write=False)
        labels = None if self.labels is None else [self.labels[x] for x in embedding]
        return FiniteSemigroup(sub, labels), embedding

    def right_ideals(self):
        """Boolean matrix, row x is the principal right ideal xS¹."""
        n = self.order
        ideals = np.zeros((n, n), dtype=bool)
        for x in range(n):
            ideals[x, self.table[x, :]] = True
            ideals[x, x] = True
        return ideals

    def left_ideals(self):
        """Boolean matrix, row x is the principal left ideal S¹x."""
        n = self.order
        ideals = np.zeros((n, n), dtype=bool)
        for x in range(n):
            ideals[x, self.table[:, x]] = True
            ideals[x, x] = True
        return ideals

    def two_sided_ideals(self):
        """Boolean matrix, row x is the principal ideal J(x) = S¹xS¹."""
        if self.order == 0:
            return np.zeros((0, 0), dtype=bool)
        left = self.left_ideals().astype(np.float32)
        right = self.right_ideals().astype(np.float32)
        return (left @ right) > 0

    def powers(self, x):
        """Index and period of the monogenic subsemigroup {x, x², ...}."""
        seen = {}
        power, k = x, 1
        while power not in seen:
            seen[power] = k
            power = int(self.table[power, x])
            k += 1
        index = seen[power]
        return index, k - index

    def element_invariants(self):
        """
        Per-element data preserved by every isomorphism; used to prune
        isomorphism searches.
        """
        if self._invariants is None:
            n = self.order
            table = self.table
            right = self.right_ideals().sum(axis=1) if n else []
            left = self.left_ideals().sum(axis=1) if n else []
            two_sided = self.two_sided_ideals().sum(axis=1) if n else []
            squares = np.bincount(table[np.arange(n), np.arange(n)], minlength=n) if n else []
            invariants = []
            for x in range(n):
                invariants.append((
                    x in self.idempotents,
                    self.powers(x),
                    int(right[x]), int(left[x]), int(two_sided[x]),
                    int((table[x, :] == np.arange(n)).sum()),
                    int((table[:, x] == np.arange(n)).sum()),
                    int((table[x, :] == table[:, x]).sum()),
                    int(squares[x]),
                ))
            self._invariants = tuple(invariants)
        return self._invariants

    def generating_set(self):
        """
        A generating set chosen greedily, elements with the largest principal
        ideals first (ties by index).
        """
        if self._generating_set is None:
            if self.order == 0:
                self._generating_set = ()
                return self._generating_set
            sizes = self.two_sided_ideals().sum(axis=1)
            ordering = sorted(range(self.order), key=lambda x: (-int(sizes[x]), x))
            generators, generated = [], frozenset()
            for x in ordering:
                if x not in generated:
                    generators.append(x)
                    generated = self.closure(generators)
                if len(generated) == self.order:
                    break
            self._generating_set = tuple(generators)
        return self._generating_set

    def is_inverse(self):
        try:
            as_inverse_semigroup(self)
        except AxiomError:
            return False
        return True


def load_table(order, table, labels=None):
    """
    Validate a Cayley table as a (not necessarily inverse) semigroup.

    Raises
    ------
    InputError
        Entries out of range or wrong shape
    AxiomError
        The product is not associative (witness triple x, y, z)
    """
    array = _as_table(order, table)
    _check_associative(array)
    return FiniteSemigroup(array, labels)


@dataclass(frozen=True)
class GreenPartition:
    """
    One of Green's relations as a partition of the element indices.

    ``block_of[x]`` is the block containing x; blocks are numbered by their
    least element. ``order[i, j]`` (when present) means block i ≤ block j
    under inclusion of principal ideals.
    """
    tag: str
    block_of: Tuple[int, ...]
    classes: Tuple[Tuple[int, ...], ...]
    order: Optional[np.ndarray] = field(default=None, compare=False, repr=False)

    def class_of(self, x):
        return self.classes[self.block_of[x]]

    def related(self, x, y):
        return self.block_of[x] == self.block_of[y]

    def sizes(self):
        return sorted(len(c) for c in self.classes)

    def restricted_to(self, subset):
        """Blocks of this partition intersected with ``subset``."""
        subset = set(subset)
        parts = [tuple(x for x in c if x in subset) for c in self.classes]
        return sorted(p for p in parts if p)


def partition_from_relation(tag, relation, ideals=None):
    """
    Build a :class:`GreenPartition` from an equivalence relation given as a
    boolean matrix. ``ideals`` (rows are principal ideals) orders the blocks.
    """
    n = relation.shape[0]
    block_of = [-1] * n
    classes = []
    for x in range(n):
        if block_of[x] != -1:
            continue
        members = tuple(int(y) for y in np.flatnonzero(relation[x]))
        for y in members:
            block_of[y] = len(classes)
        classes.append(members)
    order = None
    if ideals is not None:
        k = len(classes)
        order = np.zeros((k, k), dtype=bool)
        for i, ci in enumerate(classes):
            for j, cj in enumerate(classes):
                a, b = ideals[ci[0]], ideals[cj[0]]
                order[i, j] = not (a & ~b).any()
    return GreenPartition(tag, tuple(block_of), tuple(classes), order)


def _equal_rows(matrix):
    n = matrix.shape[0]
    if n == 0:
        return np.zeros((0, 0), dtype=bool)
    return (matrix[:, None, :] == matrix[None, :, :]).all(axis=2)


def _compose_relations(a, b):
    if a.shape[0] == 0:
        return a.copy()
    return (a.astype(np.float32) @ b.astype(np.float32)) > 0


class FiniteInverseSemigroup(FiniteSemigroup):
    """
    A validated finite inverse semigroup.

    Built by :func:`load_semigroup` (or :func:`generate_closure`,
    :func:`wagner_preston`, the Munn and PA constructions). All caches are
    computed eagerly; the object is not modified afterwards.

    Attributes
    ----------
    inv : numpy.ndarray
        ``inv[x]`` is the unique inverse of x
    concrete_rep : tuple of PartialBijection or None
        A faithful representation in I_n, when one is known
    idempotent_set : frozenset
        E_S
    green : dict
        Tag to :class:`GreenPartition`, computed from principal ideals
    leq : numpy.ndarray
        ``leq[x, y]`` iff x ≤ y in the natural partial order
    nongroup : frozenset
        N_S
    """

    def __init__(self, table, inv, concrete_rep=None, labels=None):
        super().__init__(table, labels)
        self.inv = inv
        self.concrete_rep = tuple(concrete_rep) if concrete_rep is not None else None
        self.idempotent_set = frozenset(self.idempotents)
        self.green = compute_green_from_ideals(self)
        self.leq = _natural_order_matrix(self)
        self.nongroup = frozenset(x for x in range(self.order)
                                  if not any(y in self.idempotent_set
                                             for y in self.green['H'].class_of(x)))
        self._generated = {}

    def inverse(self, x):
        return int(self.inv[x])

    def range_idempotent(self, x):
        """xx⁻¹"""
        return int(self.table[x, self.inv[x]])

    def domain_idempotent(self, x):
        """x⁻¹x"""
        return int(self.table[self.inv[x], x])

    def generate(self, elements):
        """
        ⟨X⟩, the inverse subsemigroup generated by ``elements``.
        """
        key = frozenset(elements)
        if key not in self._generated:
            generators = set(key) | {int(self.inv[x]) for x in key}
            self._generated[key] = self.closure(generators)
        return self._generated[key]

    def is_inverse_closed(self, subset):
        return all(int(self.inv[x]) in subset for x in subset) and self.is_closed(subset)

    def restrict(self, subset):
        embedding = tuple(sorted(subset))
        if not self.is_inverse_closed(set(embedding)):
            raise InputError('subset is not an inverse subsemigroup', witness=embedding)
        plain, embedding = FiniteSemigroup.restrict(self, embedding)
        local = {x: i for i, x in enumerate(embedding)}
        inv = np.array([local[int(self.inv[x])] for x in embedding], dtype=np.int64)
        inv.setflags(write=False)
        rep = None if self.concrete_rep is None else [self.concrete_rep[x] for x in embedding]
        return FiniteInverseSemigroup(plain.table, inv, rep, plain.labels), embedding

    def below(self, x):
        return [y for y in range(self.order) if self.leq[y, x]]

    def strictly_below(self, e, f):
        return bool(self.leq[e, f]) and e != f

    def idempotent_semilattice(self):
        """E_S as a :class:`~invsg.munn.Semilattice` (with parent indices)."""
        from .munn import Semilattice
        elements = self.idempotents
        local = {e: i for i, e in enumerate(elements)}
        meet = [[local[int(self.table[e, f])] for f in elements] for e in elements]
        return Semilattice(np.array(meet, dtype=np.int64).reshape(len(elements), len(elements)),
                           parent_indices=elements,
                           labels=None if self.labels is None else [self.labels[e] for e in elements])


def _natural_order_matrix(S):
    n = S.order
    leq = np.zeros((n, n), dtype=bool)
    columns = np.arange(n)
    for e in S.idempotents:
        leq[S.table[e, :], columns] = True
    leq.setflags(write=False)
    return leq


def compute_green_from_ideals(S):
    """
    Green's relations of S from principal one- and two-sided ideals
    (the reference oracle).
    """
    right = S.right_ideals()
    left = S.left_ideals()
    two_sided = S.two_sided_ideals()
    r_rel = _equal_rows(right)
    l_rel = _equal_rows(left)
    j_rel = _equal_rows(two_sided)
    d_rel = _compose_relations(l_rel, r_rel)
    if not np.array_equal(d_rel, j_rel):
        bad = np.argwhere(d_rel != j_rel)[0]
        raise InvariantFailure('D differs from J on a finite semigroup',
                               witness=tuple(int(v) for v in bad))
    return {
        'H': partition_from_relation('H', r_rel & l_rel),
        'L': partition_from_relation('L', l_rel, left),
        'R': partition_from_relation('R', r_rel, right),
        'D': partition_from_relation('D', d_rel, two_sided),
        'J': partition_from_relation('J', j_rel, two_sided),
    }


def green_classes(S, tag):
    """
    The Green's relation ``tag`` (one of H, L, R, D, J) of S.

    J-classes (and D-classes) carry the order J_x ≤ J_y iff J(x) ⊆ J(y);
    L- and R-classes carry the analogous inclusion orders.
    """
    if tag not in GREEN_TAGS:
        raise InputError(f'unknown Green relation {tag!r}')
    return S.green[tag]


def green_classes_from_rep(S, tag):
    """
    Green's relations computed through the concrete representation: in I_n,
    R is equality of domains and L is equality of images, and these restrict
    to every inverse subsemigroup; H = L∩R and D = L∘R within S.
    """
    if S.concrete_rep is None:
        raise PreconditionError('semigroup has no concrete representation')
    rep = S.concrete_rep
    domains = [a.domain() for a in rep]
    images = [a.image() for a in rep]
    n = S.order
    r_rel = np.array([[domains[x] == domains[y] for y in range(n)] for x in range(n)],
                     dtype=bool).reshape(n, n)
    l_rel = np.array([[images[x] == images[y] for y in range(n)] for x in range(n)],
                     dtype=bool).reshape(n, n)
    relations = {'H': r_rel & l_rel, 'L': l_rel, 'R': r_rel}
    relations['D'] = relations['J'] = _compose_relations(l_rel, r_rel)
    return partition_from_relation(tag, relations[tag])


def natural_order(S):
    """``leq[x, y]`` iff x = e·y for some idempotent e."""
    return S.leq


def nongroup_elements(S):
    return S.nongroup


@dataclass(frozen=True)
class StructuralReport:
    is_combinatorial: bool
    is_fundamental: bool
    isolated_idempotents: FrozenSet[int]
    has_nontrivial_isolated_subgroup: bool
    is_completely_semisimple: bool = True

    def to_json(self):
        return {'combinatorial': self.is_combinatorial,
                'fundamental': self.is_fundamental,
                'isolated_idempotents': sorted(self.isolated_idempotents),
                'nontrivial_isolated_subgroup': self.has_nontrivial_isolated_subgroup,
                'completely_semisimple': self.is_completely_semisimple}


def is_combinatorial(S):
    return all(len(c) == 1 for c in S.green['H'].classes)


def is_fundamental(S):
    """
    x⁻¹ex = y⁻¹ey for all idempotents e forces x = y.
    """
    table = S.table
    seen = set()
    for x in range(S.order):
        signature = tuple(int(table[table[S.inv[x], e], x]) for e in S.idempotents)
        if signature in seen:
            return False
        seen.add(signature)
    return True


def isolated_idempotents(S):
    return frozenset(e for e in S.idempotents
                     if set(S.green['D'].class_of(e)) == set(S.green['H'].class_of(e)))


def has_nontrivial_isolated_subgroup(S):
    return any(len(S.green['H'].class_of(e)) > 1 for e in isolated_idempotents(S))


def is_completely_semisimple(S):
    return True


def structural_predicates(S):
    isolated = isolated_idempotents(S)
    return StructuralReport(
        is_combinatorial=is_combinatorial(S),
        is_fundamental=is_fundamental(S),
        isolated_idempotents=isolated,
        has_nontrivial_isolated_subgroup=any(len(S.green['H'].class_of(e)) > 1 for e in isolated),
        is_completely_semisimple=is_completely_semisimple(S))


@dataclass(frozen=True)
class MonogenicReport:
    generator: int
    elements: FrozenSet[int]
    case: str
    kernel: FrozenSet[int]
    kernel_kind: str
    top_d_class: FrozenSet[int]

    def to_json(self):
        return {'generator': self.generator,
                'size': len(self.elements),
                'case': self.case,
                'kernel': sorted(self.kernel),
                'kernel_kind': self.kernel_kind,
                'top_d_class': sorted(self.top_d_class)}


def kernel_of(S):
    """The minimal ideal of a nonempty finite semigroup (as local indices)."""
    ideals = S.two_sided_ideals()
    return frozenset(int(x) for x in np.flatnonzero(ideals.all(axis=0)))


def monogenic(S, x):
    """
    Classify the monogenic inverse subsemigroup ⟨x⟩.

    The case is ``group`` when xx⁻¹ = x⁻¹x (⟨x⟩ is a cyclic group) and
    ``incomparable`` when xx⁻¹ and x⁻¹x are incomparable; the chain-ordered
    (bicyclic) case cannot occur in a finite semigroup.
    """
    elements = S.generate([x])
    r, d = S.range_idempotent(x), S.domain_idempotent(x)
    U, embedding = S.restrict(elements)
    local = {y: i for i, y in enumerate(embedding)}
    d_class = frozenset(embedding[i] for i in U.green['D'].class_of(local[x]))
    if r == d:
        case = 'group'
        kernel = elements
    elif not S.leq[r, d] and not S.leq[d, r]:
        case = 'incomparable'
        expected = {x, S.inverse(x), r, d}
        if d_class != expected:
            raise InvariantFailure('top D-class of a monogenic semigroup is not {x, x⁻¹, xx⁻¹, x⁻¹x}',
                                   witness=(x, sorted(d_class)))
        kernel = frozenset(embedding[i] for i in kernel_of(U))
    else:
        raise InvariantFailure('comparable xx⁻¹ and x⁻¹x would make ⟨x⟩ bicyclic, '
                               'which is impossible in a finite semigroup', witness=(x, r, d))
    kernel_local = [local[k] for k in kernel]
    kernel_idempotents = [k for k in kernel_local if k in U.idempotent_set]
    is_group = (len(kernel_idempotents) == 1
                and set(U.green['H'].class_of(kernel_idempotents[0])) == set(kernel_local))
    return MonogenicReport(x, elements, case, frozenset(kernel),
                           'cyclic-group' if is_group else 'none', d_class)


def _inverse_candidates(table, x):
    n = table.shape[0]
    ar = np.arange(n)
    xy = table[x, :]
    yx = table[:, x]
    mask = (table[xy, x] == x) & (table[yx, ar] == ar)
    return [int(y) for y in np.flatnonzero(mask)]


def _check_commuting_idempotents(table, idempotents):
    for i, e in enumerate(idempotents):
        for f in idempotents[i + 1:]:
            if table[e, f] != table[f, e]:
                raise AxiomError('idempotents do not commute',
                                 witness=(e, f, int(table[e, f]), int(table[f, e])))


def _validate_inverse(table, inv=None):
    n = table.shape[0]
    idempotents = [i for i in range(n) if table[i, i] == i]
    if inv is None:
        candidates = []
        for x in range(n):
            found = _inverse_candidates(table, x)
            if not found:
                raise AxiomError('semigroup is not regular: element has no inverse', witness=(x,))
            candidates.append(found)
        _check_commuting_idempotents(table, idempotents)
        for x, found in enumerate(candidates):
            if len(found) > 1:
                raise AxiomError('inverse is not unique', witness=(x, found[0], found[1]))
        inv = np.array([found[0] for found in candidates], dtype=np.int64)
    else:
        inv = np.array(inv, dtype=np.int64).reshape(n)
        if n and (inv.min() < 0 or inv.max() >= n):
            raise InputError('inverse map entry out of range')
        for x in range(n):
            y = int(inv[x])
            if table[table[x, y], x] != x or table[table[y, x], y] != y:
                raise AxiomError('given inverse map is not an inverse: x·y·x ≠ x or y·x·y ≠ y',
                                 witness=(x, y, int(table[table[x, y], x])))
            if inv[y] != x:
                raise AxiomError('given inverse map is not an involution', witness=(x, y, int(inv[y])))
        _check_commuting_idempotents(table, idempotents)
    inv.setflags(write=False)
    return inv


def _check_representation(table, rep):
    n = table.shape[0]
    if len(rep) != n:
        raise InputError('concrete representation has the wrong number of elements')
    if len(set(rep)) != n:
        raise InvariantFailure('concrete representation is not faithful')
    for x in range(n):
        for y in range(n):
            if compose(rep[x], rep[y]) != rep[table[x, y]]:
                raise InvariantFailure('concrete representation is not multiplicative',
                                       witness=(x, y, int(table[x, y])))


def load_semigroup(order, table, inv=None, concrete_rep=None, labels=None):
    """
    Validate a Cayley table as a finite inverse semigroup.

    Parameters
    ----------
    order : int
        Number of elements (0 is accepted: the empty semigroup)
    table : array_like
        order x order products
    inv : array_like or None
        The inverse map; computed from the table when omitted
    concrete_rep : sequence of PartialBijection or None
        A representation to verify as a faithful homomorphism into I_n
    labels : sequence or None
        Display labels

    Raises
    ------
    AxiomError
        Non-associative, non-regular, non-commuting idempotents or ambiguous
        inverse, each with a witness
    """
    array, inverse = validate_inverse_table(order, table, inv)
    if concrete_rep is not None:
        _check_representation(array, concrete_rep)
    return FiniteInverseSemigroup(array, inverse, concrete_rep, labels)


def validate_inverse_table(order, table, inv=None):
    """
    The axiom checks of :func:`load_semigroup` without building caches.

    Returns
    -------
    table, inv : numpy.ndarray
        Read-only arrays ready for :class:`FiniteInverseSemigroup`
    """
    array = _as_table(order, table)
    _check_associative(array)
    return array, _validate_inverse(array, inv)


def as_inverse_semigroup(S):
    """Re-validate a :class:`FiniteSemigroup` as an inverse semigroup."""
    if isinstance(S, FiniteInverseSemigroup):
        return S
    inverse = _validate_inverse(S.table)
    return FiniteInverseSemigroup(S.table, inverse, None, S.labels)


def _from_representation(elements, labels=None):
    index = {a: i for i, a in enumerate(elements)}
    n = len(elements)
    table = np.zeros((n, n), dtype=np.int64)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            product = compose(a, b)
            if product not in index:
                raise InvariantFailure('set of partial bijections is not closed under composition',
                                       witness=(str(a), str(b)))
            table[i, j] = index[product]
    inv = [index[invert(a)] for a in elements]
    return load_semigroup(n, table, inv, concrete_rep=elements, labels=labels)


def generate_closure(universe_size, generators, cap=None):
    """
    The inverse subsemigroup of I_n generated by ``generators``.

    Elements are ordered by (rank, mapping); the result carries the
    generating partial bijections as ``concrete_rep``.

    Raises
    ------
    CapExceededError
        Universe larger than ``max_universe_size`` or closure larger than ``cap``
    """
    cap = options.get('max_closure_size', cap)
    if universe_size > options.get('max_universe_size'):
        raise CapExceededError(f'universe size {universe_size} exceeds max_universe_size')
    generators = set(generators)
    for g in generators:
        if g.universe_size != universe_size:
            raise InputError('generator acts on a different universe', witness=str(g))
    generators |= {invert(g) for g in generators}
    generators = sorted(generators, key=lambda a: (a.rank(), a.mapping))
    found = set(generators)
    queue = deque(generators)
    while queue:
        a = queue.popleft()
        for g in generators:
            product = compose(a, g)
            if product not in found:
                found.add(product)
                if len(found) > cap:
                    raise CapExceededError(f'closure exceeds {cap} elements')
                queue.append(product)
    elements = sorted(found, key=lambda a: (a.rank(), a.mapping))
    messages.status('closure', f'generated {len(elements)} partial bijections on {universe_size} points')
    return _from_representation(elements, labels=[str(a) for a in elements])


def wagner_preston(S, max_universe_size=None):
    """
    The Wagner-Preston representation of S in I_S.

    x is sent to ρ_x : S·xx⁻¹ → S·x⁻¹x, s ↦ s·x. Faithfulness and
    multiplicativity are verified exhaustively.
    """
    limit = options.get('max_universe_size', max_universe_size)
    if S.order > limit:
        raise CapExceededError(f'order {S.order} exceeds max_universe_size {limit}')
    n = S.order
    rep = []
    for x in range(n):
        r = S.range_idempotent(x)
        mapping = {s: int(S.table[s, x]) for s in range(n) if S.table[s, r] == s}
        rep.append(PartialBijection.from_dict(n, mapping))
    _check_representation(S.table, rep)
    return FiniteInverseSemigroup(S.table, S.inv, rep, S.labels)


def is_isomorphism(S, T, f):
    """f (a sequence, f[x] the image of x) is a bijective homomorphism S → T."""
    f = np.asarray(f, dtype=np.int64)
    if S.order != T.order or len(f) != S.order or len(set(f.tolist())) != S.order:
        return False
    if S.order == 0:
        return True
    return bool((T.table[f[:, None], f[None, :]] == f[S.table]).all())


def is_antiisomorphism(S, T, f):
    """(xy)f = (yf)(xf) for all x, y, with f bijective."""
    f = np.asarray(f, dtype=np.int64)
    if S.order != T.order or len(f) != S.order or len(set(f.tolist())) != S.order:
        return False
    if S.order == 0:
        return True
    return bool((T.table[f[None, :], f[:, None]] == f[S.table]).all())


def iter_isomorphisms(S, T, limit=None, pin=None):
    """
    Enumerate all isomorphisms S → T, in canonical order.

    The images of a greedy generating set of S are chosen by backtracking;
    every choice is propagated along right multiplication by the chosen
    generators, which fixes the map on the generated subsemigroup and checks
    injectivity on the way. Candidates must agree on
    :meth:`FiniteSemigroup.element_invariants`.

    Parameters
    ----------
    S, T : FiniteSemigroup
    limit : int or None
        Branch-step budget (``max_search_steps`` by default)
    pin : dict or None
        Elements of S whose images are forced

    Yields
    ------
    phi : tuple
        ``phi[x]`` is the image of x

    Raises
    ------
    CapExceededError
        The step budget is exhausted
    """
    limit = options.get('max_search_steps', limit)
    n = S.order
    if n != T.order:
        return
    if n == 0:
        yield ()
        return
    sig_s, sig_t = S.element_invariants(), T.element_invariants()
    if sorted(sig_s) != sorted(sig_t):
        return
    pin = pin or {}
    generators = S.generating_set()
    candidates = []
    for g in generators:
        if g in pin:
            options_for_g = [pin[g]] if sig_t[pin[g]] == sig_s[g] else []
        else:
            options_for_g = [t for t in range(n) if sig_t[t] == sig_s[g]]
        candidates.append(options_for_g)

    phi = [-1] * n
    psi = [-1] * n
    domain = []
    steps = [0]
    table_s, table_t = S.table, T.table

    def assign(x, y, trail):
        if psi[y] != -1 or sig_s[x] != sig_t[y]:
            return False
        if x in pin and pin[x] != y:
            return False
        phi[x], psi[y] = y, x
        domain.append(x)
        trail.append(x)
        return True

    def propagate(pending, active, trail):
        while pending:
            x, g = pending.pop()
            p = int(table_s[x, g])
            q = int(table_t[phi[x], phi[g]])
            if phi[p] == -1:
                if not assign(p, q, trail):
                    return False
                pending.extend((p, h) for h in active)
            elif phi[p] != q:
                return False
        return True

    def undo(trail):
        for x in reversed(trail):
            psi[phi[x]] = -1
            phi[x] = -1
            domain.pop()

    def extend(level):
        if level == len(generators):
            if len(domain) == n:
                yield tuple(phi)
            return
        g = generators[level]
        active = generators[:level + 1]
        for h in candidates[level]:
            steps[0] += 1
            if steps[0] > limit:
                raise CapExceededError(f'isomorphism search exceeded {limit} steps')
            trail = []
            if phi[g] == -1:
                ok = assign(g, h, trail)
            else:
                ok = phi[g] == h
            if ok:
                pending = [(x, g) for x in domain] + [(g, k) for k in active[:-1]]
                ok = propagate(pending, active, trail)
            if ok:
                yield from extend(level + 1)
            undo(trail)

    yield from extend(0)


def isomorphism_search(S, T, limit=None, pin=None):
    """
    The first isomorphism S → T in canonical order, or None.
    """
    for phi in iter_isomorphisms(S, T, limit=limit, pin=pin):
        return phi
    return None


def automorphisms(S, limit=None):
    return list(iter_isomorphisms(S, S, limit=limit))


def check_conjugation_criterion(S, T, phi):
    """
    Decide whether the bijection ``phi`` satisfies
    (s⁻¹es)φ = (sφ)⁻¹(eφ)(sφ) for all s in S and e in E_S.

    For fundamental S with φ|E an isomorphism onto E_T this is equivalent to φ
    being an isomorphism; the equivalence is asserted against a direct check.

    Raises
    ------
    PreconditionError
        S is not fundamental, φ is not a bijection, or φ|E is not an
        isomorphism of E_S onto E_T
    InvariantFailure
        The criterion and the direct homomorphism check disagree
    """
    phi = [int(y) for y in phi]
    if not is_fundamental(S):
        raise PreconditionError('S is not fundamental')
    if len(phi) != S.order or sorted(phi) != list(range(T.order)):
        raise PreconditionError('phi is not a bijection of S onto T')
    if sorted(phi[e] for e in S.idempotents) != list(T.idempotents):
        raise PreconditionError('phi does not map E_S onto E_T')
    for e in S.idempotents:
        for f in S.idempotents:
            if phi[S.product(e, f)] != T.product(phi[e], phi[f]):
                raise PreconditionError('phi restricted to E_S is not an isomorphism', witness=(e, f))
    criterion = True
    for s in range(S.order):
        s_inv = S.inverse(s)
        t = phi[s]
        t_inv = T.inverse(t)
        for e in S.idempotents:
            left = phi[S.product(S.product(s_inv, e), s)]
            right = T.product(T.product(t_inv, phi[e]), t)
            if left != right:
                criterion = False
                break
        if not criterion:
            break
    direct = is_isomorphism(S, T, phi)
    if criterion != direct:
        raise InvariantFailure('conjugation criterion disagrees with the direct homomorphism check',
                               witness={'criterion': criterion, 'direct': direct})
    return criterion
