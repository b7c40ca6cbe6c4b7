"""
Catalog of finite inverse semigroups up to isomorphism.

Members are found by a Cayley-table search: the idempotents are the first k
elements and multiply as a fixed semilattice, the inverse map is a fixed
involution on the remaining elements, and cells are filled with
associativity and (xy)⁻¹ = y⁻¹x⁻¹ propagated after every assignment.
Solutions are validated, realised in I_S by Wagner-Preston, and
deduplicated with :func:`~invsg.fis_core.isomorphism_search`.
"""
import json
from dataclasses import dataclass, field
from typing import List

import numpy as np

from . import messages
from . import options
from .error import AxiomError, CapExceededError, InputError, InvariantFailure
from .fis_core import (FiniteInverseSemigroup, isomorphism_search, load_semigroup,
                       validate_inverse_table, wagner_preston)
from .munn import enumerate_semilattices

PROVENANCE = ('Cayley-table search over semilattices of idempotents and involutions of '
              'the nonidempotents, realised in I_S by Wagner-Preston, deduplicated by '
              'isomorphism search')


def _involutions(k, n):
    """Inverse maps fixing 0..k-1; pairs first, then self-inverse elements."""
    for pairs in range((n - k) // 2 + 1):
        inv = list(range(n))
        for i in range(pairs):
            a, b = k + 2 * i, k + 2 * i + 1
            inv[a], inv[b] = b, a
        yield inv


class _TableSearch:
    """Backtracking fill of one n x n table with E and inv fixed."""

    def __init__(self, meet, inv):
        self.k = meet.shape[0]
        self.n = len(inv)
        self.inv = inv
        self.t = [[-1] * self.n for _ in range(self.n)]
        self.cells = [(x, y) for x in range(self.n) for y in range(self.n)]
        self.preset = []
        for e in range(self.k):
            for f in range(self.k):
                self.preset.append((e, f, int(meet[e, f])))

    def _candidates(self, x, y):
        k, n = self.k, self.n
        if y == self.inv[x]:
            return range(k)
        if x == y:
            return [v for v in range(n) if v != x]
        return range(n)

    def _set(self, x, y, v, trail, pending):
        current = self.t[x][y]
        if current != -1:
            return current == v
        if x == y and x >= self.k and v == x:
            return False
        if y == self.inv[x] and v >= self.k:
            return False
        self.t[x][y] = v
        trail.append((x, y))
        pending.append((x, y))
        return True

    def _triple(self, x, y, z, trail, pending):
        t = self.t
        xy, yz = t[x][y], t[y][z]
        if xy == -1 or yz == -1:
            return True
        left, right = t[xy][z], t[x][yz]
        if left == -1 and right == -1:
            return True
        if left == -1:
            return self._set(xy, z, right, trail, pending)
        if right == -1:
            return self._set(x, yz, left, trail, pending)
        return left == right

    def _propagate(self, trail, pending):
        t, n, inv = self.t, self.n, self.inv
        while pending:
            a, b = pending.pop()
            p = t[a][b]
            if not self._set(inv[b], inv[a], inv[p], trail, pending):
                return False
            if b == inv[a]:
                # x x⁻¹ x = x and x⁻¹ x x⁻¹ = x⁻¹
                if not self._set(p, a, a, trail, pending):
                    return False
            if a == inv[b]:
                if not self._set(b, p, b, trail, pending):
                    return False
            for c in range(n):
                if not self._triple(a, b, c, trail, pending) or \
                        not self._triple(c, a, b, trail, pending):
                    return False
            for x in range(n):
                for y in range(n):
                    if t[x][y] == a and not self._triple(x, y, b, trail, pending):
                        return False
                    if t[x][y] == b and not self._triple(a, x, y, trail, pending):
                        return False
        return True

    def _undo(self, trail):
        for x, y in trail:
            self.t[x][y] = -1

    def solutions(self):
        trail, pending = [], []
        for e, f, v in self.preset:
            if not self._set(e, f, v, trail, pending):
                return
        if not self._propagate(trail, pending):
            return
        yield from self._fill(0)

    def _fill(self, start):
        t = self.t
        while start < len(self.cells) and t[self.cells[start][0]][self.cells[start][1]] != -1:
            start += 1
        if start == len(self.cells):
            yield [row[:] for row in t]
            return
        x, y = self.cells[start]
        for v in self._candidates(x, y):
            trail, pending = [], []
            if self._set(x, y, v, trail, pending) and self._propagate(trail, pending):
                yield from self._fill(start + 1)
            self._undo(trail)


def inverse_semigroups_of_order(n, semilattices=None):
    """
    All inverse semigroups of order n, one per isomorphism class.

    Parameters
    ----------
    n : int
        Order, at least 1
    semilattices : dict or None
        Output of :func:`~invsg.munn.enumerate_semilattices` covering order n

    Returns
    -------
    members : list of FiniteInverseSemigroup
    """
    semilattices = semilattices or enumerate_semilattices(n)
    members = []
    buckets = {}
    for k in range(1, n + 1):
        for E in semilattices.get(k, []):
            for inv in _involutions(k, n):
                for rows in _TableSearch(E.meet, inv).solutions():
                    try:
                        table, inverse = validate_inverse_table(n, rows, inv)
                    except AxiomError as err:
                        raise InvariantFailure('catalog search produced an invalid table',
                                               witness=err.witness)
                    S = FiniteInverseSemigroup(table, inverse)
                    key = tuple(sorted(S.element_invariants()))
                    bucket = buckets.setdefault(key, [])
                    if any(isomorphism_search(S, other) is not None for other in bucket):
                        continue
                    bucket.append(S)
                    members.append(wagner_preston(S))
    messages.status('catalog', f'{len(members)} inverse semigroups of order {n}')
    return members


@dataclass
class Catalog:
    max_order: int
    members: List[FiniteInverseSemigroup] = field(default_factory=list)
    provenance: str = PROVENANCE

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def of_order(self, n):
        return [S for S in self.members if S.order == n]

    def find(self, S):
        """Index of the member isomorphic to S, or None."""
        for i, member in enumerate(self.members):
            if member.order == S.order and isomorphism_search(S, member) is not None:
                return i
        return None

    def to_json(self):
        return {'schema': 1,
                'max_order': self.max_order,
                'provenance': self.provenance,
                'members': [{'order': S.order,
                             'table': S.table.tolist(),
                             'inv': S.inv.tolist(),
                             'idempotent_count': len(S.idempotents)} for S in self.members]}

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True) + '\n'


def build_catalog(max_order, bound=None):
    """
    Inverse semigroups of order 1..max_order up to isomorphism.

    Raises
    ------
    CapExceededError
        ``max_order`` above ``max_catalog_order``
    """
    bound = options.get('max_catalog_order', bound)
    if max_order > bound:
        raise CapExceededError(f'catalog order {max_order} exceeds max_catalog_order {bound}')
    if max_order < 0:
        raise InputError('catalog order must be nonnegative')
    semilattices = enumerate_semilattices(max_order)
    catalog = Catalog(max_order)
    for n in range(1, max_order + 1):
        catalog.members.extend(inverse_semigroups_of_order(n, semilattices))
    return catalog


def load_catalog(text):
    """Read a catalog written by :meth:`Catalog.dumps`, validating every member."""
    try:
        data = json.loads(text)
        members = [load_semigroup(m['order'], m['table'], m['inv']) for m in data['members']]
        return Catalog(data['max_order'], members, data.get('provenance', PROVENANCE))
    except (ValueError, KeyError, TypeError) as err:
        raise InputError(f'malformed catalog: {err}')


def brandt5():
    """The five-element combinatorial Brandt semigroup B_2 as an inverse semigroup."""
    # 0 = zero, 1 = e11, 2 = e22, 3 = e12, 4 = e21
    units = {1: (1, 1), 2: (2, 2), 3: (1, 2), 4: (2, 1)}
    index = {v: k for k, v in units.items()}
    table = np.zeros((5, 5), dtype=np.int64)
    for a, (i, j) in units.items():
        for b, (p, q) in units.items():
            table[a, b] = index[(i, q)] if j == p else 0
    return load_semigroup(5, table, [0, 1, 2, 4, 3], labels=['0', 'e11', 'e22', 'e12', 'e21'])
