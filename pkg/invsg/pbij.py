"""
Partial bijections on the index set {0, ..., n-1}.

Composition is applied LEFT TO RIGHT: for partial bijections a and b,
``compose(a, b)`` (also written ``a * b``) first applies a, then b, so that
``i (a*b) = (i a) b``. This is the postfix convention x·α used for the
symmetric inverse monoid I_n throughout invsg; half the literature composes
the other way.
"""
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Tuple

from .error import InputError

UNDEFINED = -1


@dataclass(frozen=True)
class PartialBijection:
    """
    An injective partial map on {0, ..., universe_size-1}.

    ``mapping[i]`` is the image of i, or :data:`UNDEFINED`. Two partial
    bijections are equal iff their universe sizes and mappings agree, which
    makes them usable as dictionary keys in closure algorithms.
    """
    universe_size: int
    mapping: Tuple[int, ...]

    def __post_init__(self):
        mapping = tuple(int(j) for j in self.mapping)
        object.__setattr__(self, 'mapping', mapping)
        if len(mapping) != self.universe_size:
            raise InputError(f'mapping has length {len(mapping)}, expected {self.universe_size}')
        seen = set()
        for i, j in enumerate(mapping):
            if j == UNDEFINED:
                continue
            if not 0 <= j < self.universe_size:
                raise InputError(f'image {j} of point {i} is outside [0, {self.universe_size})',
                                 witness=(i, j))
            if j in seen:
                raise InputError('partial bijection is not injective', witness=(i, j))
            seen.add(j)

    @classmethod
    def from_dict(cls, universe_size, pairs):
        mapping = [UNDEFINED] * universe_size
        for i, j in pairs.items():
            mapping[i] = j
        return cls(universe_size, tuple(mapping))

    @classmethod
    def identity(cls, universe_size, points=None):
        points = range(universe_size) if points is None else points
        return cls.from_dict(universe_size, {i: i for i in points})

    @classmethod
    def empty(cls, universe_size):
        return cls(universe_size, (UNDEFINED,) * universe_size)

    def __call__(self, i):
        return self.mapping[i]

    def __mul__(self, other):
        return compose(self, other)

    def rank(self):
        return len(self.domain())

    def domain(self):
        return frozenset(i for i, j in enumerate(self.mapping) if j != UNDEFINED)

    def image(self):
        return frozenset(j for j in self.mapping if j != UNDEFINED)

    def items(self):
        return [(i, j) for i, j in enumerate(self.mapping) if j != UNDEFINED]

    def inverse(self):
        return invert(self)

    def restrict(self, points):
        points = set(points)
        return PartialBijection(self.universe_size,
                                tuple(j if i in points else UNDEFINED
                                      for i, j in enumerate(self.mapping)))

    def __str__(self):
        body = ', '.join(f'{i}↦{j}' for i, j in self.items())
        return f'[{body}]/n={self.universe_size}'


def _check_sizes(a, b):
    if a.universe_size != b.universe_size:
        raise InputError('partial bijections act on different universes',
                         witness=(a.universe_size, b.universe_size))


def compose(a, b):
    """
    The product a·b in I_n: i is sent to (i a) b whenever both steps are defined.
    """
    _check_sizes(a, b)
    mb = b.mapping
    return PartialBijection(a.universe_size,
                            tuple(UNDEFINED if j == UNDEFINED else mb[j] for j in a.mapping))


def invert(a):
    mapping = [UNDEFINED] * a.universe_size
    for i, j in a.items():
        mapping[j] = i
    return PartialBijection(a.universe_size, tuple(mapping))


def is_idempotent(a):
    """True iff a is the identity on its domain (a partial identity)."""
    return all(j == UNDEFINED or i == j for i, j in enumerate(a.mapping))


def natural_leq(a, b):
    """
    a ≤ b in the natural partial order of I_n, i.e. a is a restriction of b.
    """
    _check_sizes(a, b)
    return all(j == UNDEFINED or b.mapping[i] == j for i, j in enumerate(a.mapping))


def all_partial_bijections(universe_size):
    """
    Every element of I_n, ordered by rank, then by domain, then by mapping.
    |I_n| = sum over k of C(n,k)^2 k!.
    """
    points = range(universe_size)
    result = []
    for rank in range(universe_size + 1):
        for domain in combinations(points, rank):
            for image in combinations(points, rank):
                for arrangement in permutations(image):
                    result.append(PartialBijection.from_dict(universe_size,
                                                             dict(zip(domain, arrangement))))
    return result
