"""
The covering relation e ≺_x xx⁻¹, short and tight bypasses, and the
shortly/tightly connected predicates.

A bypass from e to xx⁻¹ is a chain of idempotents e = e_0 < ... < e_n = xx⁻¹
such that each e_{k-1} is x_k-covered by e_k, where x_k = e_k·x. A tight
bypass also asks every e_{k-1}·x_k (which equals x_{k-1}) to be a nongroup
element or an idempotent.
"""
from collections import deque
from dataclasses import dataclass
from typing import Optional, Tuple

from . import messages
from .error import PreconditionError


def _check_element(S, x):
    if not 0 <= x < S.order:
        raise PreconditionError(f'element {x} is outside [0, {S.order})', witness=(x, S.order))


def _check_idempotent(S, e):
    _check_element(S, e)
    if e not in S.idempotent_set:
        raise PreconditionError(f'element {e} is not an idempotent', witness=(e,))


def _covers_with(S, e, x, generated):
    r = S.range_idempotent(x)
    if e == r or not S.leq[e, r]:
        return False
    return not any(f != e and f != r and S.leq[e, f] and S.leq[f, r]
                   for f in generated if f in S.idempotent_set)


def x_covers(S, e, x):
    """
    e ≺_x xx⁻¹: e < xx⁻¹ and no idempotent of ⟨x⟩ lies strictly between.
    """
    _check_idempotent(S, e)
    _check_element(S, x)
    return _covers_with(S, e, x, S.generate([x]))


def in_nongroup_or_idempotent(S, x):
    return x in S.nongroup or x in S.idempotent_set


def tightly_covers(S, e, x):
    """
    e is tightly x-covered by xx⁻¹: e ≺_x xx⁻¹ and e·x is a nongroup element
    or an idempotent (and then e·x = e).

    Raises
    ------
    PreconditionError
        x is a nonidempotent group element
    """
    _check_element(S, x)
    if not in_nongroup_or_idempotent(S, x):
        raise PreconditionError(f'element {x} is a nonidempotent group element', witness=(x,))
    return x_covers(S, e, x) and in_nongroup_or_idempotent(S, S.product(e, x))


def _step_ok(S, a, b, x, tight):
    stage = S.product(b, x)
    if tight:
        if not in_nongroup_or_idempotent(S, stage):
            return False
        if not in_nongroup_or_idempotent(S, S.product(a, stage)):
            return False
    return _covers_with(S, a, stage, S.generate([stage]))


@dataclass(frozen=True)
class Bypass:
    x: int
    chain: Tuple[int, ...]
    stages: Tuple[int, ...]
    tight: bool

    def __len__(self):
        return len(self.chain) - 1

    def to_json(self):
        return {'x': self.x, 'chain': list(self.chain), 'stages': list(self.stages),
                'tight': self.tight}

    def first_nongroup_stage(self, S):
        """
        Least k with x_k in N_S, or None when every stage is idempotent.

        Stages are counted from 0, so ``stages[0] = e·x`` and
        ``stages[-1] = x``. The first nongroup stage in 1-based counting
        is the returned value plus one.
        """
        for k, stage in enumerate(self.stages):
            if stage in S.nongroup:
                return k
        return None

    def validate(self, S):
        """
        Re-check every defining condition using fresh closures of each ⟨x_k⟩.
        Returns a list of failure descriptions (empty when valid).
        """
        failures = []
        chain, stages = self.chain, self.stages
        if chain[-1] != S.range_idempotent(self.x):
            failures.append('chain does not end at xx⁻¹')
        for k in range(len(chain)):
            if chain[k] not in S.idempotent_set:
                failures.append(f'chain entry {k} is not idempotent')
            if stages[k] != S.product(chain[k], self.x):
                failures.append(f'stage {k} is not e_k·x')
            if S.range_idempotent(stages[k]) != chain[k]:
                failures.append(f'stage {k} does not satisfy x_k x_k⁻¹ = e_k')
        for k in range(1, len(chain)):
            a, b, stage = chain[k - 1], chain[k], stages[k]
            if not S.strictly_below(a, b):
                failures.append(f'chain does not ascend at step {k}')
            fresh = S.closure({stage, S.inverse(stage)})
            if not _covers_with(S, a, stage, fresh):
                failures.append(f'step {k} is not a covering')
            if self.tight and not (in_nongroup_or_idempotent(S, stage)
                                   and in_nongroup_or_idempotent(S, S.product(a, stage))):
                failures.append(f'step {k} is not tight')
        if self.tight and self.x in S.nongroup:
            m = self.first_nongroup_stage(S)
            if m is None or any(s not in S.idempotent_set for s in stages[:m]) \
                    or any(s not in S.nongroup for s in stages[m:]):
                failures.append('stages are not idempotents followed by nongroup elements')
        return failures


def _find_bypass(S, e, x, tight):
    _check_idempotent(S, e)
    _check_element(S, x)
    r =S.range_idempotent(x)
    if not S.strictly_below(e, r):
        raise PreconditionError(f'idempotent {e} is not strictly below xx⁻¹', witness=(e, x, r))
    if tight and not in_nongroup_or_idempotent(S, x):
        raise PreconditionError(f'element {x} is a nonidempotent group element', witness=(x,))
    interval = [f for f in S.idempotents if S.leq[e, f] and S.leq[f, r]]
    edges = {a: [b for b in interval if S.strictly_below(a, b) and _step_ok(S, a, b, x, tight)]
             for a in interval}
    # distance to xx⁻¹ along edges, by a backwards breadth-first search
    distance = {r: 0}
    queue = deque([r])
    while queue:
        b = queue.popleft()
        for a in interval:
            if a not in distance and b in edges[a]:
                distance[a] = distance[b] + 1
                queue.append(a)
    if e not in distance:
        return None
    chain = [e]
    while chain[-1] != r:
        here = chain[-1]
        chain.append(min(b for b in edges[here] if distance.get(b) == distance[here] - 1))
    stages = tuple(S.product(f, x) for f in chain)
    return Bypass(x, tuple(chain), stages, tight)


def find_short_bypass(S, e, x) -> Optional[Bypass]:
    """
    The shortest short bypass from e to xx⁻¹, least in index order among
    the shortest, or None.

    Raises
    ------
    PreconditionError
        e is not an idempotent strictly below xx⁻¹
    """
    return _find_bypass(S, e, x, tight=False)


def find_tight_bypass(S, e, x) -> Optional[Bypass]:
    return _find_bypass(S, e, x, tight=True)


def connectivity_witness(S, tight):
    """First pair (e, x) without a (tight) bypass, or None."""
    for x in range(S.order):
        if tight and not in_nongroup_or_idempotent(S, x):
            continue
        r = S.range_idempotent(x)
        for e in S.idempotents:
            if S.strictly_below(e, r) and _find_bypass(S, e, x, tight) is None:
                return e, x
    return None


def is_shortly_connected(S):
    return connectivity_witness(S, tight=False) is None


def is_tightly_connected(S):
    return connectivity_witness(S, tight=True) is None


def order_ideal_check(S):
    """N_S ∪ E_S is an order ideal of (S, ≤)."""
    allowed = S.nongroup | S.idempotent_set
    return all(y in allowed for x in allowed for y in S.below(x))


@dataclass(frozen=True)
class ConnectivityEquivalence:
    tightly_connected: bool
    shortly_connected: bool
    order_ideal: bool

    @property
    def holds(self):
        return self.tightly_connected == (self.shortly_connected and self.order_ideal)

    def to_json(self):
        return {'tightly_connected': self.tightly_connected,
                'shortly_connected': self.shortly_connected,
                'order_ideal': self.order_ideal,
                'equivalence_holds': self.holds}


def connectivity_equivalence(S):
    """
    Compare "tightly connected" with "shortly connected and N_S ∪ E_S an
    order ideal". A discrepancy is a high-severity finding and is reported,
    not raised.
    """
    report = ConnectivityEquivalence(is_tightly_connected(S), is_shortly_connected(S), order_ideal_check(S))
    if not report.holds:
        messages.warn('connectivity', f'tight/short connectivity equivalence fails: {report.to_json()}')
    return report
