"""Lifting state distances and state relations to possibility distributions.

The central object is the max-min transport problem: given distributions
``mu`` and ``eta`` of equal height, find a matrix ``x`` whose row maxima are
``mu`` and column maxima are ``eta``, minimising ``max min(d(s, t), x[s, t])``.
"""

from __future__ import annotations

import itertools
from collections.abc import Callable, Collection, Hashable, Iterable
from fractions import Fraction

from .model import ONE, ZERO, Distribution, StateMetric, height

Pair = tuple[Hashable, Hashable]


class InfeasibleTransport(ValueError):
    """The two distributions have different heights, so no transport matrix exists."""


class InstanceTooLarge(ValueError):
    pass


class TransportMatrix(dict):
    """Sparse matrix ``{(s, t): degree}``; absent entries are zero."""

    def __call__(self, s: Hashable, t: Hashable) -> Fraction:
        return self.get((s, t), ZERO)

    def row_max(self, s: Hashable) -> Fraction:
        return max((v for (a, _), v in self.items() if a == s), default=ZERO)

    def col_max(self, t: Hashable) -> Fraction:
        return max((v for (_, b), v in self.items() if b == t), default=ZERO)

    def has_marginals(self, mu: Distribution, eta: Distribution) -> bool:
        """True iff row maxima equal ``mu`` and column maxima equal ``eta``."""
        rows = {s: ZERO for s in mu}
        cols = {t: ZERO for t in eta}
        for (s, t), v in self.items():
            if v < 0:
                return False
            if not v:
                continue
            if s not in rows or t not in cols:
                return False
            rows[s] = max(rows[s], v)
            cols[t] = max(cols[t], v)
        return all(rows[s] == mu[s] for s in mu) and all(cols[t] == eta[t] for t in eta)

    def cost(self, d: Callable[[Hashable, Hashable], Fraction]) -> Fraction:
        """The transport objective ``max over (s, t) of min(d(s, t), x[s, t])``."""
        return max((min(d(s, t), v) for (s, t), v in self.items()), default=ZERO)


def transport_feasible(mu: Distribution, eta: Distribution) -> bool:
    return height(mu) == height(eta)


def _first_peak(mu: Distribution, order: dict | None) -> Hashable:
    h = height(mu)
    peaks = [s for s, v in mu.items() if v == h]
    if order is not None:
        peaks.sort(key=order.__getitem__)
    return peaks[0]


def canonical_transport(mu: Distribution, eta: Distribution,
                        states: Iterable[Hashable] | None = None) -> TransportMatrix:
    """The explicit solution built from a peak of each distribution.

    With ``s0`` a state where ``mu`` reaches its height and ``t0`` the same
    for ``eta`` (earliest in ``states`` order on ties), column ``t0`` carries
    ``mu``, row ``s0`` carries ``eta``, and everything else is zero.  A
    distribution paired with itself gets the identity transport instead.
    """
    if not transport_feasible(mu, eta):
        raise InfeasibleTransport(f"heights differ: {height(mu)} != {height(eta)}")
    if mu == eta:
        return TransportMatrix(((s, s), v) for s, v in mu.items())
    x = TransportMatrix()
    order = None if states is None else {s: i for i, s in enumerate(states)}
    s0, t0 = _first_peak(mu, order), _first_peak(eta, order)
    for t, v in eta.items():
        x[s0, t] = v
    for s, v in mu.items():
        x[s, t0] = v
    return x


def capped_transport(d: StateMetric, mu: Distribution, eta: Distribution, c: Fraction) -> TransportMatrix:
    """Entrywise-largest matrix whose cost under ``d`` is at most ``c``.

    Every admissible matrix is bounded by ``min(mu(s), eta(t))``, and entries on
    pairs with ``d(s, t) > c`` must additionally stay at or below ``c``.
    """
    x = TransportMatrix()
    for s, m in mu.items():
        row = d.row(s)
        for t, e in eta.items():
            v = m if m < e else e
            if row[d.index[t]] > c and v > c:
                v = c
            if v:
                x[s, t] = v
    return x


def _capped_ok(d: StateMetric, mu: Distribution, eta: Distribution, c: Fraction) -> bool:
    # has_marginals(capped_transport(...)) without building the matrix:
    # entry (s, t) reaches mu(s) iff eta(t) >= mu(s) and it is not capped below mu(s).
    for s, m in mu.items():
        row, idx = d.row(s), d.index
        if not any(e >= m and (c >= m or row[idx[t]] <= c) for t, e in eta.items()):
            return False
    for t, e in eta.items():
        j = d.index[t]
        if not any(m >= e and (c >= e or d.row(s)[j] <= c) for s, m in mu.items()):
            return False
    return True


def threshold_candidates(d: StateMetric, mu: Distribution, eta: Distribution) -> list[Fraction]:
    """Sorted values the optimal cost can take."""
    values = {ZERO, *mu.values(), *eta.values()}
    for s in mu:
        row = d.row(s)
        values.update(row[d.index[t]] for t in eta)
    return sorted(values)


def lifted_distance(d: StateMetric, mu: Distribution, eta: Distribution) -> Fraction:
    """Distance between two distributions induced by the state metric ``d``.

    ``1`` when the heights differ.  Otherwise the least candidate threshold
    ``c`` for which :func:`capped_transport` still has the required row and
    column maxima; that matrix dominates every matrix of cost ``<= c``, so the
    first passing threshold is the optimum.
    """
    if height(mu) != height(eta):
        return ONE
    if mu == eta:
        return ZERO
    for c in threshold_candidates(d, mu, eta):
        if _capped_ok(d, mu, eta, c):
            return c
    raise AssertionError("unreachable: the height threshold is always feasible")


def optimal_transport(d: StateMetric, mu: Distribution, eta: Distribution) -> TransportMatrix:
    """A transport matrix attaining :func:`lifted_distance` (equal heights only)."""
    if not transport_feasible(mu, eta):
        raise InfeasibleTransport(f"heights differ: {height(mu)} != {height(eta)}")
    return capped_transport(d, mu, eta, lifted_distance(d, mu, eta))


def lifted_distance_bruteforce(d: Callable[[Hashable, Hashable], Fraction],
                               mu: Distribution, eta: Distribution, max_states: int = 5) -> Fraction:
    """Exhaustive reference for :func:`lifted_distance`.

    Searches all matrices on ``supp(mu) x supp(eta)`` whose entries come from
    ``{0} ∪ values(mu) ∪ values(eta)``, keeping those with the right row and
    column maxima.  Values above ``min(mu(s), eta(t))`` would break a maximum
    and are never tried; partial matrices already costing at least the best
    known feasible matrix (initially the :func:`canonical_transport` one) are
    abandoned.  Both cuts leave the minimum unchanged.
    """
    if len(set(mu) | set(eta)) > max_states:
        raise InstanceTooLarge(f"combined support exceeds {max_states} states")
    if height(mu) != height(eta):
        return ONE
    rows, cols = list(mu.items()), list(eta.items())
    if not rows:
        return ZERO
    seed = canonical_transport(mu, eta)
    assert seed.has_marginals(mu, eta)

    # The objective only compares, so search over order-preserving integer ranks.
    dists = {(s, t): d(s, t) for s, _ in rows for t, _ in cols}
    entry_values = sorted({ZERO, *mu.values(), *eta.values()})
    ranks = sorted({*entry_values, *dists.values()})
    rank = {v: i for i, v in enumerate(ranks)}
    row_need = [rank[m] for _, m in rows]
    col_need = [rank[e] for _, e in cols]
    cells = [([rank[v] for v in entry_values if v <= min(m, e)], rank[dists[s, t]])
             for s, m in rows for t, e in cols]
    ncols, ncells = len(cols), len(cells)
    best = rank[seed.cost(d)]
    chosen = [0] * ncells

    def search(k: int, cost: int) -> None:
        nonlocal best
        if cost >= best:
            return
        if k and k % ncols == 0 and max(chosen[k - ncols:k]) != row_need[k // ncols - 1]:
            return
        if k == ncells:
            if all(max(chosen[j::ncols]) == need for j, need in enumerate(col_need)):
                best = cost
            return
        options, dist = cells[k]
        for v in options:
            chosen[k] = v
            search(k + 1, max(cost, min(dist, v)))

    search(0, 0)
    return ranks[best]


def hausdorff(dist: Callable[[object, object], Fraction], A: Collection, B: Collection) -> Fraction:
    """Hausdorff distance between finite sets under ``dist``.

    Both sets empty gives 0; a point's distance to the empty set is 1.
    """
    if not A and not B:
        return ZERO
    if not A or not B:
        return ONE
    worst = ZERO
    for src, dst in ((A, B), (B, A)):
        for a in src:
            near = min(dist(a, b) for b in dst)
            if near > worst:
                worst = near
                if worst == ONE:
                    return ONE
    return worst


def lifted_relation_contains(partition, mu: Distribution, eta: Distribution) -> bool:
    """Whether ``(mu, eta)`` is in the lifting of the equivalence given by ``partition``.

    For an equivalence relation this holds iff ``mu`` and ``eta`` have the
    same height on every class.  ``partition`` is any iterable of blocks.
    """
    return all(height(mu, block) == height(eta, block) for block in partition)


def weight_function_exists(relation: Collection[Pair], mu: Distribution, eta: Distribution) -> bool:
    """Whether some transport matrix between ``mu`` and ``eta`` lives inside ``relation``.

    Tries the largest such matrix, ``min(mu(s), eta(t))`` on related pairs and
    zero elsewhere; any other candidate is dominated by it.
    """
    relation = set(relation)
    w = TransportMatrix()
    for s, m in mu.items():
        for t, e in eta.items():
            if (s, t) in relation:
                w[s, t] = min(m, e)
    return w.has_marginals(mu, eta)
