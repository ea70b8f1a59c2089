"""Behavioral distance as the greatest fixed point of the Δ operator, plus bisimulation."""

from __future__ import annotations

import itertools
from collections.abc import Collection, Hashable, Iterable
from dataclasses import dataclass, field
from fractions import Fraction

from .lifting import hausdorff, lifted_distance, lifted_relation_contains
from .model import ONE, ZERO, FuzzyTransitionSystem, StateMetric, ValidationError, height


class NotAnEquivalence(ValidationError):
    pass


class IterationBoundExceeded(RuntimeError):
    """The fixpoint iteration ran past its proven bound; this is a bug, not bad input."""


class Partition:
    """Disjoint blocks covering a state list, kept in canonical order.

    Members follow state order inside a block, and blocks are sorted by their
    first member.  Two partitions of the same states compare equal iff they
    describe the same equivalence relation.
    """

    def __init__(self, blocks: Iterable[Iterable[Hashable]], states: Iterable[Hashable]):
        self.states = tuple(states)
        order = {s: i for i, s in enumerate(self.states)}
        canon = []
        seen: set = set()
        for block in blocks:
            members = sorted(set(block), key=order.__getitem__)
            if not members:
                raise ValueError("empty block")
            if seen.intersection(members):
                raise ValueError("blocks overlap")
            seen.update(members)
            canon.append(tuple(members))
        if seen != set(self.states):
            raise ValueError("blocks do not cover the state set")
        canon.sort(key=lambda b: order[b[0]])
        self.blocks = tuple(canon)
        self._block_of = {s: i for i, b in enumerate(self.blocks) for s in b}

    @classmethod
    def from_relation(cls, relation: Collection[tuple], states: Iterable[Hashable]) -> "Partition":
        """Classes of an equivalence relation given as a set of pairs."""
        states = tuple(states)
        rel = set(relation)
        check_equivalence(rel, states)
        blocks, placed = [], set()
        for s in states:
            if s not in placed:
                block = [t for t in states if (s, t) in rel]
                placed.update(block)
                blocks.append(block)
        return cls(blocks, states)

    def block_of(self, s: Hashable) -> tuple:
        return self.blocks[self._block_of[s]]

    def same_block(self, s: Hashable, t: Hashable) -> bool:
        return self._block_of[s] == self._block_of[t]

    def pairs(self) -> set[tuple]:
        """The equivalence relation as a set of ordered pairs."""
        return {(s, t) for b in self.blocks for s in b for t in b}

    def __iter__(self):
        return iter(self.blocks)

    def __len__(self):
        return len(self.blocks)

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return set(self.states) == set(other.states) and set(self.blocks) == set(other.blocks)

    def __hash__(self):
        return hash(frozenset(self.blocks))

    def __repr__(self):
        return "Partition(" + ", ".join("{" + ", ".join(map(str, b)) + "}" for b in self.blocks) + ")"


def delta(fts: FuzzyTransitionSystem, d: StateMetric) -> StateMetric:
    """One application of Δ.

    ``Δ(d)(s, t)`` is the worst, over labels, Hausdorff distance between the
    alternatives of ``s`` and ``t``, measured with the lifting of ``d``.
    """
    cache: dict[tuple, Fraction] = {}

    def lifted(mu, eta):
        key = (mu, eta)
        v = cache.get(key)
        if v is None:
            v = cache[key] = cache[eta, mu] = lifted_distance(d, mu, eta)
        return v

    states = fts.states
    n = len(states)
    rows = [[ZERO] * n for _ in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        s, t = states[i], states[j]
        worst = ZERO
        for a in fts.labels:
            h = hausdorff(lifted, fts.transitions(s, a), fts.transitions(t, a))
            if h > worst:
                worst = h
                if worst == ONE:
                    break
        rows[i][j] = rows[j][i] = worst
    return StateMetric(states, rows)


def iteration_bound(fts: FuzzyTransitionSystem) -> int:
    """Upper bound on Δ applications before the chain from the top metric stabilises.

    Iterates only take values in the system's degrees plus 0 and 1 and never
    decrease, so each of the ``|S|^2`` entries can rise at most ``|V| + 1`` times.
    """
    return len(fts.states) ** 2 * (len(fts.degrees()) + 2)


@dataclass
class FixpointTrace:
    """Iterates ``d_0 = top, d_1, ..., d_n`` with ``d_n == d_{n-1}``."""

    iterates: list[StateMetric] = field(default_factory=list)

    @property
    def metric(self) -> StateMetric:
        return self.iterates[-1]

    @property
    def applications(self) -> int:
        """Number of Δ applications performed, including the confirming one."""
        return len(self.iterates) - 1


def fixpoint_iteration(fts: FuzzyTransitionSystem) -> FixpointTrace:
    """Iterate Δ from the all-zero metric until two successive iterates coincide."""
    bound = iteration_bound(fts)
    current = StateMetric.top(fts.states)
    trace = FixpointTrace([current])
    while True:
        nxt = delta(fts, current)
        trace.iterates.append(nxt)
        if nxt == current:
            return trace
        if trace.applications > bound:
            raise IterationBoundExceeded(f"no fixed point after {bound} applications")
        current = nxt


def behavioral_distance(fts: FuzzyTransitionSystem) -> StateMetric:
    """The behavioral distance ``d_f``: greatest fixed point of Δ."""
    return fixpoint_iteration(fts).metric


def quotient(fts: FuzzyTransitionSystem, lam, metric: StateMetric | None = None) -> Partition:
    """Blocks of states within behavioral distance ``lam`` of each other.

    Pass ``metric`` to reuse an already computed ``d_f``.  Ultrametricity makes
    the threshold relation transitive, so grouping by a representative is exact.
    """
    lam = Fraction(lam)
    d = behavioral_distance(fts) if metric is None else metric
    blocks, placed = [], set()
    for s in fts.states:
        if s in placed:
            continue
        block = [t for t in fts.states if t not in placed and d(s, t) <= lam]
        placed.update(block)
        blocks.append(block)
    return Partition(blocks, fts.states)


def similarity(fts: FuzzyTransitionSystem, metric: StateMetric | None = None) -> dict[tuple, Fraction]:
    """``1 - d_f(s, t)`` for every ordered pair of states."""
    d = behavioral_distance(fts) if metric is None else metric
    return {(s, t): ONE - d(s, t) for s in fts.states for t in fts.states}


def _class_profile(mu, partition: Partition) -> tuple:
    return tuple(height(mu, block) for block in partition.blocks)


def greatest_bisimulation(fts: FuzzyTransitionSystem) -> Partition:
    """Bisimilarity classes by naive partition refinement.

    Starting from a single block, two states stay together iff for each label
    they offer the same set of per-class height profiles; that is exactly
    mutual matching of moves under the lifted relation.  Repeats until no block
    splits.
    """
    part = Partition([fts.states], fts.states)
    while True:
        signature = {}
        for s in fts.states:
            moves = tuple(
                frozenset(_class_profile(mu, part) for mu in fts.transitions(s, a))
                for a in fts.labels)
            signature[s] = (part._block_of[s], moves)
        groups: dict = {}
        for s in fts.states:
            groups.setdefault(signature[s], []).append(s)
        refined = Partition(groups.values(), fts.states)
        if len(refined) == len(part):
            return refined
        part = refined


def is_bisimulation(fts: FuzzyTransitionSystem, relation: Collection[tuple] | Partition) -> bool:
    """Check an equivalence relation against the bisimulation transfer condition.

    For every related ``(s, t)`` and label ``a``, each ``s``-move ``mu`` must be
    answered by some ``t``-move ``eta`` with ``mu(C) == eta(C)`` on every class ``C``.
    """
    part = relation if isinstance(relation, Partition) else Partition.from_relation(relation, fts.states)
    for block in part.blocks:
        for s, t in itertools.product(block, repeat=2):
            for a in fts.labels:
                answers = fts.transitions(t, a)
                for mu in fts.transitions(s, a):
                    if not any(lifted_relation_contains(part.blocks, mu, eta) for eta in answers):
                        return False
    return True


def check_equivalence(relation: Collection[tuple], states: Iterable[Hashable]) -> None:
    """Raise :class:`NotAnEquivalence` unless ``relation`` is an equivalence on ``states``."""
    states = tuple(states)
    rel = set(relation)
    problems = []
    known = set(states)
    for s, t in rel:
        if s not in known or t not in known:
            problems.append(f"pair ({s}, {t}) mentions an unknown state")
    for s in states:
        if (s, s) not in rel:
            problems.append(f"not reflexive: ({s}, {s}) missing")
    for s, t in rel:
        if (t, s) not in rel:
            problems.append(f"not symmetric: ({s}, {t}) without ({t}, {s})")
    for s, t in rel:
        for u in states:
            if (t, u) in rel and (s, u) not in rel:
                problems.append(f"not transitive: ({s}, {t}), ({t}, {u}) without ({s}, {u})")
    if problems:
        raise NotAnEquivalence(sorted(set(problems)))


def metric_from_relation(relation: Collection[tuple] | Partition, states: Iterable[Hashable]) -> StateMetric:
    """0/1 metric: 0 on related pairs, 1 elsewhere.  ``relation`` must be an equivalence."""
    states = tuple(states)
    rel = relation.pairs() if isinstance(relation, Partition) else set(relation)
    check_equivalence(rel, states)
    return StateMetric.from_function(states, lambda s, t: ZERO if (s, t) in rel else ONE)


def is_post_fixed_point(fts: FuzzyTransitionSystem, d: StateMetric) -> bool:
    """``d ⪯ Δ(d)``, i.e. ``d(s, t) >= Δ(d)(s, t)`` for all pairs."""
    return d.leq(delta(fts, d))
