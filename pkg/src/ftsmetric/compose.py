"""Parallel composition and product of a fuzzy-transition system with itself."""

from __future__ import annotations

from collections.abc import Hashable
from dataclasses import dataclass

from .model import Distribution, FuzzyTransitionSystem, meet_product

PARALLEL = "parallel"
PRODUCT = "product"


@dataclass(frozen=True, order=False)
class PairState:
    """A state of a composed system; prints as ``l|r`` or ``l||r``."""

    left: Hashable
    right: Hashable
    mode: str = PARALLEL

    def __str__(self):
        sep = "|" if self.mode == PARALLEL else "||"
        return f"{self.left}{sep}{self.right}"

    __repr__ = __str__


def active_labels(fts: FuzzyTransitionSystem, s: Hashable) -> frozenset:
    """Labels on which ``s`` has at least one non-empty alternative."""
    return frozenset(a for a in fts.labels if any(fts.transitions(s, a)))


def _compose(fts: FuzzyTransitionSystem, mode: str, start: tuple | None) -> FuzzyTransitionSystem:
    active = {s: active_labels(fts, s) for s in fts.states}

    def pair(l, r):
        return PairState(l, r, mode)

    def moves(s1, s2, a):
        left, right = a in active[s1], a in active[s2]
        if left and right:
            return [meet_product(mu, eta, pair)
                    for mu in fts.transitions(s1, a) for eta in fts.transitions(s2, a)]
        if mode == PRODUCT:
            return []
        if left:
            idle = Distribution.singleton(s2)
            return [meet_product(mu, idle, pair) for mu in fts.transitions(s1, a)]
        if right:
            idle = Distribution.singleton(s1)
            return [meet_product(idle, eta, pair) for eta in fts.transitions(s2, a)]
        return []

    if start is None:
        states = [pair(l, r) for l in fts.states for r in fts.states]
    else:
        # breadth-first over supports from the designated pair
        states = [pair(*start)]
        seen = set(states)
        for p in states:
            for a in fts.labels:
                for mu in moves(p.left, p.right, a):
                    for q in mu:
                        if q not in seen:
                            seen.add(q)
                            states.append(q)

    delta = {}
    for p in states:
        for a in fts.labels:
            alts = moves(p.left, p.right, a)
            if alts:
                delta[p, a] = list(dict.fromkeys(alts))
    return FuzzyTransitionSystem(states, fts.labels, delta)


def parallel(fts: FuzzyTransitionSystem, start: tuple | None = None) -> FuzzyTransitionSystem:
    """Parallel composition on ``S x S``.

    Labels active at both coordinates synchronise (all pairwise meets); a label
    active at only one coordinate moves that side while the other stays put
    with degree 1.  With ``start=(s1, s2)`` only pairs reachable from ``s1|s2``
    are built.
    """
    return _compose(fts, PARALLEL, start)


def product(fts: FuzzyTransitionSystem, start: tuple | None = None) -> FuzzyTransitionSystem:
    """Synchronous product on ``S x S``: moves only on labels active at both sides."""
    return _compose(fts, PRODUCT, start)


def disjoint_union(left: FuzzyTransitionSystem, right: FuzzyTransitionSystem,
                   tags: tuple[str, str] = ("L", "R")) -> FuzzyTransitionSystem:
    """Side-by-side copy of two systems over the union of their labels.

    States become ``"<tag>.<state>"`` strings, so two different systems can be
    composed by composing their union and looking at cross pairs.
    """
    def rename(tag, s):
        return f"{tag}.{s}"

    states, labels, delta = [], list(dict.fromkeys([*left.labels, *right.labels])), {}
    for tag, sys_ in zip(tags, (left, right)):
        states.extend(rename(tag, s) for s in sys_.states)
        for (s, a), alts in sys_.delta.items():
            delta[rename(tag, s), a] = [
                Distribution({rename(tag, t): v for t, v in mu.items()}) for mu in alts]
    return FuzzyTransitionSystem(states, labels, delta)
