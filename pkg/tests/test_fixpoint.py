import itertools
import random
from fractions import Fraction

import pytest

from ftsmetric import (Distribution, FuzzyTransitionSystem, NotAnEquivalence, Partition, StateMetric,
                       behavioral_distance, delta, fixpoint_iteration, greatest_bisimulation,
                       is_bisimulation, is_post_fixed_point, metric_from_relation, quotient,
                       similarity)
from ftsmetric.fixpoint import iteration_bound

from generators import four_states, random_system, random_ultrametric, set_partitions

F = Fraction
S = ("s1", "s2", "s3", "s4")

D1 = StateMetric(S, [[0, 0, 0, 1], [0, 0, 0, 1], [0, 0, 0, 1], [1, 1, 1, 0]])
D2 = StateMetric(S, [["0", "0.9", "0.9", "1"], ["0.9", "0", "0.6", "1"],
                     ["0.9", "0.6", "0", "1"], ["1", "1", "1", "0"]])


def test_delta_on_four_states():
    fts = four_states()
    assert delta(fts, StateMetric.top(S)) == D1
    assert delta(fts, D1) == D2
    assert delta(fts, D2) == D2


def test_delta_without_transitions_is_zero():
    fts = FuzzyTransitionSystem("xyz", ["a"])
    assert delta(fts, StateMetric.discrete("xyz")) == StateMetric.top("xyz")


def test_behavioral_distance_four_states():
    trace = fixpoint_iteration(four_states())
    assert trace.metric == D2
    assert trace.applications == 3
    assert trace.iterates[3] == trace.iterates[2]


def test_single_state():
    fts = FuzzyTransitionSystem(["x"], ["a"])
    assert behavioral_distance(fts) == StateMetric.top(["x"])


def test_identical_rows_are_at_distance_zero():
    rng = random.Random(2)
    for _ in range(100):
        base = random_system(rng, n_states=3)
        states = list(base.states) + ["twin"]
        delta_ = dict(base.delta)
        for a in base.labels:
            if (base.states[0], a) in delta_:
                delta_["twin", a] = delta_[base.states[0], a]
        fts = FuzzyTransitionSystem(states, base.labels, delta_)
        assert behavioral_distance(fts)(base.states[0], "twin") == 0
        assert greatest_bisimulation(fts).same_block(base.states[0], "twin")


def test_quotient_four_states():
    fts = four_states()
    assert quotient(fts, 0) == Partition([["s1"], ["s2"], ["s3"], ["s4"]], S)
    assert quotient(fts, "0.6") == Partition([["s1"], ["s2", "s3"], ["s4"]], S)
    assert quotient(fts, 1) == Partition([S], S)
    assert quotient(fts, "0.6", metric=D2) == quotient(fts, "0.6")


def test_similarity_four_states():
    sim = similarity(four_states())
    assert sim["s2", "s3"] == F(2, 5)
    assert sim["s1", "s4"] == 0
    assert all(sim[s, s] == 1 for s in S)


def test_similarity_is_zadeh_similarity():
    rng = random.Random(4)
    for _ in range(50):
        fts = random_system(rng)
        sim = similarity(fts)
        for x, y, z in itertools.product(fts.states, repeat=3):
            assert sim[x, y] == sim[y, x]
            assert min(sim[x, y], sim[y, z]) <= sim[x, z]


def test_greatest_bisimulation_examples():
    assert greatest_bisimulation(four_states()) == Partition([[s] for s in S], S)
    assert greatest_bisimulation(FuzzyTransitionSystem("xyz", ["a"])) == Partition(["xyz"], "xyz")


def test_empty_distribution_is_observable():
    fts = FuzzyTransitionSystem("xy", ["a"], {("x", "a"): [{}]})
    assert not greatest_bisimulation(fts).same_block("x", "y")
    assert behavioral_distance(fts)("x", "y") == 1


def test_metric_from_relation():
    ident = {(s, s) for s in "xyz"}
    assert metric_from_relation(ident, "xyz") == StateMetric.discrete("xyz")
    full = set(itertools.product("xyz", repeat=2))
    assert metric_from_relation(full, "xyz") == StateMetric.top("xyz")
    broken = ident | {("x", "y"), ("y", "x"), ("y", "z"), ("z", "y")}
    with pytest.raises(NotAnEquivalence):
        metric_from_relation(broken, "xyz")


def test_post_fixed_points_four_states():
    fts = four_states()
    assert is_post_fixed_point(fts, behavioral_distance(fts))
    assert is_post_fixed_point(fts, metric_from_relation(greatest_bisimulation(fts), S))
    assert not is_post_fixed_point(fts, StateMetric.top(S))


def test_delta_monotone():
    rng = random.Random(8)
    for _ in range(100):
        fts = random_system(rng)
        d2 = random_ultrametric(fts.states, rng)
        extra = random_ultrametric(fts.states, rng)
        d1 = StateMetric.from_function(fts.states, lambda s, t: max(d2(s, t), extra(s, t)))
        assert d1.leq(d2)
        assert delta(fts, d1).leq(delta(fts, d2))


def test_chain_is_monotone_and_bounded():
    rng = random.Random(6)
    for _ in range(100):
        fts = random_system(rng)
        trace = fixpoint_iteration(fts)
        for prev, nxt in zip(trace.iterates, trace.iterates[1:]):
            assert nxt.leq(prev)
        assert trace.applications <= iteration_bound(fts)
        assert delta(fts, trace.metric) == trace.metric


def test_bisimilar_pairs_have_equal_distances():
    rng = random.Random(10)
    for _ in range(100):
        fts = random_system(rng)
        d = behavioral_distance(fts)
        part = greatest_bisimulation(fts)
        for s, s2, t, t2 in itertools.product(fts.states, repeat=4):
            if part.same_block(s, s2) and part.same_block(t, t2):
                assert d(s, t) == d(s2, t2)


def test_quotient_is_a_partition_for_every_threshold():
    rng = random.Random(12)
    for _ in range(50):
        fts = random_system(rng)
        d = behavioral_distance(fts)
        values = {v for _, _, v in d.pairs()} | {F(0), F(1)}
        for lam in values:
            part = quotient(fts, lam, metric=d)
            for s, t in itertools.product(fts.states, repeat=2):
                assert part.same_block(s, t) == (d(s, t) <= lam)


def test_bisimulation_check_matches_post_fixed_point():
    rng = random.Random(14)
    for _ in range(40):
        fts = random_system(rng)
        d_f = behavioral_distance(fts)
        for blocks in set_partitions(fts.states):
            part = Partition(blocks, fts.states)
            d_r = metric_from_relation(part, fts.states)
            post = is_post_fixed_point(fts, d_r)
            assert is_bisimulation(fts, part) == post
            if post:
                assert d_r.leq(d_f)


def test_partition_canonical_form():
    p = Partition([["c", "a"], ["b"]], "abc")
    assert p.blocks == (("a", "c"), ("b",))
    assert p == Partition([["b"], ["a", "c"]], "abc")
    with pytest.raises(ValueError):
        Partition([["a"], ["a", "b"]], "ab")
    with pytest.raises(ValueError):
        Partition([["a"]], "ab")
