"""
Behavioral distance by fixpoint iteration
=========================================

The distance between states is the greatest fixed point of the one-step
operator, reached by iterating from the all-zero metric.  Each iterate is
printed so the chain can be followed.
"""

from pathlib import Path

from ftsmetric import fixpoint_iteration, similarity
from ftsmetric.io import parse_system

fts = parse_system(Path(__file__).parent / "data" / "four_states.json")
trace = fixpoint_iteration(fts)

for k, d in enumerate(trace.iterates):
    print(f"d{k}")
    for s in fts.states:
        print("  ", s, " ".join(f"{float(d(s, t)):.1f}" for t in fts.states))

# distances stop changing after three applications
print("applications:", trace.applications)

# similarity is just one minus the distance
sim = similarity(fts, metric=trace.metric)
print("similarity(s2, s3) =", sim["s2", "s3"])
