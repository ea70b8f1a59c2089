"""
Bisimulation and threshold quotients
====================================

States at distance zero are exactly the bisimilar ones.  Raising the
threshold merges states that are merely close.
"""

from fractions import Fraction
from pathlib import Path

from ftsmetric import (behavioral_distance, greatest_bisimulation, is_bisimulation,
                       is_post_fixed_point, metric_from_relation, quotient)
from ftsmetric.io import parse_system

fts = parse_system(Path(__file__).parent / "data" / "four_states.json")
d = behavioral_distance(fts)

print("bisimulation classes:", greatest_bisimulation(fts))
for lam in ("0", "0.6", "0.9", "1"):
    print(f"quotient at {lam}:", quotient(fts, Fraction(lam), metric=d))

# a relation is a bisimulation iff its 0/1 metric is a post-fixed point;
# the 0.6 quotient merges s2 and s3, which is one merge too many
for name, rel in (("bisimilarity", greatest_bisimulation(fts)),
                  ("quotient at 0.6", quotient(fts, Fraction("0.6"), metric=d))):
    post = is_post_fixed_point(fts, metric_from_relation(rel, fts.states))
    print(f"{name}: bisimulation={is_bisimulation(fts, rel)} post-fixed point={post}")
