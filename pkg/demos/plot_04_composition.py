"""
Parallel composition and product
================================

Composing a system with itself can only bring states closer: the distance
between two pair states is at most the larger of the component distances.
"""

from pathlib import Path

from ftsmetric import PairState, behavioral_distance, parallel, product
from ftsmetric.io import parse_system

fts = parse_system(Path(__file__).parent / "data" / "four_states.json")
d = behavioral_distance(fts)

par = parallel(fts)
print("s2|s3 moves:", par.transitions(PairState("s2", "s3"), "a"))

dp = behavioral_distance(par)
pairs = [("s1", "s2"), ("s2", "s3"), ("s4", "s3"), ("s3", "s4"), ("s4", "s4")]
for (l1, r1), (l2, r2) in zip(pairs, pairs[1:]):
    p, q = PairState(l1, r1), PairState(l2, r2)
    bound = max(d(l1, l2), d(r1, r2))
    print(f"d({p}, {q}) = {dp(p, q)}  <=  {bound}")

# the product only moves when both sides move together
prod = product(fts)
for p in prod.states:
    moves = prod.transitions(p, "a")
    if moves:
        print(p, "->", moves[0])

# starting from one pair keeps only what it can reach
print("reachable from s1|s2:", [str(p) for p in parallel(fts, start=("s1", "s2")).states])
