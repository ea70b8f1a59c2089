"""
Transport matrices and the lifted distance
==========================================

Two possibility distributions can be compared only when their heights agree.
This script walks through feasibility, the canonical transport matrix and the
max-min lifted distance on a two-state space.
"""

from ftsmetric import (Distribution, StateMetric, canonical_transport, lifted_distance,
                       optimal_transport, transport_feasible)

mu = Distribution({"s": "0.9", "t": "0.3"})
eta = Distribution({"s": "1", "t": "0.5"})
theta = Distribution({"s": "0.9", "t": "0.5"})
print(mu, eta, theta, sep="\n")

# heights 0.9 and 1 differ, so no matrix links mu and eta
print("mu/eta feasible:", transport_feasible(mu, eta))
print("mu/theta feasible:", transport_feasible(mu, theta))

# one matrix with the right row and column maxima
x = canonical_transport(mu, theta, states="st")
for s in "st":
    print(s, [str(x(s, t)) for t in "st"])

# under the discrete metric only the off-diagonal entries cost anything
d = StateMetric.discrete("st")
print("d(mu, eta)   =", lifted_distance(d, mu, eta))
print("d(mu, theta) =", lifted_distance(d, mu, theta))
print("d(theta, mu) =", lifted_distance(d, theta, mu))

# the matrix that attains the optimum
best = optimal_transport(d, mu, theta)
print("optimal cost:", best.cost(d))
