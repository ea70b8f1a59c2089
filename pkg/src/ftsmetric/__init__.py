"""Behavioral distances, bisimulation and composition for fuzzy-transition systems."""

from .compose import PairState, active_labels, disjoint_union, parallel, product
from .fixpoint import (FixpointTrace, IterationBoundExceeded, NotAnEquivalence, Partition,
                       behavioral_distance, delta, fixpoint_iteration, greatest_bisimulation,
                       is_bisimulation, is_post_fixed_point, metric_from_relation, quotient,
                       similarity)
from .lifting import (InfeasibleTransport, TransportMatrix, canonical_transport, hausdorff,
                      lifted_distance, lifted_distance_bruteforce, lifted_relation_contains,
                      optimal_transport, transport_feasible, weight_function_exists)
from .model import (EMPTY, ONE, ZERO, Distribution, FuzzyTransitionSystem, MetricAxiomError,
                    StateMetric, ValidationError, format_degree, height, meet_product, scale,
                    to_degree, union, validate_metric, validate_system)

__version__ = "0.1.0"
