"""Degrees, possibility distributions, fuzzy-transition systems and state metrics.

All degrees are :class:`fractions.Fraction` values in ``[0, 1]``.  Nothing in
this package ever touches a float, so min/max/equality are exact and fixpoint
iteration can stop on plain equality.
"""

from __future__ import annotations

import itertools
import warnings
from collections.abc import Hashable, Iterable, Mapping
from decimal import Decimal
from fractions import Fraction
from typing import Any, Callable, Union

Degree = Fraction
DegreeLike = Union[Fraction, int, str, Decimal, float]

ZERO = Fraction(0)
ONE = Fraction(1)


class ValidationError(ValueError):
    """Raised when a system or metric description is malformed.

    ``diagnostics`` holds one human-readable message per problem found.
    """

    def __init__(self, diagnostics: list[str]):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(self.diagnostics))


class MetricAxiomError(ValidationError):
    """A matrix violates one of the pseudo-ultrametric axioms.

    ``axiom`` is ``"P1"``, ``"P2"`` or ``"P3"`` and ``witness`` is the tuple of
    states exhibiting the violation.
    """

    def __init__(self, axiom: str, witness: tuple, message: str):
        self.axiom = axiom
        self.witness = witness
        super().__init__([message])


class DuplicateTransitionWarning(UserWarning):
    pass


def to_degree(value: DegreeLike) -> Fraction:
    """Convert ``value`` to an exact degree in ``[0, 1]``.

    Strings may be decimal literals (``"0.9"``) or fractions (``"1/3"``).
    Floats go through ``repr`` so ``0.9`` means nine tenths, not the nearest
    binary double.
    """
    if isinstance(value, bool):
        raise TypeError("bool is not a degree")
    if isinstance(value, float):
        value = repr(value)
    if isinstance(value, str):
        value = value.strip()
    try:
        deg = Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise ValueError(f"not a degree: {value!r}") from exc
    if deg < 0 or deg > 1:
        raise ValueError(f"degree {value} outside [0, 1]")
    return deg


def format_degree(value: Fraction) -> str:
    """Shortest exact decimal for ``value`` if it terminates, else ``"p/q"``."""
    value = Fraction(value)
    den, places = value.denominator, 0
    while den % 10 == 0 or den % 2 == 0 or den % 5 == 0:
        den //= 10 if den % 10 == 0 else (2 if den % 2 == 0 else 5)
        places += 1
    if den != 1:
        return f"{value.numerator}/{value.denominator}"
    if places == 0:
        return str(value.numerator)
    digits = f"{value.numerator * 10**places // value.denominator:0{places + 1}d}"
    return f"{digits[:-places]}.{digits[-places:]}".rstrip("0").rstrip(".")


class Distribution(Mapping):
    """A possibility distribution: a finite fuzzy set of states.

    Only the support is stored; zero entries are dropped on construction, so two
    distributions are equal exactly when their supports and degrees agree.
    ``mu(s)`` returns the degree of ``s`` (``0`` outside the support), while
    ``mu[s]`` follows the usual mapping protocol and raises ``KeyError``.
    """

    __slots__ = ("_data", "_hash")

    def __init__(self, entries: Mapping[Hashable, DegreeLike] | Iterable = ()):
        items = entries.items() if isinstance(entries, Mapping) else entries
        data: dict[Hashable, Fraction] = {}
        for state, value in items:
            deg = value if type(value) is Fraction and 0 <= value <= 1 else to_degree(value)
            if deg:
                data[state] = deg
        self._data = data
        self._hash = None

    @classmethod
    def singleton(cls, state: Hashable) -> "Distribution":
        return cls({state: ONE})

    def __call__(self, state: Hashable) -> Fraction:
        return self._data.get(state, ZERO)

    def __getitem__(self, state):
        return self._data[state]

    def __iter__(self):
        return iter(self._data)

    def __len__(self):
        return len(self._data)

    def __contains__(self, state):
        return state in self._data

    def __eq__(self, other):
        if isinstance(other, Distribution):
            return self._data == other._data
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._data.items()))
        return self._hash

    def __repr__(self):
        if not self._data:
            return "Distribution(∅)"
        body = " + ".join(f"{format_degree(v)}/{s}" for s, v in self._data.items())
        return f"Distribution({body})"

    @property
    def support(self) -> frozenset:
        return frozenset(self._data)

    def height(self, over: Iterable[Hashable] | None = None) -> Fraction:
        return height(self, over)


EMPTY = Distribution()


def height(mu: Mapping, over: Iterable[Hashable] | None = None) -> Fraction:
    """Largest degree of ``mu`` on the states in ``over`` (all states if None).

    The supremum of an empty family is ``0``.
    """
    if over is None:
        return max(mu.values(), default=ZERO)
    return max((mu[s] for s in over if s in mu), default=ZERO)


def scale(c: DegreeLike, mu: Distribution) -> Distribution:
    """``c · mu``: pointwise minimum with the constant ``c``."""
    c = to_degree(c)
    return Distribution((s, min(c, v)) for s, v in mu.items())


def union(mu: Distribution, eta: Distribution) -> Distribution:
    """Pointwise maximum of two distributions."""
    data = dict(mu.items())
    for s, v in eta.items():
        if v > data.get(s, ZERO):
            data[s] = v
    return Distribution(data)


def meet_product(mu: Distribution, eta: Distribution, pair: Callable = lambda l, r: (l, r)) -> Distribution:
    """Distribution on pairs with degree ``min(mu(l), eta(r))``.

    ``pair`` builds the key for a pair of states; it defaults to a plain tuple.
    """
    return Distribution(
        (pair(l, r), min(a, b)) for l, a in mu.items() for r, b in eta.items()
    )


class FuzzyTransitionSystem:
    """A finite nondeterministic fuzzy-transition system ``(S, A, δ)``.

    ``delta`` maps ``(state, label)`` to an iterable of distributions (or of
    plain ``{state: degree}`` dicts).  Missing keys mean no transitions; a set
    holding the empty distribution is a different thing and is kept as such.
    Duplicate alternatives are merged with a :class:`DuplicateTransitionWarning`.
    """

    def __init__(self, states: Iterable[Hashable], labels: Iterable[Hashable],
                 delta: Mapping[tuple, Iterable] | None = None):
        self.states = tuple(states)
        self.labels = tuple(labels)
        problems = []
        if not self.states:
            problems.append("state list is empty")
        if not self.labels:
            problems.append("label list is empty")
        for kind, seq in (("state", self.states), ("label", self.labels)):
            seen = set()
            for x in seq:
                if x in seen:
                    problems.append(f"duplicate {kind} id {x!r}")
                seen.add(x)
        self.index = {s: i for i, s in enumerate(self.states)}
        label_set = set(self.labels)

        self._delta: dict[tuple, tuple[Distribution, ...]] = {}
        for (s, a), alternatives in (delta or {}).items():
            where = f"transition ({s}, {a})"
            if s not in self.index:
                problems.append(f"{where}: unknown source state {s!r}")
            if a not in label_set:
                problems.append(f"{where}: unknown label {a!r}")
            kept: dict[Distribution, None] = {}
            for alt in alternatives:
                try:
                    mu = alt if isinstance(alt, Distribution) else Distribution(alt)
                except ValueError as exc:
                    problems.append(f"{where}: {exc}")
                    continue
                for t in mu:
                    if t not in self.index:
                        problems.append(f"{where}: unknown target state {t!r}")
                if mu in kept:
                    warnings.warn(f"{where}: duplicate alternative {mu!r} merged",
                                  DuplicateTransitionWarning, stacklevel=2)
                kept[mu] = None
            if kept:
                self._delta[(s, a)] = tuple(kept)
            else:
                # an explicitly empty alternative list is the same as no entry
                self._delta.pop((s, a), None)
        if problems:
            raise ValidationError(problems)

    def transitions(self, state: Hashable, label: Hashable) -> tuple[Distribution, ...]:
        """The alternatives ``δ(state, label)``; empty tuple when there are none."""
        return self._delta.get((state, label), ())

    @property
    def delta(self) -> dict[tuple, tuple[Distribution, ...]]:
        return dict(self._delta)

    def degrees(self) -> set[Fraction]:
        """Every degree occurring anywhere in the transition function."""
        return {v for alts in self._delta.values() for mu in alts for v in mu.values()}

    def __len__(self):
        return len(self.states)

    def __eq__(self, other):
        if not isinstance(other, FuzzyTransitionSystem):
            return NotImplemented
        return (self.states == other.states and self.labels == other.labels
                and {k: frozenset(v) for k, v in self._delta.items()}
                == {k: frozenset(v) for k, v in other._delta.items()})

    __hash__ = None

    def __repr__(self):
        return (f"FuzzyTransitionSystem({len(self.states)} states, "
                f"{len(self.labels)} labels, {sum(map(len, self._delta.values()))} transitions)")


class StateMetric:
    """A ``[0, 1]``-valued distance on the states of a system.

    Stored as a dense symmetric matrix in state order.  Call it as
    ``d(s, t)``.  The constructor does not check the pseudo-ultrametric axioms;
    use :func:`validate_metric` on untrusted input.
    """

    __slots__ = ("states", "index", "_rows")

    def __init__(self, states: Iterable[Hashable], rows: Iterable[Iterable[DegreeLike]]):
        self.states = tuple(states)
        self.index = {s: i for i, s in enumerate(self.states)}
        self._rows = tuple(tuple(v if type(v) is Fraction else to_degree(v) for v in row)
                           for row in rows)

    @classmethod
    def top(cls, states: Iterable[Hashable]) -> "StateMetric":
        """The all-zero metric; the top element of the metric lattice."""
        states = tuple(states)
        return cls(states, [[ZERO] * len(states) for _ in states])

    @classmethod
    def discrete(cls, states: Iterable[Hashable]) -> "StateMetric":
        states = tuple(states)
        n = len(states)
        return cls(states, [[ZERO if i == j else ONE for j in range(n)] for i in range(n)])

    @classmethod
    def from_function(cls, states: Iterable[Hashable], f: Callable) -> "StateMetric":
        states = tuple(states)
        return cls(states, [[f(s, t) for t in states] for s in states])

    def __call__(self, s: Hashable, t: Hashable) -> Fraction:
        return self._rows[self.index[s]][self.index[t]]

    def row(self, s: Hashable) -> tuple[Fraction, ...]:
        return self._rows[self.index[s]]

    def as_matrix(self) -> list[list[Fraction]]:
        return [list(r) for r in self._rows]

    def pairs(self):
        """Yield ``(s, t, d(s, t))`` for every unordered pair with ``s`` before ``t``."""
        for i, j in itertools.combinations(range(len(self.states)), 2):
            yield self.states[i], self.states[j], self._rows[i][j]

    def leq(self, other: "StateMetric") -> bool:
        """Lattice order: ``self ⪯ other`` iff ``self(s, t) >= other(s, t)`` everywhere.

        Larger distances sit lower in the lattice, so the all-zero metric is top.
        """
        return all(a >= b for ra, rb in zip(self._rows, other._rows) for a, b in zip(ra, rb))

    def __eq__(self, other):
        if not isinstance(other, StateMetric):
            return NotImplemented
        return self.states == other.states and self._rows == other._rows

    def __hash__(self):
        return hash((self.states, self._rows))

    def __repr__(self):
        rows = "; ".join(" ".join(format_degree(v) for v in r) for r in self._rows)
        return f"StateMetric([{rows}])"


def validate_metric(matrix: Mapping | Iterable[Iterable[DegreeLike]],
                    states: Iterable[Hashable]) -> StateMetric:
    """Check P1 (zero diagonal), P2 (symmetry) and P3 (strong triangle).

    ``matrix`` is either a square nested list in ``states`` order or a mapping
    from ``(s, t)`` to a degree (missing pairs read as 0).  Returns the metric or
    raises :class:`MetricAxiomError` for the first violation found, carrying the
    offending states.
    """
    states = tuple(states)
    if isinstance(matrix, Mapping):
        rows = [[ZERO] * len(states) for _ in states]
        idx = {s: i for i, s in enumerate(states)}
        for (s, t), v in matrix.items():
            rows[idx[s]][idx[t]] = to_degree(v)
    else:
        rows = [[to_degree(v) for v in row] for row in matrix]
    n = len(states)
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ValidationError([f"matrix is not {n}x{n}"])
    for i in range(n):
        if rows[i][i] != 0:
            s = states[i]
            raise MetricAxiomError("P1", (s,), f"P1 violated: d({s}, {s}) = {format_degree(rows[i][i])}")
    for i, j in itertools.combinations(range(n), 2):
        if rows[i][j] != rows[j][i]:
            s, t = states[i], states[j]
            raise MetricAxiomError("P2", (s, t), f"P2 violated: d({s}, {t}) != d({t}, {s})")
    for i, j, k in itertools.product(range(n), repeat=3):
        if rows[i][k] > max(rows[i][j], rows[j][k]):
            s, t, u = states[i], states[j], states[k]
            raise MetricAxiomError(
                "P3", (s, t, u),
                f"P3 violated: d({s}, {u}) = {format_degree(rows[i][k])} > "
                f"max(d({s}, {t}), d({t}, {u}))")
    return StateMetric(states, rows)


def validate_system(raw: Mapping[str, Any]) -> FuzzyTransitionSystem:
    """Build a system from a plain document, collecting every problem found.

    ``raw`` has keys ``states``, ``labels`` and ``transitions``; each transition
    is ``{"from": s, "label": a, "to": {state: degree}}``.  Several records with
    the same ``(from, label)`` are nondeterministic alternatives.  Raises
    :class:`ValidationError` listing all diagnostics.
    """
    problems: list[str] = []
    states = raw.get("states")
    labels = raw.get("labels")
    if not isinstance(states, list) or not all(isinstance(s, str) for s in states):
        problems.append("'states' must be a list of strings")
        states = []
    if not isinstance(labels, list) or not all(isinstance(a, str) for a in labels):
        problems.append("'labels' must be a list of strings")
        labels = []
    for kind, seq in (("state", states), ("label", labels)):
        if not seq:
            problems.append(f"no {kind}s declared")
        dup = sorted({x for x in seq if seq.count(x) > 1})
        problems.extend(f"duplicate {kind} id {x!r}" for x in dup)
    known_states, known_labels = set(states), set(labels)

    delta: dict[tuple, list[Distribution]] = {}
    records = raw.get("transitions", [])
    if not isinstance(records, list):
        problems.append("'transitions' must be a list")
        records = []
    for n, rec in enumerate(records):
        if not isinstance(rec, Mapping):
            problems.append(f"transition #{n}: not an object")
            continue
        src, lab, to = rec.get("from"), rec.get("label"), rec.get("to", {})
        where = f"transition #{n} ({src}, {lab})"
        ok = True
        if src not in known_states:
            problems.append(f"{where}: field 'from': unknown state {src!r}")
            ok = False
        if lab not in known_labels:
            problems.append(f"{where}: field 'label': unknown label {lab!r}")
            ok = False
        if not isinstance(to, Mapping):
            problems.append(f"{where}: field 'to' must be an object")
            continue
        entries = {}
        for t, v in to.items():
            if t not in known_states:
                problems.append(f"{where}: field 'to': unknown state {t!r}")
                ok = False
                continue
            try:
                entries[t] = to_degree(v)
            except (ValueError, TypeError) as exc:
                problems.append(f"{where}: field 'to'[{t!r}]: {exc}")
                ok = False
        if ok:
            delta.setdefault((src, lab), []).append(Distribution(entries))
    if problems:
        raise ValidationError(problems)
    return FuzzyTransitionSystem(states, labels, delta)
