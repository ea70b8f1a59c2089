"""JSON documents for systems and metrics, and text renderings of results."""

from __future__ import annotations

import json
from collections.abc import Mapping
from decimal import Decimal
from pathlib import Path
from typing import Any

from .model import (Distribution, FuzzyTransitionSystem, StateMetric, ValidationError,
                    format_degree, to_degree, validate_metric, validate_system)


class DocumentError(ValidationError):
    pass


def read_document(path: str | Path) -> dict[str, Any]:
    """Load a JSON document, keeping numeric literals exact."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError([f"{path}: {exc.strerror or exc}"]) from exc
    try:
        doc = json.loads(text, parse_float=Decimal)
    except json.JSONDecodeError as exc:
        raise DocumentError([f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}"]) from exc
    if not isinstance(doc, dict):
        raise DocumentError([f"{path}: top level must be a JSON object"])
    return doc


def parse_system(path: str | Path) -> FuzzyTransitionSystem:
    return validate_system(read_document(path))


def named_distributions(doc: Mapping[str, Any], fts: FuzzyTransitionSystem) -> dict[str, Distribution]:
    """The optional ``"distributions"`` section: ``{name: {state: degree}}``."""
    out, problems = {}, []
    for name, entries in (doc.get("distributions") or {}).items():
        if not isinstance(entries, Mapping):
            problems.append(f"distribution {name!r}: must be an object")
            continue
        for s in entries:
            if s not in fts.index:
                problems.append(f"distribution {name!r}: unknown state {s!r}")
        try:
            out[name] = Distribution(entries)
        except (ValueError, TypeError) as exc:
            problems.append(f"distribution {name!r}: {exc}")
    if problems:
        raise ValidationError(problems)
    return out


def system_to_document(fts: FuzzyTransitionSystem) -> dict[str, Any]:
    """Inverse of :func:`validate_system`; state and label ids are stringified."""
    transitions = []
    for s in fts.states:
        for a in fts.labels:
            for mu in fts.transitions(s, a):
                to = {str(t): format_degree(mu(t)) for t in fts.states if t in mu}
                transitions.append({"from": str(s), "label": str(a), "to": to})
    return {
        "states": [str(s) for s in fts.states],
        "labels": [str(a) for a in fts.labels],
        "transitions": transitions,
    }


def dump_system(fts: FuzzyTransitionSystem) -> str:
    return json.dumps(system_to_document(fts), indent=2) + "\n"


def metric_from_document(doc: Mapping[str, Any], states=None) -> StateMetric:
    """Metric file: ``{"states": [...], "distances": [[s, t, "0.5"], ...]}``.

    Each triple sets both ``d(s, t)`` and ``d(t, s)``; unlisted pairs are 0.
    If ``states`` is given, the file must declare exactly those states.
    """
    declared = doc.get("states")
    if not isinstance(declared, list):
        raise DocumentError(["metric: 'states' must be a list"])
    if states is not None and set(declared) != set(states):
        raise DocumentError(["metric: state list does not match the system"])
    order = list(states) if states is not None else declared
    values, problems = {}, []
    for n, triple in enumerate(doc.get("distances", [])):
        if not isinstance(triple, list) or len(triple) != 3:
            problems.append(f"metric entry #{n}: expected [state, state, degree]")
            continue
        s, t, v = triple
        if s not in order or t not in order:
            problems.append(f"metric entry #{n}: unknown state in ({s}, {t})")
            continue
        try:
            deg = to_degree(v)
        except (ValueError, TypeError) as exc:
            problems.append(f"metric entry #{n}: {exc}")
            continue
        for key in ((s, t), (t, s)):
            if key in values and values[key] != deg:
                problems.append(f"metric entry #{n}: conflicting value for ({s}, {t})")
            values[key] = deg
    if problems:
        raise DocumentError(problems)
    return validate_metric(values, order)


def parse_metric(path: str | Path, states=None) -> StateMetric:
    return metric_from_document(read_document(path), states)


def render_matrix_tsv(states, value) -> str:
    """Full square matrix, header row first, ``value(s, t)`` rendered exactly."""
    names = [str(s) for s in states]
    lines = ["\t" + "\t".join(names)]
    for s, name in zip(states, names):
        lines.append(name + "\t" + "\t".join(format_degree(value(s, t)) for t in states))
    return "\n".join(lines) + "\n"


def matrix_to_json(states, value) -> list[list[str]]:
    return [[format_degree(value(s, t)) for t in states] for s in states]


def render_partition(partition) -> str:
    return "".join("{" + ", ".join(map(str, block)) + "}\n" for block in partition.blocks)
