"""Command-line interface.

Exit status: 0 on success, 1 for invalid input or domain errors, 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path

from . import compose, fixpoint, io
from .lifting import lifted_distance
from .model import ValidationError, format_degree


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ftsmetric",
                                description="Behavioral distances for fuzzy-transition systems.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("validate", help="check a system document")
    c.add_argument("file")

    c = sub.add_parser("distance", help="behavioral distance matrix")
    c.add_argument("file")
    c.add_argument("--format", choices=("tsv", "json"), default="tsv")
    c.add_argument("--trace", action="store_true", help="also print every iterate")

    c = sub.add_parser("quotient", help="blocks of states within distance LAMBDA")
    c.add_argument("file")
    c.add_argument("--lambda", dest="lam", required=True)

    c = sub.add_parser("bisim", help="decide bisimilarity of two states")
    c.add_argument("file")
    c.add_argument("s")
    c.add_argument("t")

    c = sub.add_parser("similar", help="similarity matrix 1 - d_f")
    c.add_argument("file")
    c.add_argument("--format", choices=("tsv", "json"), default="tsv")

    c = sub.add_parser("compose", help="parallel composition or product of a system with itself")
    c.add_argument("file")
    c.add_argument("--op", choices=(compose.PARALLEL, compose.PRODUCT), required=True)
    c.add_argument("--out")
    c.add_argument("--from", dest="start", nargs=2, metavar=("S1", "S2"),
                   help="only build pairs reachable from S1|S2")

    c = sub.add_parser("lift", help="lifted distance between two named distributions")
    c.add_argument("file")
    c.add_argument("--mu", required=True)
    c.add_argument("--eta", required=True)
    c.add_argument("--metric", required=True)
    return p


def _matrix(args, states, value, out):
    if args.format == "json":
        json.dump({"states": [str(s) for s in states], "matrix": io.matrix_to_json(states, value)},
                  out, indent=2)
        out.write("\n")
    else:
        out.write(io.render_matrix_tsv(states, value))


def _require_state(fts, s):
    if s not in fts.index:
        raise ValidationError([f"unknown state {s!r}"])


def _dispatch(args, out) -> int:
    if args.command == "validate":
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            fts = io.parse_system(args.file)
        for w in caught:
            out.write(f"warning: {w.message}\n")
        n = sum(len(v) for v in fts.delta.values())
        out.write(f"ok: {len(fts.states)} states, {len(fts.labels)} labels, {n} transitions\n")
        return 0

    if args.command == "lift":
        doc = io.read_document(args.file)
        fts = io.validate_system(doc)
        named = io.named_distributions(doc, fts)
        for name in (args.mu, args.eta):
            if name not in named:
                raise ValidationError([f"no distribution named {name!r}"])
        d = io.parse_metric(args.metric, fts.states)
        out.write(format_degree(lifted_distance(d, named[args.mu], named[args.eta])) + "\n")
        return 0

    fts = io.parse_system(args.file)

    if args.command == "distance":
        trace = fixpoint.fixpoint_iteration(fts)
        d = trace.metric
        if not args.trace:
            _matrix(args, fts.states, d, out)
        elif args.format == "json":
            json.dump({"states": [str(s) for s in fts.states],
                       "iterates": [io.matrix_to_json(fts.states, it) for it in trace.iterates],
                       "applications": trace.applications,
                       "matrix": io.matrix_to_json(fts.states, d)}, out, indent=2)
            out.write("\n")
        else:
            for n, it in enumerate(trace.iterates):
                out.write(f"# d{n}\n")
                out.write(io.render_matrix_tsv(fts.states, it))
            out.write(f"# applications: {trace.applications}\n")
        return 0

    if args.command == "quotient":
        try:
            lam = io.to_degree(args.lam)
        except ValueError as exc:
            raise ValidationError([f"--lambda: {exc}"]) from exc
        out.write(io.render_partition(fixpoint.quotient(fts, lam)))
        return 0

    if args.command == "bisim":
        _require_state(fts, args.s)
        _require_state(fts, args.t)
        d = fixpoint.behavioral_distance(fts)
        verdict = "bisimilar" if fixpoint.greatest_bisimulation(fts).same_block(args.s, args.t) \
            else "not-bisimilar"
        out.write(f"{verdict}\td_f({args.s}, {args.t}) = {format_degree(d(args.s, args.t))}\n")
        return 0

    if args.command == "similar":
        sim = fixpoint.similarity(fts)
        _matrix(args, fts.states, lambda s, t: sim[s, t], out)
        return 0

    if args.command == "compose":
        if args.start:
            for s in args.start:
                _require_state(fts, s)
        op = compose.parallel if args.op == compose.PARALLEL else compose.product
        text = io.dump_system(op(fts, tuple(args.start) if args.start else None))
        if args.out:
            Path(args.out).write_text(text, encoding="utf-8")
        else:
            out.write(text)
        return 0

    raise AssertionError(args.command)


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _dispatch(args, out)
    except ValidationError as exc:
        for line in exc.diagnostics:
            err.write(f"error: {line}\n")
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
