"""Command-line driver: mutate, mgs, verify, walls.

JSON problem files in, JSON or aligned text out. Exit codes: 0 for success
(and for a verified report), 1 for a negative or partial verdict, 2 for
invalid input. Output depends only on (file, seed, budget), so identical runs
produce identical bytes.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Optional, Sequence

from . import bounds, exchange, fho
from . import io as gio
from . import walls as walls_mod
from .errors import (
    GenericityError,
    InvalidQuiverError,
    NonStringAlgebraError,
    SearchBudgetExceeded,
    UnsupportedPotentialError,
)
from .rep import string_catalog

_VALIDATION_ERRORS = (
    InvalidQuiverError,
    NonStringAlgebraError,
    UnsupportedPotentialError,
    ValueError,
    KeyError,
)


def _parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="greenseq",
        description="Maximal green sequences: mutation, enumeration, verification, walls.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("file", help="problem file (JSON)")
        p.add_argument("--field-prime", type=int, default=None, help="override the field prime")
        p.add_argument("--budget", type=int, default=None, help="override the search budget")
        p.add_argument("--seed", type=int, default=None, help="override the RNG seed")
        p.add_argument("--format", choices=("json", "text"), default="text")
        p.add_argument("--retries", type=int, default=50, help="genericity retry cap")

    p = sub.add_parser("mutate", help="print the exchange-matrix chain of a mutation sequence")
    common(p)
    p.add_argument("sequence", nargs="*", type=int, help="vertex labels to mutate at, in order")

    p = sub.add_parser("mgs", help="enumerate or summarize maximal green sequences")
    common(p)
    p.add_argument(
        "action",
        nargs="?",
        choices=("enumerate", "extrema", "classes"),
        default="enumerate",
    )
    p.add_argument(
        "--construct-max",
        action="store_true",
        help="build a longest sequence from the best cut instead of enumerating",
    )

    p = sub.add_parser("verify", help="check the three descriptions against each other")
    common(p)

    p = sub.add_parser("walls", help="wall-crossing report for one or more green paths")
    common(p)
    p.add_argument("--base", default=None, help="comma-separated rational coordinates, e.g. 1/2,-3,4")
    p.add_argument("--random", type=int, default=None, metavar="N", help="sample N generic bases")
    return top


def _load(args) -> gio.ProblemFile:
    with open(args.file, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError("problem file must be a JSON object")
    if args.field_prime is not None:
        data["field_prime"] = args.field_prime
    if args.budget is not None:
        data["search_budget"] = args.budget
    if args.seed is not None:
        data["rng_seed"] = args.seed
    return gio.problem_from_json(data)


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _matrix_text(rows: Sequence[Sequence[int]]) -> str:
    width = max(len(str(x)) for row in rows for x in row)
    return "\n".join(" ".join(str(x).rjust(width) for x in row) for row in rows)


def _vertex_labels(quiver, indices: Sequence[int]) -> list[int]:
    return [quiver.vertices[k] for k in indices]


def cmd_mutate(args, problem: gio.ProblemFile) -> int:
    quiver = problem.qp.quiver
    for pos, v in enumerate(args.sequence, start=1):
        if v not in quiver.vertices:
            print(
                f"error: sequence position {pos}: {v} is not a vertex of the quiver",
                file=sys.stderr,
            )
            return 2
    m = exchange.initial_seed(quiver)
    steps = [{"mutation": None, "matrix": [list(r) for r in m.rows()]}]
    blocks = ["initial seed\n" + _matrix_text(m.rows())]
    for pos, v in enumerate(args.sequence, start=1):
        m = exchange.mutate(m, quiver.pos(v))
        steps.append({"mutation": v, "matrix": [list(r) for r in m.rows()]})
        blocks.append(f"step {pos}: mutate at {v}\n" + _matrix_text(m.rows()))
    _emit(args, {"steps": steps}, "\n\n".join(blocks))
    return 0


def _sequence_json(quiver, s: exchange.GreenSequence) -> dict:
    out = s.to_json()
    out["vertices"] = _vertex_labels(quiver, s.mutation_indices)
    return out


def cmd_mgs(args, problem: gio.ProblemFile) -> int:
    quiver = problem.qp.quiver
    seed = exchange.initial_seed(quiver)
    if args.construct_max:
        return _construct_max(args, problem, seed)
    try:
        seqs = exchange.enumerate_green_sequences(
            seed, maximal_only=True, budget=problem.search_budget
        )
        partial = False
    except SearchBudgetExceeded as e:
        seqs = list(e.partial or [])
        partial = True
    if args.action == "extrema":
        lengths = sorted(len(s) for s in seqs)
        payload = {
            "partial": partial,
            "min": lengths[0] if lengths else None,
            "max": lengths[-1] if lengths else None,
            "count": len(seqs),
        }
        text = (
            f"maximal green sequences: {len(seqs)}"
            + (" (partial)" if partial else "")
            + f"\nmin length {payload['min']}\nmax length {payload['max']}"
        )
    elif args.action == "classes":
        classes = exchange.equivalence_classes(seqs)
        rows = sorted(
            (len(members[0]), key, len(members))
            for key, members in classes.items()
        )
        payload = {
            "partial": partial,
            "class_count": len(rows),
            "classes": [
                {
                    "length": length,
                    "size": size,
                    "c_vector_multiset": [list(v) for v in key],
                }
                for length, key, size in rows
            ],
        }
        lines = [f"equivalence classes: {len(rows)}" + (" (partial)" if partial else "")]
        for length, key, size in rows:
            lines.append(
                f"length {length}  members {size}  c-vectors "
                + " ".join(str(tuple(v)) for v in key)
            )
        text = "\n".join(lines)
    else:
        payload = {
            "partial": partial,
            "count": len(seqs),
            "sequences": [_sequence_json(quiver, s) for s in seqs],
        }
        lines = [f"maximal green sequences: {len(seqs)}" + (" (partial)" if partial else "")]
        for s in seqs:
            lines.append(
                "("
                + ",".join(str(v) for v in _vertex_labels(quiver, s.mutation_indices))
                + ")  c-vectors "
                + " ".join(str(tuple(v)) for v in s.c_vectors)
            )
        text = "\n".join(lines)
    _emit(args, payload, text)
    return 1 if partial else 0


def _construct_max(args, problem: gio.ProblemFile, seed) -> int:
    quiver = problem.qp.quiver
    catalog = string_catalog(problem.algebra(), budget=problem.search_budget)
    best = None
    best_cut = None
    for cut in bounds.cuts(problem.qp):
        seq = bounds.construct_max_sequence(cut, catalog)
        if seq is None or not fho.is_maximal_fho(seq.modules, catalog):
            continue
        if best is None or len(seq) > len(best):
            best, best_cut = seq, cut
    if best is None:
        print("error: no cut carries a maximal sequence", file=sys.stderr)
        return 1
    gs, final = exchange.replay_c_vector_sequence(
        seed, [m.dims for m in best.modules]
    )
    maximal = not any(exchange.is_green(final, k) for k in range(final.n))
    payload = {
        "from_cut": sorted(best_cut.deleted_arrows),
        "length": len(gs),
        "maximal": maximal,
        "vertices": _vertex_labels(quiver, gs.mutation_indices),
        "c_vectors": [list(v) for v in gs.c_vectors],
        "labels": [m.label for m in best.modules],
    }
    text = (
        f"cut deleting {{{', '.join(sorted(best_cut.deleted_arrows))}}} "
        f"carries a length-{len(gs)} sequence\n"
        + "mutations: "
        + ",".join(str(v) for v in payload["vertices"])
        + "\nmaximal: "
        + str(maximal).lower()
    )
    _emit(args, payload, text)
    return 0 if maximal else 1


def cmd_verify(args, problem: gio.ProblemFile) -> int:
    catalog = string_catalog(problem.algebra(), budget=problem.search_budget)
    report = fho.verify_theorem1(
        problem.qp,
        catalog,
        budget=problem.search_budget,
        rng_seed=problem.rng_seed,
    )
    lines = [
        "three-way agreement: " + ("pass" if report["equal"] else "FAIL"),
        f"green sequences {report['mgs_count']}, hom-orthogonal sequences {report['fho_count']}, "
        f"wall sequences {report['wall_realized_count']}",
        f"extremal lengths {tuple(report['extremal_lengths'])}",
        f"realized via random walk {report['realized_via']['random']}, "
        f"directed search {report['realized_via']['directed']}",
    ]
    for w in report["witnesses"]:
        lines.append("witness: " + json.dumps(w, sort_keys=True))
    _emit(args, report, "\n".join(lines))
    return 0 if report["equal"] else 1


def _crossings_text(records) -> list[str]:
    lines = []
    for r in records:
        lines.append(
            f"t={r.time}  {r.module.label or r.module.dims}  dims {tuple(r.dims)}"
        )
    return lines


def cmd_walls(args, problem: gio.ProblemFile) -> int:
    if (args.base is None) == (args.random is None):
        print("error: give exactly one of --base or --random N", file=sys.stderr)
        return 2
    catalog = string_catalog(problem.algebra(), budget=problem.search_budget)
    if args.base is not None:
        coords = [gio.fraction_from_str(part) for part in args.base.split(",")]
        if len(coords) != problem.qp.quiver.n:
            print(
                f"error: base has {len(coords)} coordinates, quiver has {problem.qp.quiver.n}",
                file=sys.stderr,
            )
            return 2
        try:
            records = walls_mod.crossing_sequence(tuple(coords), catalog)
        except GenericityError as e:
            print(f"error: degenerate base: {e}", file=sys.stderr)
            return 2
        payload = {
            "base": [gio.fraction_to_str(c) for c in coords],
            "crossings": walls_mod.crossings_to_json(records),
        }
        text = "\n".join(
            ["base " + ",".join(gio.fraction_to_str(c) for c in coords)]
            + _crossings_text(records)
        )
        _emit(args, payload, text)
        return 0
    rng = random.Random(problem.rng_seed)
    reports = []
    for _ in range(args.random):
        try:
            base, records = walls_mod.random_generic_base(
                catalog, rng, retries=args.retries
            )
        except GenericityError as e:
            print(f"error: retry cap exceeded: {e}", file=sys.stderr)
            return 1
        reports.append((base, records))
    payload = {
        "bases": [
            {
                "base": [gio.fraction_to_str(c) for c in base],
                "crossings": walls_mod.crossings_to_json(records),
            }
            for base, records in reports
        ]
    }
    blocks = []
    for base, records in reports:
        blocks.append(
            "\n".join(
                ["base " + ",".join(gio.fraction_to_str(c) for c in base)]
                + _crossings_text(records)
            )
        )
    _emit(args, payload, "\n\n".join(blocks))
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _parser().parse_args(argv)
    try:
        problem = _load(args)
    except (OSError, json.JSONDecodeError) as e:
        print(f"error: cannot read problem file: {e}", file=sys.stderr)
        return 2
    except _VALIDATION_ERRORS as e:
        print(f"error: invalid problem file: {e}", file=sys.stderr)
        return 2
    handler = {
        "mutate": cmd_mutate,
        "mgs": cmd_mgs,
        "verify": cmd_verify,
        "walls": cmd_walls,
    }[args.command]
    try:
        return handler(args, problem)
    except _VALIDATION_ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except SearchBudgetExceeded as e:
        print(f"error: search budget exceeded: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
