"""Command-line entry point: ``entsort`` / ``python -m entsort``.

Exit codes: 0 success, 1 some states failed, 2 usage error,
3 missing reference (input file or state id).
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import statistics
import sys
import time

import numpy as np

from entsort import statefile
from entsort.entanglement import entanglement_entropy, lsea_sort
from entsort.errors import StateError
from entsort.order import chain_merge_sort
from entsort.schmidt import cross_norm_check, schmidt_operator, schmidt_pure
from entsort.states import (
    PureState,
    bell_state,
    density_from_pure,
    random_entangled_state,
    random_separable,
)
from entsort.tolerances import ENV_VAR, Tolerances

EXIT_OK, EXIT_PARTIAL, EXIT_USAGE, EXIT_MISSING = 0, 1, 2, 3
KINDS = ("bell", "random", "product", "mixture")


class UsageError(Exception):
    pass


class MissingReference(Exception):
    pass


@dataclasses.dataclass(frozen=True)
class BenchRow:
    n_registers: int
    wall_time_seconds: float
    query_count: int | None = None


def generate_states(kind: str, d: int, count: int, seed: int = 0, density: bool = False):
    """Deterministic ``(id, state)`` ensemble; Bell-type kinds cycle through (p, q)."""
    if kind not in KINDS:
        raise UsageError(f"unknown kind {kind!r}; choose from {', '.join(KINDS)}")
    if d < 2:
        raise UsageError("--d must be at least 2")
    if count < 0:
        raise UsageError("--count must be nonnegative")
    items = []
    for k in range(count):
        p, q = (k // d) % d, k % d
        if kind == "bell":
            state = bell_state(d, p, q)
        elif kind == "random":
            state = random_entangled_state(d, p, q, seed=[seed, k])
        elif kind == "product":
            amp = np.zeros(d * d, dtype=np.complex128)
            amp[p * d + q] = 1.0
            state = PureState(d, d, amp)
        else:
            state = random_separable(d, d, seed=[seed, k])
        if density and isinstance(state, PureState):
            state = density_from_pure(state)
        items.append((f"{kind}-{k}", state))
    return items


def run_bench(mode: str, sizes, d: int = 2, seed: int = 0, repeats: int = 3, tol: Tolerances | None = None):
    """Time sorting of ``n`` seeded random registers for each ``n`` in ``sizes``.

    Generation is excluded from the timing; each row carries the median of
    ``repeats`` isolated measurements.
    """
    tol = tol or Tolerances()
    sizes = list(sizes)
    if not sizes or sizes != sorted(sizes) or sizes[0] < 1:
        raise UsageError("--sizes must be a nonempty ascending list of positive integers")
    if mode not in ("linear", "poset"):
        raise UsageError("--mode must be 'linear' or 'poset'")
    rows = []
    for n in sizes:
        states = [random_entangled_state(d, (k // d) % d, k % d, seed=[seed, n, k]) for k in range(n)]
        times, queries = [], None
        for _ in range(max(repeats, 1)):
            t0 = time.perf_counter()
            if mode == "linear":
                lsea_sort(states)
            else:
                queries = chain_merge_sort(states, tol=tol.T_MAJ, rank_tol=tol.T_RANK).query_count
            times.append(time.perf_counter() - t0)
        rows.append(BenchRow(n, statistics.median(times), queries))
    return rows


def _fmt(x: float) -> str:
    return repr(float(x))


def _read_states(path, strict=False):
    try:
        return statefile.load(path, strict=strict)
    except FileNotFoundError as exc:
        raise MissingReference(f"input file not found: {path}") from exc
    except statefile.StateFileError as exc:
        raise UsageError(str(exc)) from exc


def _emit(text: str, output):
    if output:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report_errors(errors):
    for sid, msg in errors:
        print(f"error: {sid}: {msg}", file=sys.stderr)


def cmd_generate(args, tol) -> int:
    items = generate_states(args.kind, args.d, args.count, args.seed, args.density)
    _emit(statefile.dumps(items), args.output)
    return EXIT_OK


def schmidt_report(sid: str, state, tol: Tolerances) -> dict:
    if isinstance(state, PureState):
        dec = schmidt_pure(state, tol.T_RANK)
        report = {"id": sid, "kind": "pure", "rank": dec.rank}
    else:
        dec = schmidt_operator(state, rank_tol=tol.T_RANK)
        report = {"id": sid, "kind": "density", "rank": dec.rank}
    report["coefficients"] = [float(x) for x in dec.coefficients]
    report["coefficient_sum"] = float(np.sum(dec.coefficients))
    if isinstance(state, PureState):
        report["entropy"] = entanglement_entropy(state)
    else:
        report["cross_norm"] = cross_norm_check(dec, tol.T_CROSS).value
        report["factors_positive"] = dec.factors_positive()
    return report


def cmd_schmidt(args, tol) -> int:
    states, errors = _read_states(args.input)
    lookup = dict(states)
    if args.id not in lookup:
        if args.id in dict(errors):
            raise UsageError(f"state {args.id!r} is invalid: {dict(errors)[args.id]}")
        raise MissingReference(f"no state with id {args.id!r}")
    report = schmidt_report(args.id, lookup[args.id], tol)
    if args.format == "json":
        _emit(json.dumps(report) + "\n", args.output)
        return EXIT_OK
    lines = [f"id: {report['id']}", f"kind: {report['kind']}", f"rank: {report['rank']}",
             "coefficients: " + " ".join(_fmt(x) for x in report["coefficients"]),
             f"coefficient_sum: {_fmt(report['coefficient_sum'])}"]
    if "entropy" in report:
        lines.append(f"entropy: {_fmt(report['entropy'])}")
    else:
        lines.append(f"cross_norm: {report['cross_norm']}")
        lines.append(f"factors_positive: {report['factors_positive']}")
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_sort_linear(args, tol) -> int:
    states, errors = _read_states(args.input)
    records = []
    while states:
        try:
            records = lsea_sort([s for _, s in states], ids=[sid for sid, _ in states])
            break
        except StateError as exc:
            sid, _ = states.pop(exc.index)
            errors.append((sid, str(exc.cause)))
    _report_errors(errors)
    if args.format == "json":
        text = json.dumps([{"id": r.state_id, "entropy": r.entropy} for r in records]) + "\n"
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["id", "entropy"])
        w.writerows([r.state_id, _fmt(r.entropy)] for r in records)
        text = buf.getvalue()
    else:
        text = "".join(f"{r.state_id}\t{_fmt(r.entropy)}\n" for r in records)
    _emit(text, args.output)
    return EXIT_PARTIAL if errors else EXIT_OK


def poset_report(result) -> dict:
    buckets = []
    for bucket, idx in zip(result.buckets, result.indexes):
        where = {sid: i for i, sid in enumerate(bucket.members)}
        buckets.append({
            "rank": bucket.rank,
            "members": list(bucket.members),
            "chains": [list(c) for c in idx.chains],
            "dominance": [
                {"id": sid, "chain": c, "position": pos}
                for (sid, c), pos in sorted(idx.dominance.items(), key=lambda kv: (where[kv[0][0]], kv[0][1]))
            ],
        })
    return {"buckets": buckets, "query_count": result.query_count}


def cmd_sort_poset(args, tol) -> int:
    states, errors = _read_states(args.input)
    _report_errors(errors)
    if states:
        result = chain_merge_sort([s for _, s in states], ids=[sid for sid, _ in states],
                                  shuffle_seed=args.shuffle_seed, tol=tol.T_MAJ, rank_tol=tol.T_RANK)
        report = poset_report(result)
    else:
        report = {"buckets": [], "query_count": 0}
    if args.format == "json":
        text = json.dumps(report) + "\n"
    else:
        lines = ["# order: no-less-entangled precedes (higher rank first; majorized before majorizing)"]
        for b in report["buckets"]:
            lines.append(f"bucket rank={b['rank']} members={len(b['members'])} chains={len(b['chains'])}")
            for c, chain in enumerate(b["chains"]):
                lines.append(f"  chain {c}: " + " < ".join(chain))
        lines.append(f"queries: {report['query_count']}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return EXIT_PARTIAL if errors else EXIT_OK


def bench_csv(rows, mode: str) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    header = ["n_registers", "wall_time_seconds"] + (["query_count"] if mode == "poset" else [])
    w.writerow(header)
    for r in rows:
        w.writerow([r.n_registers, f"{r.wall_time_seconds:.9f}"] + ([r.query_count] if mode == "poset" else []))
    return buf.getvalue()


def _sizes(text: str):
    try:
        return [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size list {text!r}")


def cmd_bench(args, tol) -> int:
    rows = run_bench(args.mode, args.sizes, args.d, args.seed, args.repeats, tol)
    _emit(bench_csv(rows, args.mode), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entsort",
        description="Order bipartite quantum states by entanglement.",
        epilog=f"Tolerances may be overridden via {ENV_VAR}='T_MAJ=1e-8,T_RANK=1e-9'.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=("text", "json")):
        p.add_argument("--output", help="write here instead of stdout")
        p.add_argument("--format", choices=formats, default="text")

    p = sub.add_parser("generate", help="write a seeded state ensemble")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--d", type=int, default=2, help="local dimension of both subsystems")
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--density", action="store_true", help="emit pure states as density matrices")
    p.add_argument("--output")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("schmidt", help="Schmidt decomposition of one state")
    p.add_argument("--input", required=True)
    p.add_argument("--id", required=True)
    common(p)
    p.set_defaults(func=cmd_schmidt)

    p = sub.add_parser("sort-linear", help="sort by entanglement entropy")
    p.add_argument("--input", required=True)
    common(p, ("text", "json", "csv"))
    p.set_defaults(func=cmd_sort_linear)

    p = sub.add_parser("sort-poset", help="partial sort by Schmidt rank and majorization")
    p.add_argument("--input", required=True)
    p.add_argument("--shuffle-seed", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_sort_poset)

    p = sub.add_parser("bench", help="time sorting of random registers (CSV)")
    p.add_argument("--mode", choices=("linear", "poset"), default="linear")
    p.add_argument("--sizes", type=_sizes, default=[10, 100, 1000])
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--output")
    p.add_argument("--format", choices=("csv",), default="csv")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        try:
            tol = Tolerances.from_env()
        except ValueError as exc:
            raise UsageError(f"{ENV_VAR}: {exc}") from exc
        return args.func(args, tol)
    except UsageError as exc:
        print(f"entsort: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except StateError as exc:
        print(f"entsort: error: {exc}", file=sys.stderr)
        return EXIT_PARTIAL
    except MissingReference as exc:
        print(f"entsort: error: {exc}", file=sys.stderr)
        return EXIT_MISSING


if __name__ == "__main__":
    sys.exit(main())
