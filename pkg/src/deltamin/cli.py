"""Batch command-line front end.

Subcommands: solve, verify, analyze, generate, suite.  Graphs stream in as
graph6 lines (or a single edge-list file), reports stream out as JSON lines;
solve also offers CSV and DOT.  Input "-" reads standard input.  The env
var DELTAMIN_LOG sets log verbosity (DEBUG, INFO, ...).

All records are emitted in input order with sorted keys, so output is
byte-stable for a fixed (input, config, seed).
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional, TextIO

from . import graphs as graphlib
from .colouring import Colour, ColouringKind, EdgeColouring, properize
from .errors import DeltaMinError, GraphFormatError
from .graphs import Graph, emit_graph6, enumerate_cubic, make_named, parse_edge_list, parse_graph6, random_subcubic
from .solver import (
    Method,
    enumerate_two_factors,
    heuristic_descent,
    resistance_exact,
    solve_exact,
)
from .structure import classify_delta_edges, parity_signature, verify_theorem1

log = logging.getLogger("deltamin")

DEFAULT_EXACT_LIMIT = 14


@dataclass
class RunConfig:
    command: str
    input_path: Optional[str] = None
    format: str = "graph6"
    output: str = "json"
    exact_limit: int = DEFAULT_EXACT_LIMIT
    seed: int = 0
    jobs: int = 1

    def __post_init__(self) -> None:
        if self.exact_limit < 4:
            raise ValueError("--exact-limit must be at least 4")
        if self.jobs < 1:
            raise ValueError("--jobs must be at least 1")


# ---------------------------------------------------------------------------
# input handling


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_graphs(cfg: RunConfig) -> list[tuple[int, str]]:
    """Raw per-graph payloads: (index, text).  graph6 inputs hold one graph
    per non-blank line; an edge-list file holds a single graph."""
    text = _read_text(cfg.input_path or "-")
    if cfg.format == "graph6":
        return [(i, line) for i, line in enumerate(
            ln for ln in text.splitlines() if ln.strip()
        )]
    return [(0, text)]


def _parse_payload(payload: str, fmt: str) -> Graph:
    if fmt == "graph6":
        return parse_graph6(payload)
    return parse_edge_list(payload)


# ---------------------------------------------------------------------------
# solve


def _solve_one(task: tuple[int, str, str, int, int]) -> dict:
    index, payload, fmt, exact_limit, seed = task
    try:
        g = _parse_payload(payload, fmt)
    except GraphFormatError as exc:
        return {"index": index, "error": str(exc), "offset": exc.offset}
    except DeltaMinError as exc:
        return {"index": index, "error": str(exc), "offset": None}
    if g.vertex_count <= exact_limit:
        result = solve_exact(g)
    else:
        result = heuristic_descent(g, seed=seed)
    return {
        "index": index,
        "n": g.vertex_count,
        "m": g.edge_count,
        "s": result.s_value,
        "method": result.method.value,
        "colours": [c.value for c in result.witness.colours],
    }


def _records_for(cfg: RunConfig, payloads: list[tuple[int, str]]) -> list[dict]:
    tasks = [(i, p, cfg.format, cfg.exact_limit, cfg.seed) for i, p in payloads]
    if cfg.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            return list(pool.map(_solve_one, tasks))
    return [_solve_one(t) for t in tasks]


_DOT_EDGE_STYLE = {
    "a": 'color="#1b9e77"',
    "b": 'color="#7570b3"',
    "g": 'color="#66a61e"',
    "d": 'color="#d95f02",style=bold,penwidth=3',
}


def _emit_dot(record: dict, payload: str, cfg: RunConfig, out: TextIO) -> None:
    g = _parse_payload(payload, cfg.format)
    colours = record.get("colours")
    out.write(f'graph g{record["index"]} {{\n')
    out.write(f'  // n={record["n"]} m={record["m"]} s={record["s"]} method={record["method"]}\n')
    for eid, (u, v) in enumerate(g.edges):
        style = _DOT_EDGE_STYLE[colours[eid]] if colours else ""
        suffix = f" [{style}]" if style else ""
        out.write(f"  {u} -- {v}{suffix};\n")
    out.write("}\n")


def _write_records(cfg: RunConfig, records: list[dict], payloads: list[tuple[int, str]], out: TextIO) -> None:
    if cfg.output == "json":
        for rec in records:
            out.write(json.dumps(rec, sort_keys=True, separators=(",", ":")) + "\n")
        return
    if cfg.output == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["name", "n", "m", "s", "method"])
        for rec in records:
            if "error" in rec:
                continue
            writer.writerow([f'g{rec["index"]}', rec["n"], rec["m"], rec["s"], rec["method"]])
        return
    by_index = dict(payloads)
    for rec in records:
        if "error" in rec:
            continue
        _emit_dot(rec, by_index[rec["index"]], cfg, out)


def cmd_solve(cfg: RunConfig, out: Optional[TextIO] = None) -> int:
    out = out if out is not None else sys.stdout
    payloads = _load_graphs(cfg)
    records = _records_for(cfg, payloads)
    _write_records(cfg, records, payloads, out)
    failures = [r for r in records if "error" in r]
    for rec in failures:
        log.error("graph %d: %s", rec["index"], rec["error"])
    return 1 if failures else 0


# ---------------------------------------------------------------------------
# verify


def cmd_verify(cfg: RunConfig, colouring_path: str, out: Optional[TextIO] = None) -> int:
    out = out if out is not None else sys.stdout
    payloads = _load_graphs(cfg)
    colour_lines = [
        ln for ln in _read_text(colouring_path).splitlines() if ln.strip()
    ]
    status = 0
    for pos, (index, payload) in enumerate(payloads):
        try:
            g = _parse_payload(payload, cfg.format)
            if pos >= len(colour_lines):
                raise DeltaMinError("no colouring line for this graph")
            colouring = EdgeColouring.from_json(g, colour_lines[pos])
            report = verify_theorem1(colouring)
        except DeltaMinError as exc:
            out.write(json.dumps(
                {"index": index, "error": str(exc)}, sort_keys=True, separators=(",", ":")
            ) + "\n")
            status = 1
            continue
        payload_out = json.loads(report.to_json())
        payload_out["index"] = index
        out.write(json.dumps(payload_out, sort_keys=True, separators=(",", ":")) + "\n")
        if not report.all_pass:
            status = 1
    return status


# ---------------------------------------------------------------------------
# analyze


def cmd_analyze(cfg: RunConfig, out: Optional[TextIO] = None) -> int:
    """Solve, verify the witness, and report parity in one record per graph."""
    out = out if out is not None else sys.stdout
    payloads = _load_graphs(cfg)
    status = 0
    for index, payload in payloads:
        try:
            g = _parse_payload(payload, cfg.format)
        except DeltaMinError as exc:
            out.write(json.dumps(
                {"index": index, "error": str(exc)}, sort_keys=True, separators=(",", ":")
            ) + "\n")
            status = 1
            continue
        rec = _solve_one((index, payload, cfg.format, cfg.exact_limit, cfg.seed))
        g_colours = [Colour.from_code(c) for c in rec["colours"]]
        witness = EdgeColouring(g, g_colours)
        report = verify_theorem1(witness)
        parity = None
        if g.is_cubic() and rec["method"] == Method.EXACT.value and rec["s"] > 0:
            sig = parity_signature(classify_delta_edges(witness))
            parity = {"counts": list(sig.counts), "parity_ok": sig.parity_ok}
        rec["verification"] = json.loads(report.to_json())
        rec["parity"] = parity
        out.write(json.dumps(rec, sort_keys=True, separators=(",", ":")) + "\n")
        if not report.all_pass:
            status = 1
    return status


# ---------------------------------------------------------------------------
# generate


def cmd_generate(args: argparse.Namespace, out: Optional[TextIO] = None) -> int:
    out = out if out is not None else sys.stdout
    emitted: Iterable[Graph]
    try:
        if args.named is not None:
            emitted = [make_named(args.named, args.size)]
        elif args.cubic is not None:
            emitted = list(enumerate_cubic(args.cubic))
        else:
            rng = random.Random(f"generate:{args.seed}")
            emitted = [
                random_subcubic(args.random, rng.randrange(2**31))
                for _ in range(args.count)
            ]
    except DeltaMinError as exc:
        print(f"deltamin generate: {exc}", file=sys.stderr)
        return 2
    for g in emitted:
        out.write(emit_graph6(g) + "\n")
    return 0


# ---------------------------------------------------------------------------
# suite


def _suite_golden(cfg: RunConfig) -> tuple[str, str]:
    cases = [
        ("k4", None, 0),
        ("k33", None, 0),
        ("cycle", 5, 0),
        ("petersen", None, 2),
    ]
    failures = []
    for name, k, want in cases:
        got = solve_exact(make_named(name, k)).s_value
        if got != want:
            failures.append(f"{name}: s={got}, expected {want}")
    if failures:
        return "FAIL", "; ".join(failures)
    return "PASS", f"{len(cases)} named graphs"


def _suite_enumeration(cfg: RunConfig) -> tuple[str, str]:
    expected = {4: 1, 6: 2, 8: 5}
    failures = []
    total = 0
    for n, want in expected.items():
        got = sum(1 for _ in enumerate_cubic(n))
        total += got
        if got != want:
            failures.append(f"n={n}: {got} graphs, expected {want}")
    if failures:
        return "FAIL", "; ".join(failures)
    return "PASS", f"{total} graphs over n=4,6,8"


def _suite_two_factor_bound(cfg: RunConfig) -> tuple[str, str]:
    graphs_checked = factors_checked = 0
    for n in (4, 6, 8, 10):
        for g in enumerate_cubic(n):
            s = solve_exact(g).s_value
            graphs_checked += 1
            for f in enumerate_two_factors(g):
                factors_checked += 1
                if f.odd_cycle_count() < s:
                    return "FAIL", f"2-factor with {f.odd_cycle_count()} odd cycles < s={s} (n={n})"
    return "PASS", f"{graphs_checked} graphs, {factors_checked} two-factors"


def _suite_resistance(cfg: RunConfig) -> tuple[str, str]:
    checked = 0
    for n in (4, 6, 8, 10):
        for g in enumerate_cubic(n):
            if resistance_exact(g) != solve_exact(g).s_value:
                return "FAIL", f"resistance mismatch on a cubic graph (n={n})"
            checked += 1
    rng = random.Random(f"suite:{cfg.seed}")
    for _ in range(100):
        g = random_subcubic(rng.randrange(4, 11), rng.randrange(2**31))
        if resistance_exact(g) != solve_exact(g).s_value:
            return "FAIL", f"resistance mismatch on a random subcubic graph (n={g.vertex_count})"
        checked += 1
    return "PASS", f"{checked} graphs (enumerated cubic + 100 random subcubic)"


def _suite_parity(cfg: RunConfig) -> tuple[str, str]:
    checked = 0
    for n in (4, 6, 8, 10):
        for g in enumerate_cubic(n):
            result = solve_exact(g)
            if result.s_value == 0:
                continue
            sig = parity_signature(classify_delta_edges(result.witness))
            checked += 1
            if not sig.parity_ok:
                return "FAIL", f"parity violated on a cubic graph (n={n})"
    return "PASS", f"{checked} witnesses with s >= 1"


def _suite_properize(cfg: RunConfig) -> tuple[str, str]:
    rng = random.Random(f"suite-properize:{cfg.seed}")
    for trial in range(200):
        g = random_subcubic(rng.randrange(2, 13), rng.randrange(2**31))
        colours = []
        used: list[set[Colour]] = [set() for _ in range(g.vertex_count)]
        for u, v in g.edges:
            opts = [c for c in Colour if c is Colour.DELTA or (c not in used[u] and c not in used[v])]
            col = rng.choice(opts)
            colours.append(col)
            used[u].add(col)
            used[v].add(col)
        improper = EdgeColouring(g, colours)
        before = improper.colour_class(Colour.DELTA)
        repaired = properize(improper)
        after = repaired.colour_class(Colour.DELTA)
        if repaired.classification() is not ColouringKind.PROPER or not after <= before:
            return "FAIL", f"properize contract violated on trial {trial}"
        if improper.classification() is ColouringKind.DELTA_IMPROPER and not after < before:
            return "FAIL", f"properize failed to shrink delta on trial {trial}"
    return "PASS", "200 random delta-improper colourings"


_SUITES = (
    ("golden-values", _suite_golden, 10),
    ("enumeration-counts", _suite_enumeration, 0),
    ("two-factor-bound", _suite_two_factor_bound, 10),
    ("resistance-equivalence", _suite_resistance, 10),
    ("parity-signature", _suite_parity, 10),
    ("properize-contract", _suite_properize, 0),
)


def cmd_suite(cfg: RunConfig, out: Optional[TextIO] = None) -> int:
    out = out if out is not None else sys.stdout
    out.write(
        "deltamin suite | enumeration: isomorphism-free "
        "(breadth-first-ordered generation, exact-isomorphism dedup) | "
        f"seed={cfg.seed} exact-limit={cfg.exact_limit}\n"
    )
    status = 0
    for name, runner, needs in _SUITES:
        if needs > cfg.exact_limit:
            out.write(f"suite {name}: SKIPPED (needs exact solving up to n={needs}, exact-limit={cfg.exact_limit})\n")
            continue
        verdict, detail = runner(cfg)
        out.write(f"suite {name}: {verdict} ({detail})\n")
        if verdict == "FAIL":
            status = 1
    return status


# ---------------------------------------------------------------------------
# argument parsing / entry point


def _add_common(p: argparse.ArgumentParser, with_input: bool = True) -> None:
    if with_input:
        p.add_argument("input", help="input path, or - for standard input")
        p.add_argument(
            "--format", choices=("graph6", "edgelist"), default="graph6",
            help="input encoding (graph6: one graph per line)",
        )
    p.add_argument(
        "--exact-limit", type=int, default=DEFAULT_EXACT_LIMIT, metavar="N",
        help="largest vertex count solved exactly (minimum 4)",
    )
    p.add_argument("--seed", type=int, default=0, metavar="S", help="random seed")
    p.add_argument(
        "--jobs", type=int, default=1, metavar="J",
        help="worker processes for independent graphs",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="deltamin",
        description="Minimise the fourth colour in edge colourings of graphs "
        "with maximum degree three.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="minimum delta count per graph")
    _add_common(p_solve)
    p_solve.add_argument(
        "--out", choices=("json", "csv", "dot"), default="json",
        help="report format",
    )

    p_verify = sub.add_parser("verify", help="check structural clauses of witness colourings")
    _add_common(p_verify)
    p_verify.add_argument(
        "--colouring", required=True, metavar="PATH",
        help="JSON-lines colouring file aligned with the input graphs; "
        "colours are positional over the parsed graph's edge order, "
        "which for graph6 input is the solve command's order",
    )

    p_analyze = sub.add_parser("analyze", help="solve, verify, and report parity per graph")
    _add_common(p_analyze)

    p_gen = sub.add_parser("generate", help="emit graph6 corpora")
    what = p_gen.add_mutually_exclusive_group(required=True)
    what.add_argument("--named", metavar="NAME", help=f"one of: {', '.join(graphlib.NAMED_GRAPHS)}")
    what.add_argument("--cubic", type=int, metavar="N", help="all connected cubic graphs on N vertices")
    what.add_argument("--random", type=int, metavar="N", help="random subcubic graphs on N vertices")
    p_gen.add_argument("--size", type=int, default=None, metavar="K", help="parameter for sized named graphs")
    p_gen.add_argument("--count", type=int, default=1, metavar="C", help="number of random graphs")
    p_gen.add_argument("--seed", type=int, default=0, metavar="S")

    p_suite = sub.add_parser("suite", help="run the self-check property suites")
    _add_common(p_suite, with_input=False)

    return parser


def _config_from(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        input_path=getattr(args, "input", None),
        format=getattr(args, "format", "graph6"),
        output=getattr(args, "out", "json"),
        exact_limit=getattr(args, "exact_limit", DEFAULT_EXACT_LIMIT),
        seed=getattr(args, "seed", 0),
        jobs=getattr(args, "jobs", 1),
    )


def main(argv: Optional[list[str]] = None) -> int:
    level = getattr(logging, os.environ.get("DELTAMIN_LOG", "WARNING").upper(), None)
    logging.basicConfig(
        level=level if isinstance(level, int) else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "generate":
        return cmd_generate(args)
    try:
        cfg = _config_from(args)
    except ValueError as exc:
        parser.error(str(exc))
    if args.command == "solve":
        return cmd_solve(cfg)
    if args.command == "verify":
        return cmd_verify(cfg, args.colouring)
    if args.command == "analyze":
        return cmd_analyze(cfg)
    return cmd_suite(cfg)


def main_entry() -> None:
    sys.exit(main())
