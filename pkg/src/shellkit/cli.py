"""Command-line front end.

    shellkit analyze FILE [--table]
    shellkit pss FILE [--stats] [--peel]
    shellkit count FILE [--by-letter]
    shellkit enumerate FILE [--limit N] [--facets]
    shellkit peel count|enumerate FILE
    shellkit linext POSETFILE
    shellkit gen m2 M | pm S... | trees EDGEFILE|kM | cb I...

Facet files may be ``-`` for standard input.  Output is JSON unless
``--text`` is given.  Exit status: 0 success, 1 domain error, 2 usage or
input error.  An unshellable complex is a result, not an error.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import re
import sys
import time
from contextlib import contextmanager
from pathlib import Path
from typing import Optional

from . import _backend, oracles
from .core import FacetFamily, FacetFileError, Mode, indices_of, parse_facets, parse_poset, \
    poset_to_ideals, serialize_facets
from .generators import (GeneratorError, ChessboardShape, complete_graph, gen_chessboard,
                         gen_m2m, gen_partition_matroid, gen_spanning_trees, parse_edge_list,
                         partition_blocks)
from .peelings import peeling_pss_rows
from .rows import row_cardinality
from .search import enumerate_full_words, falling_dp, rising_dp
from .shelling import classify, failure_report, pss_rows_from_table, render_table

ORACLE_MAX_N = 8


class DomainError(Exception):
    """Reported with exit status 1."""


class _Timer:
    def __init__(self):
        self.ms: dict[str, float] = {}

    @contextmanager
    def phase(self, name: str):
        t0 = time.perf_counter()
        try:
            yield
        finally:
            self.ms[name] = round(self.ms.get(name, 0.0) + (time.perf_counter() - t0) * 1000, 3)


# -- input ---------------------------------------------------------------------

def _read_input(path: str) -> tuple[str, str]:
    if path == "-":
        data = sys.stdin.buffer.read()
    else:
        try:
            data = Path(path).read_bytes()
        except OSError as e:
            raise FacetFileError(f"cannot read {path}: {e.strerror}") from None
    return data.decode("utf-8"), "sha256:" + hashlib.sha256(data).hexdigest()


def _load_family(args, mode: Mode) -> tuple[FacetFamily, str]:
    text, digest = _read_input(args.file)
    is_json = args.file.endswith(".json")
    try:
        fam = parse_facets(text, mode, json_format=is_json,
                           maximal=getattr(args, "maximalize", False))
    except json.JSONDecodeError as e:
        raise FacetFileError(f"invalid JSON facet file: {e}") from None
    return fam, digest


def _flags(args) -> dict:
    # execution knobs that cannot change results stay out of the report
    skip = {"func", "file", "cmd", "action", "gen_kind", "values", "threads", "backend", "verbose"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _report(args, command: str, digest: str, timer: _Timer, **results) -> dict:
    rep = {"command": command, "inputDigest": digest, "flags": _flags(args)}
    rep.update(results)
    rep["timingMs"] = timer.ms
    return rep


def _emit(args, rep: dict, text_lines: Optional[list[str]] = None) -> None:
    if args.text:
        if text_lines is None:
            text_lines = [f"{k}: {_plain(v)}" for k, v in rep.items()
                          if k not in ("flags", "timingMs")]
        for line in text_lines:
            print(line)
    else:
        print(json.dumps(rep, indent=2))


def _plain(v) -> str:
    return json.dumps(v) if isinstance(v, (dict, list)) else str(v)


def _level_logger(args):
    if not args.verbose:
        return None

    def on_level(direction: str, s: int, size: int) -> None:
        print(f"[{direction}] level {s}: {size} setments", file=sys.stderr)

    return on_level


def _oracle_guard(fam: FacetFamily) -> None:
    if fam.n > ORACLE_MAX_N:
        raise DomainError(f"--oracle needs at most {ORACLE_MAX_N} facets, got {fam.n}")


# -- building the PSS-poset ---------------------------------------------------------

def _build(fam: FacetFamily, peel: bool, threads: int, timer: _Timer):
    table = None
    if peel:
        with timer.phase("solve"):
            p = peeling_pss_rows(fam)
    else:
        with timer.phase("classify"):
            table = classify(fam)
        with timer.phase("solve"):
            p = pss_rows_from_table(table, threads)
    return table, p


def _pss_summary(p) -> dict:
    total = p.pss_total()
    empty = sum(1 for k in range(1, p.n + 1) if p.predicate()(0, k))
    empty_rows = sum(1 for k in range(1, p.n + 1) for r in p.rows_for(k)
                     if r.zeros == r.universe)
    return {"pssTotal": str(total - empty), "pssTotalWithEmpty": str(total),
            "rowTotal": p.row_total(), "nonemptyRowTotal": p.row_total() - empty_rows}


# -- subcommands ---------------------------------------------------------------------

def cmd_analyze(args) -> int:
    timer = _Timer()
    fam, digest = _load_family(args, Mode.SHELLING)
    table, p = _build(fam, False, args.threads, timer)
    rep = failure_report(table, p)
    if not args.quick:
        with timer.phase("search"):
            res = rising_dp(p, backend=args.backend, threads=args.threads,
                            on_level=_level_logger(args))
        rep.max_partial_length = res.max_partial_length
        rep.type4 = res.max_partial_length < fam.n
    suffixes = []
    for k in range(1, fam.n + 1):
        cls = table[k]
        suffixes.append({
            "k": k,
            "cops": indices_of(cls.cops),
            "hooligans": {str(i): indices_of(c) for i, c in sorted(cls.policeable.items())},
            "nonPoliceable": indices_of(cls.non_policeable),
        })
    report = _report(args, "analyze", digest, timer, n=fam.n, suffixes=suffixes,
                     failures=rep.to_json(), **_pss_summary(p))
    if args.table:
        print(render_table(fam, table))
        return 0
    _emit(args, report)
    return 0


def cmd_pss(args) -> int:
    timer = _Timer()
    fam, digest = _load_family(args, Mode.PEELING if args.peel else Mode.SHELLING)
    _, p = _build(fam, args.peel, args.threads, timer)
    per = []
    for k in range(1, fam.n + 1):
        entry = {"k": k, "rows": len(p.rows_for(k)),
                 "pss": str(sum(row_cardinality(r) for r in p.rows_for(k)))}
        if args.stats:
            entry["dump"] = [r.dump(fam.n) for r in p.rows_for(k)]
        per.append(entry)
    report = _report(args, "pss", digest, timer, n=fam.n, **_pss_summary(p), perSuffix=per)
    lines = None
    if args.text:
        lines = [f"{k}: {v}" for k, v in _pss_summary(p).items()]
        for e in per:
            lines.append(f"k={e['k']} rows={e['rows']} pss={e['pss']}")
            lines += ["  " + d for d in e.get("dump", [])]
    _emit(args, report, lines)
    return 0


def _count(args, peel: bool, fam: FacetFamily, digest: str, command: str) -> int:
    timer = _Timer()
    if args.oracle:
        _oracle_guard(fam)
    table, p = _build(fam, peel, args.threads, timer)
    with timer.phase("search"):
        res = rising_dp(p, backend=args.backend, threads=args.threads,
                        on_level=_level_logger(args))
        by_first = None
        if args.by_letter:
            by_first = falling_dp(p, backend=args.backend, threads=args.threads,
                                  on_level=_level_logger(args))
    fails = failure_report(table, p)
    fails.max_partial_length = res.max_partial_length
    fails.type4 = res.max_partial_length < fam.n
    extra = {}
    if by_first is not None:
        extra["byFirstLetter"] = {str(k): str(v) for k, v in by_first.items()}
        extra["byLastLetter"] = {str(k): str(v) for k, v in res.by_last.items()}
    if args.oracle:
        with timer.phase("oracle"):
            expected = sum(1 for _ in oracles.brute_force_words(fam, peeling=peel))
        if expected != res.total:
            raise DomainError(f"oracle mismatch: counted {res.total}, brute force {expected}")
        extra["oracle"] = "agree"
    report = _report(args, command, digest, timer, n=fam.n, count=str(res.total),
                     maxPartialLength=res.max_partial_length, failures=fails.to_json(),
                     **_pss_summary(p), **extra)
    _emit(args, report, [str(res.total)] if args.text else None)
    return 0


def cmd_count(args) -> int:
    fam, digest = _load_family(args, Mode.SHELLING)
    return _count(args, False, fam, digest, "count")


def _format_word(fam: FacetFamily, w: list[int], facets: bool) -> str:
    if facets:
        return " ".join("{" + ",".join(fam.facet_tokens(i)) + "}" for i in w)
    return ",".join(map(str, w))


def _enumerate(args, peel: bool, fam: FacetFamily, digest: str, command: str) -> int:
    timer = _Timer()
    if args.oracle:
        _oracle_guard(fam)
    _, p = _build(fam, peel, args.threads, timer)
    words = []
    with timer.phase("search"):
        for w in enumerate_full_words(p, args.limit, args.order, args.threads):
            if args.text and not args.oracle:
                print(_format_word(fam, w, args.facets))
            else:
                words.append(w)
    if args.oracle:
        expected = {tuple(w) for w in oracles.brute_force_words(fam, peeling=peel)}
        got = {tuple(w) for w in words}
        complete = args.limit is None or len(words) < args.limit
        if len(got) != len(words) or not got <= expected or (complete and got != expected):
            raise DomainError("oracle mismatch between enumeration and brute force")
    if args.text:
        if args.oracle:
            for w in words:
                print(_format_word(fam, w, args.facets))
        return 0
    report = _report(args, command, digest, timer, n=fam.n, count=len(words),
                     words=[_format_word(fam, w, args.facets) for w in words],
                     **({"oracle": "agree"} if args.oracle else {}))
    _emit(args, report)
    return 0


def cmd_enumerate(args) -> int:
    fam, digest = _load_family(args, Mode.SHELLING)
    return _enumerate(args, False, fam, digest, "enumerate")


def cmd_peel(args) -> int:
    fam, digest = _load_family(args, Mode.PEELING)
    if args.action == "count":
        return _count(args, True, fam, digest, "peel count")
    return _enumerate(args, True, fam, digest, "peel enumerate")


def cmd_linext(args) -> int:
    text, digest = _read_input(args.file)
    poset = parse_poset(text)
    fam = poset_to_ideals(poset)
    return _count(args, True, fam, digest, "linext")


def cmd_gen(args) -> int:
    kind, values = args.gen_kind, args.values
    try:
        if kind == "m2":
            if len(values) != 1:
                raise GeneratorError("gen m2 takes one argument")
            fam = gen_m2m(int(values[0]))
        elif kind == "pm":
            fam = gen_partition_matroid(partition_blocks([int(v) for v in values]))
        elif kind == "cb":
            fam = gen_chessboard(ChessboardShape(tuple(int(v) for v in values)))
        else:
            if len(values) != 1:
                raise GeneratorError("gen trees takes an edge-list file or kM")
            m = re.fullmatch(r"[kK](\d+)", values[0])
            if m:
                edges = complete_graph(int(m.group(1)))
            else:
                edges = parse_edge_list(_read_input(values[0])[0])
            fam = gen_spanning_trees(edges)
    except ValueError as e:
        if isinstance(e, (GeneratorError, FacetFileError)):
            raise
        raise GeneratorError(f"bad numeric argument: {e}") from None
    sys.stdout.write(serialize_facets(fam))
    return 0


# -- argument parsing ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--text", action="store_true", help="plain text instead of JSON")
    common.add_argument("--threads", type=int, default=1, metavar="T")
    common.add_argument("--backend", choices=["auto", "compiled", "python"], default=None)
    common.add_argument("--verbose", action="store_true", help="one stderr line per DP level")

    facet_in = argparse.ArgumentParser(add_help=False)
    facet_in.add_argument("file", help="facet file, '-' for stdin, '.json' for JSON")
    facet_in.add_argument("--maximalize", action="store_true",
                          help="reduce input to inclusion-maximal sets first")

    counting = argparse.ArgumentParser(add_help=False)
    counting.add_argument("--oracle", action="store_true",
                          help=f"cross-check by brute force (n <= {ORACLE_MAX_N})")
    counting.add_argument("--by-letter", action="store_true",
                          help="also split the count by first and last letter")

    enumerating = argparse.ArgumentParser(add_help=False)
    enumerating.add_argument("--oracle", action="store_true",
                             help=f"cross-check by brute force (n <= {ORACLE_MAX_N})")
    enumerating.add_argument("--limit", type=int, default=None, metavar="N")
    enumerating.add_argument("--facets", action="store_true",
                             help="print facet contents instead of indices")
    enumerating.add_argument("--order", choices=["lexicographic", "arbitrary"],
                             default="lexicographic")

    ap = argparse.ArgumentParser(prog="shellkit", description=__doc__.split("\n\n")[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("analyze", parents=[common, facet_in], help="cops, hooligans, failures")
    p.add_argument("--table", action="store_true", help="render the intersection table")
    p.add_argument("--quick", action="store_true", help="skip the search for Type 4")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("pss", parents=[common, facet_in], help="compressed PSS-poset")
    p.add_argument("--stats", action="store_true", help="include row dumps")
    p.add_argument("--peel", action="store_true", help="peeling language instead of shellings")
    p.set_defaults(func=cmd_pss)

    p = sub.add_parser("count", parents=[common, facet_in, counting], help="count shellings")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", parents=[common, facet_in, enumerating],
                       help="list shellings")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("peel", help="peelings of an arbitrary set family")
    peel_sub = p.add_subparsers(dest="action", required=True)
    q = peel_sub.add_parser("count", parents=[common, facet_in, counting])
    q.set_defaults(func=cmd_peel)
    q = peel_sub.add_parser("enumerate", parents=[common, facet_in, enumerating])
    q.set_defaults(func=cmd_peel)

    p = sub.add_parser("linext", parents=[common, counting], help="count linear extensions")
    p.add_argument("file", help="poset file, '-' for stdin")
    p.set_defaults(func=cmd_linext)

    p = sub.add_parser("gen", help="emit a benchmark facet file")
    p.add_argument("gen_kind", choices=["m2", "pm", "trees", "cb"])
    p.add_argument("values", nargs="+")
    p.set_defaults(func=cmd_gen)
    return ap


def run(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        parser.error("--threads must be at least 1")
    if getattr(args, "limit", None) is not None and args.limit < 0:
        parser.error("--limit must be non-negative")
    if getattr(args, "backend", None):
        try:
            _backend.get(args.backend)
        except ValueError as e:
            parser.error(str(e))
    try:
        return args.func(args)
    except FacetFileError as e:
        print(f"shellkit: input error: {e}", file=sys.stderr)
        return 2
    except (DomainError, GeneratorError) as e:
        print(f"shellkit: {e}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
