"""Command-line front end.

Subcommands: classify, decompose, scan, verify, tfine-matrix.  Output is
JSON by default (schema: 1, sorted keys) or markdown with --md; --stable
drops timing so identical invocations are byte-identical; --jobs controls
worker processes for scans and matrix sweeps without affecting output
content.  Exit codes: 0 ok, 1 suite failure, 2 usage or parse error,
3 resource cap.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from typing import Any, Sequence

from . import __version__
from .catalog import catalog_specs
from .decompose import (KINDS, Certificate, certificate_to_json, decompose,
                        failure_to_json, ring_predicate, verify_certificate)
from .errors import (BudgetExhausted, CapExceeded, ExprError, InvalidSpec,
                     NotTFineBase, OrderCapExceeded, RinglabError,
                     ZeroNotEligible)
from .formatting import parse_element, pretty
from .matrix_tfine import (DEFAULT_FALLBACK_BUDGET, DEFAULT_SIMILARITY_BUDGET,
                           handle_to_mat, tfine_decompose_matrix,
                           verify_matrix_decomposition)
from .report import SCHEMA, classification_report, report_to_markdown
from .rings import DEFAULT_MAX_ORDER, realize
from .specs import Matrix, parse_group_spec, parse_ring_spec, render
from .suites import run_suite

_KIND_ALIASES = {k.lower(): k for k in KINDS}


def _canonical_kind(text: str) -> str:
    key = text.lower().replace("-", "").replace("_", "")
    if key not in _KIND_ALIASES:
        raise InvalidSpec(f"unknown decomposition kind {text!r}; "
                          f"one of {', '.join(sorted(KINDS))}")
    return _KIND_ALIASES[key]


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(payload: dict[str, Any]) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _dump_line(payload: dict[str, Any]) -> str:
    return json.dumps(payload, sort_keys=True) + "\n"


# ------------------------------------------------------------- classify

def _cache_lookup(path: str, key: str) -> dict[str, Any] | None:
    if not os.path.exists(path):
        return None
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            if rec.get("key") == key:
                return rec["payload"]
    return None


def _cache_append(path: str, key: str, payload: dict[str, Any]) -> None:
    with open(path, "a") as fh:
        fh.write(_dump_line({"key": key, "payload": payload}))


def cmd_classify(args: argparse.Namespace) -> int:
    R = realize(parse_ring_spec(args.spec), args.max_order)
    key = f"{R.spec_string}|{__version__}|{SCHEMA}"
    payload: dict[str, Any] | None = None
    if args.cache and args.stable:
        payload = _cache_lookup(args.cache, key)
    if payload is None:
        payload = classification_report(R, stable=args.stable)
        payload["schema"] = SCHEMA
        if args.cache and args.stable:
            _cache_append(args.cache, key, payload)
    if args.md:
        _emit(report_to_markdown(payload), args.out)
    else:
        _emit(_dump(payload), args.out)
    if args.figures:
        from .figures import classify_figure, figure_path
        classify_figure(payload, figure_path(args.out, "subsets"))
    return 0


# ------------------------------------------------------------ decompose

def cmd_decompose(args: argparse.Namespace) -> int:
    R = realize(parse_ring_spec(args.spec), args.max_order)
    kind = _canonical_kind(args.kind)
    x = parse_element(R, args.element)
    out = decompose(R, x, kind)
    payload: dict[str, Any] = {"schema": SCHEMA, "spec": R.spec_string,
                               "element": x,
                               "element_pretty": pretty(R, x)}
    if isinstance(out, Certificate):
        ver = verify_certificate(R, out)
        assert ver.ok, f"searcher produced an invalid certificate: {ver.reason}"
        payload["certificate"] = certificate_to_json(out)
        payload["certificate"]["part_a_pretty"] = pretty(R, out.part_a)
        payload["certificate"]["part_b_pretty"] = pretty(R, out.part_b)
        payload["verified"] = True
    else:
        payload["failure"] = failure_to_json(out)
    if args.md:
        lines = [f"# decompose {payload['spec']}", ""]
        for k, v in sorted(payload.items()):
            if k != "schema":
                lines.append(f"- {k}: {json.dumps(v, sort_keys=True)}")
        _emit("\n".join(lines) + "\n", args.out)
    else:
        _emit(_dump(payload), args.out)
    return 0


# ----------------------------------------------------------------- scan

def _scan_one(task: tuple[str, int, tuple[str, ...]]) -> dict[str, Any]:
    line, max_order, predicates = task
    rec: dict[str, Any] = {}
    try:
        if ";" in line:
            ring_part, group_part = (p.strip() for p in line.split(";", 1))
            rspec = parse_ring_spec(ring_part)
            gspec = parse_group_spec(group_part)
            from .groupring import groupring_scan
            rec = groupring_scan([(rspec, gspec)], predicates,
                                 max_order)[0]
        else:
            rspec = parse_ring_spec(line)
            R = realize(rspec, max_order)
            rec = {"spec": R.spec_string, "order": R.order,
                   "characteristic": R.characteristic, "predicates": {}}
            for kind in predicates:
                res = ring_predicate(R, kind)
                entry: dict[str, Any] = {"holds": res.holds}
                if res.counterexample is not None:
                    entry["counterexample"] = res.counterexample
                    entry["counterexample_pretty"] = pretty(
                        R, res.counterexample)
                rec["predicates"][kind] = entry
    except RinglabError as exc:
        rec = {"input": line, "error": f"{type(exc).__name__}: {exc}"}
    rec["schema"] = SCHEMA
    return rec


def _parallel_map(fn, tasks: list, jobs: int) -> list:
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, tasks, chunksize=max(1, len(tasks) // jobs)))


def cmd_scan(args: argparse.Namespace) -> int:
    if args.catalog:
        with open(args.catalog) as fh:
            lines = [ln.strip() for ln in fh
                     if ln.strip() and not ln.strip().startswith("#")]
    else:
        lines = catalog_specs(args.max_order)
    predicates = tuple(p.strip() for p in args.predicates.split(",")
                       if p.strip())
    from .decompose import PREDICATE_KINDS
    for p in predicates:
        if p not in PREDICATE_KINDS:
            raise InvalidSpec(f"unknown predicate {p!r}")
    tasks = [(ln, args.max_order, predicates) for ln in lines]
    records = _parallel_map(_scan_one, tasks, args.jobs)
    text = "".join(_dump_line(rec) for rec in records)
    _emit(text, args.out)
    if args.figures:
        from .figures import figure_path, scan_figure
        scan_figure(records, figure_path(args.out, "scan"))
    return 0


# --------------------------------------------------------------- verify

def cmd_verify(args: argparse.Namespace) -> int:
    try:
        results = run_suite(args.suite, args.max_order)
    except KeyError:
        sys.stderr.write(f"unknown suite {args.suite!r}; "
                         "available: paper, invariants\n")
        return 2
    ok = all(r.status == "pass" for r in results)
    if args.json:
        payload = {"schema": SCHEMA, "suite": args.suite,
                   "checks": [{"id": r.id, "anchor": r.anchor,
                               "status": r.status, "details": r.details,
                               **({} if args.stable
                                  else {"seconds": r.seconds})}
                              for r in results],
                   "ok": ok}
        _emit(_dump(payload), args.out)
    else:
        width = max(len(r.anchor) for r in results)
        lines = [f"suite: {args.suite}"]
        for r in results:
            mark = "PASS" if r.status == "pass" else "FAIL"
            lines.append(f"{r.id:>4}  {mark}  {r.anchor:<{width}}  "
                         f"{r.details}")
        lines.append("result: " + ("all checks passed" if ok
                                   else "FAILURES PRESENT"))
        _emit("\n".join(lines) + "\n", args.out)
    return 0 if ok else 1


# --------------------------------------------------------- tfine-matrix

@lru_cache(maxsize=8)
def _sweep_rings(spec_str: str, n: int, max_order: int):
    inner = realize(parse_ring_spec(spec_str), max_order)
    S = realize(Matrix(n, parse_ring_spec(spec_str)), max_order)
    return inner, S


def _tfine_one(task: tuple[str, int, int, int, int, int]) -> dict[str, Any]:
    spec_str, n, h, bs, bf, max_order = task
    inner, S = _sweep_rings(spec_str, n, max_order)
    M = handle_to_mat(S, n, h)
    try:
        dec = tfine_decompose_matrix(inner, n, M, budget_similarity=bs,
                                     budget_fallback=bf)
    except (NotTFineBase, BudgetExhausted) as exc:
        # The recursion assumes the entry ring is t-fine; when it is not,
        # individual matrices may still decompose.  Settle this matrix
        # exactly with the generic exhaustive searcher over M_n(R).
        out = decompose(S, h, "TFine")
        if isinstance(out, Certificate):
            ver = verify_certificate(S, out)
            if not ver.ok:
                return {"handle": h, "ok": False,
                        "error": f"fallback certificate invalid: {ver.reason}"}
            return {"handle": h, "ok": True, "method": "exhaustive",
                    "u_order": out.witnesses["part_a"]["order"],
                    "n_index": out.witnesses["part_b"]["index"]}
        return {"handle": h, "ok": False, "method": "exhaustive",
                "error": f"no decomposition exists; search fully enumerated "
                         f"({out.search_space_size} candidates) after "
                         f"{type(exc).__name__}"}
    ver = verify_matrix_decomposition(inner, n, M, dec)
    if not ver.ok:
        return {"handle": h, "ok": False,
                "error": f"verification failed: {ver.reason}"}
    return {"handle": h, "ok": True, "method": "recursive",
            "u_order": dec.u_order, "n_index": dec.n_index}


def cmd_tfine_matrix(args: argparse.Namespace) -> int:
    inner_spec = parse_ring_spec(args.spec)
    S = realize(Matrix(args.n, inner_spec), args.max_order)
    t0 = time.perf_counter()
    tasks = [(args.spec, args.n, h, args.budget_similarity,
              args.budget_fallback, args.max_order)
             for h in range(1, S.order)]
    rows = _parallel_map(_tfine_one, tasks, args.jobs)
    decomposed = [r for r in rows if r["ok"]]
    failed = [r for r in rows if not r["ok"]]
    payload: dict[str, Any] = {
        "schema": SCHEMA,
        "spec": S.spec_string,
        "n": args.n,
        "inner": render(inner_spec),
        "total_nonzero": S.order - 1,
        "decomposed": len(decomposed),
        "by_method": {
            "recursive": sum(1 for r in decomposed
                             if r.get("method") == "recursive"),
            "exhaustive": sum(1 for r in decomposed
                              if r.get("method") == "exhaustive"),
        },
        "failed": len(failed),
        "is_tfine": not failed,
        "unit_orders": [r["u_order"] for r in decomposed],
        "nilpotency_indices": [r["n_index"] for r in decomposed],
        "failures": [{"handle": r["handle"], "error": r["error"]}
                     for r in failed[:32]],
        "failures_truncated": len(failed) > 32,
    }
    if not args.stable:
        payload["timing"] = {"seconds": round(time.perf_counter() - t0, 6)}
    if args.md:
        lines = [f"# t-fine sweep of {payload['spec']}", "",
                 f"- nonzero matrices: {payload['total_nonzero']}",
                 f"- decomposed: {payload['decomposed']}",
                 f"- failed: {payload['failed']}",
                 f"- t-fine: {payload['is_tfine']}"]
        _emit("\n".join(lines) + "\n", args.out)
    else:
        _emit(_dump(payload), args.out)
    if args.figures:
        from .figures import figure_path, tfine_figure
        tfine_figure(payload, figure_path(args.out, "tfine"))
    return 0


# ----------------------------------------------------------------- main

def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER,
                   help="largest ring order this invocation may realize")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                   help="worker processes; output content is unaffected")
    p.add_argument("--out", help="write output to this file instead of stdout")
    p.add_argument("--stable", action="store_true",
                   help="drop timing so output is byte-identical across runs")
    p.add_argument("--figures", action="store_true",
                   help="render PNG figures next to the output")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", default=False,
                     help="JSON output (the default)")
    fmt.add_argument("--md", action="store_true", help="markdown output")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ringlab",
        description="finite-ring laboratory: classification, decomposition "
                    "certificates, group-ring analysis")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="full classification report")
    p.add_argument("spec", help='ring spec, e.g. "Z/4" or "M(2,GF(2))"')
    p.add_argument("--cache", help="JSONL read-through cache (with --stable)")
    _add_common(p)
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("decompose", help="one element, one decomposition kind")
    p.add_argument("spec")
    p.add_argument("element",
                   help='handle, matrix literal, or expression like "1+3*g"')
    p.add_argument("--kind", required=True,
                   help="e.g. tfine, fine, clean, nil-clean, weakly-periodic")
    _add_common(p)
    p.set_defaults(fn=cmd_decompose)

    p = sub.add_parser("scan", help="predicate scan over a catalog")
    p.add_argument("catalog", nargs="?",
                   help="file of ring specs or 'ring ; group' pairs; "
                        "defaults to the built-in catalog")
    p.add_argument("--predicates",
                   default="Periodic,WeaklyPeriodic,SemiNilClean,"
                           "StronglySemiNilClean,SemiClean,Clean,NilClean,"
                           "Fine,TFine,UU,PiUU,UNC,UnitSemiNilClean",
                   help="comma-separated predicate kinds")
    _add_common(p)
    p.set_defaults(fn=cmd_scan)

    p = sub.add_parser("verify", help="run a named check suite")
    p.add_argument("--suite", required=True, help="paper or invariants")
    _add_common(p)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("tfine-matrix",
                       help="decompose every nonzero matrix of M_n(R)")
    p.add_argument("spec", help="the entry ring R")
    p.add_argument("-n", type=int, default=2, help="matrix size")
    p.add_argument("--budget-similarity", type=int,
                   default=DEFAULT_SIMILARITY_BUDGET)
    p.add_argument("--budget-fallback", type=int,
                   default=DEFAULT_FALLBACK_BUDGET)
    _add_common(p)
    p.set_defaults(fn=cmd_tfine_matrix)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (InvalidSpec, ExprError, ZeroNotEligible) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except (OrderCapExceeded, CapExceeded, BudgetExhausted) as exc:
        sys.stderr.write(f"resource cap: {exc}\n")
        return 3
    except RinglabError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
