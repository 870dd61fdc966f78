"""Classification reports: one ring in, one JSON-friendly dict out.

The report is a pure function of the spec string and package version, so
two runs over the same input are byte-identical once serialized with
sorted keys.  Wall-clock timing is the one exception; it lives in a
separate "timing" key that stable mode drops entirely.
"""

from __future__ import annotations

import time
from typing import Any

from . import __version__
from .classify import (is_NI, is_weakly_2_primal, structural_subsets,
                       unit_group_is_nilpotent)
from .decompose import PREDICATE_KINDS, ring_predicate
from .errors import CapExceeded
from .formatting import pretty
from .rings import FiniteRing

SCHEMA = 1


def classification_report(R: FiniteRing, stable: bool = False) -> dict[str, Any]:
    t0 = time.perf_counter()
    subs = structural_subsets(R)
    report: dict[str, Any] = {
        "spec": R.spec_string,
        "order": R.order,
        "characteristic": R.characteristic,
        "commutative": R.is_commutative(),
        "subset_sizes": {
            "units": len(subs.units),
            "nilpotents": len(subs.nilpotents),
            "idempotents": len(subs.idempotents),
            "potents": len(subs.potents),
            "torsion_units": len(subs.torsion_units),
            "unipotents": len(subs.unipotents),
            "center": len(subs.center),
            "jacobson": len(subs.jacobson),
        },
    }

    preds: dict[str, Any] = {}
    for kind in PREDICATE_KINDS:
        res = ring_predicate(R, kind)
        entry: dict[str, Any] = {"holds": res.holds}
        if res.counterexample is not None:
            entry["counterexample"] = res.counterexample
            entry["counterexample_pretty"] = pretty(R, res.counterexample)
        preds[kind] = entry
    report["predicates"] = preds

    ni = is_NI(R)
    ni_entry: dict[str, Any] = {"is_ni": ni.is_ni,
                                "max_nilpotency_index": ni.max_nilpotency_index}
    if ni.counterexample is not None:
        kind, a, b = ni.counterexample
        ni_entry["counterexample"] = {
            "kind": kind,
            "a": a, "a_pretty": pretty(R, a),
            "b": b, "b_pretty": pretty(R, b),
        }
    report["ni"] = ni_entry
    report["weakly_2_primal"] = is_weakly_2_primal(R)

    try:
        ug = unit_group_is_nilpotent(R)
        report["unit_group"] = {
            "is_nilpotent": ug.is_nilpotent,
            "nilpotency_class": ug.nilpotency_class,
            "unit_count": ug.unit_count,
            "generator_count": ug.generator_count,
        }
    except CapExceeded as exc:
        report["unit_group"] = {"error": f"CapExceeded: {exc}"}

    report["version"] = __version__
    if not stable:
        report["timing"] = {"seconds": round(time.perf_counter() - t0, 6)}
    return report


def report_to_markdown(report: dict[str, Any]) -> str:
    lines = [f"# {report['spec']}", ""]
    lines.append(f"- order: {report['order']}")
    lines.append(f"- characteristic: {report['characteristic']}")
    lines.append(f"- commutative: {report['commutative']}")
    sizes = report["subset_sizes"]
    lines.append("")
    lines.append("| subset | size |")
    lines.append("|---|---|")
    for name in ("units", "nilpotents", "idempotents", "potents",
                 "torsion_units", "unipotents", "center", "jacobson"):
        lines.append(f"| {name} | {sizes[name]} |")
    lines.append("")
    lines.append("| predicate | holds | counterexample |")
    lines.append("|---|---|---|")
    for kind, entry in report["predicates"].items():
        cx = entry.get("counterexample_pretty", "")
        lines.append(f"| {kind} | {entry['holds']} | {cx} |")
    ni = report["ni"]
    lines.append("")
    lines.append(f"- NI (nilpotents form an ideal): {ni['is_ni']}"
                 + (f", max nilpotency index {ni['max_nilpotency_index']}"
                    if ni["max_nilpotency_index"] is not None else ""))
    if "counterexample" in ni:
        cx = ni["counterexample"]
        lines.append(f"  - violated by {cx['kind']}: a = {cx['a_pretty']}, "
                     f"b = {cx['b_pretty']}")
    lines.append(f"- weakly 2-primal (Nil = J): {report['weakly_2_primal']}")
    ug = report["unit_group"]
    if "error" in ug:
        lines.append(f"- unit group: {ug['error']}")
    else:
        lines.append(f"- unit group nilpotent: {ug['is_nilpotent']}"
                     + (f" (class {ug['nilpotency_class']})"
                        if ug["nilpotency_class"] is not None else "")
                     + f", {ug['unit_count']} units, "
                       f"{ug['generator_count']} generators")
    if "timing" in report:
        lines.append(f"- elapsed: {report['timing']['seconds']} s")
    lines.append("")
    return "\n".join(lines)
