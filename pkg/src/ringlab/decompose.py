"""Additive decompositions x = a + b with verifiable certificates.

Each decomposition kind fixes a property for part_a and a property for
part_b.  The search enumerates candidates for part_b ascending over the
relevant structural subset (nilpotents, idempotents or units, whichever the
kind names) and tests a = x - b for the part_a property, so the returned
certificate always carries the lexicographically smallest part_b.  A failed
search is itself a result: ExhaustiveFailure proves absence because the
candidate set was enumerated completely.

Certificates record exponent witnesses so verify_certificate can re-check
every claim without repeating the search.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np

from .classify import power_data, _power_walk
from .errors import InvalidSpec, ZeroNotEligible
from .rings import FiniteRing

Array = np.ndarray

# kind -> (part_a property, part_b property, commutation required)
_KIND_TABLE: dict[str, tuple[str, str, bool]] = {
    "SemiNilClean": ("periodic", "nilpotent", False),
    "StronglySemiNilClean": ("periodic", "nilpotent", True),
    "WeaklyPeriodic": ("potent", "nilpotent", False),
    "Clean": ("unit", "idempotent", False),
    "NilClean": ("idempotent", "nilpotent", False),
    "StronglyNilClean": ("idempotent", "nilpotent", True),
    "SemiClean": ("periodic", "unit", False),
    "Fine": ("unit", "nilpotent", False),
    "TFine": ("torsion_unit", "nilpotent", False),
}

KINDS = tuple(_KIND_TABLE)

PREDICATE_KINDS = ("Periodic", "WeaklyPeriodic", "SemiNilClean",
                   "StronglySemiNilClean", "SemiClean", "Clean", "NilClean",
                   "Fine", "TFine", "UU", "PiUU", "UNC", "UnitSemiNilClean")

_ZERO_EXCLUDED = ("Fine", "TFine")


@dataclass(frozen=True)
class Certificate:
    kind: str
    target: int
    part_a: int
    part_b: int
    witnesses: dict[str, dict[str, Any]]
    commuting: bool


@dataclass(frozen=True)
class ExhaustiveFailure:
    kind: str
    target: int
    search_space_size: int
    enumerated: int


@dataclass(frozen=True)
class VerificationResult:
    ok: bool
    reason: str | None = None


@dataclass(frozen=True)
class PredicateResult:
    kind: str
    holds: bool
    counterexample: int | None
    checked: int


def _check_handle(R: FiniteRing, x: int) -> None:
    if not (0 <= x < R.order):
        raise InvalidSpec(f"{x} is not a handle of {R.spec_string}")


def _part_witness(R: FiniteRing, prop: str, h: int) -> dict[str, Any]:
    """Exponent data proving h has the property; assumes it does."""
    if prop == "periodic":
        mu, c = _power_walk(R, h)
        return {"property": "periodic", "m": mu, "n": mu + c}
    if prop == "potent":
        mu, c = _power_walk(R, h)
        return {"property": "potent", "exponent": c + 1}
    if prop in ("unit", "torsion_unit"):
        mu, c = _power_walk(R, h)
        return {"property": prop, "order": c}
    if prop == "idempotent":
        return {"property": "idempotent"}
    if prop == "nilpotent":
        mu, c = _power_walk(R, h)
        return {"property": "nilpotent", "index": mu}
    raise ValueError(f"unknown part property {prop}")


def _prop_mask(data, prop: str) -> Array:
    if prop == "periodic":
        return np.ones(data.mu.shape, dtype=bool)
    if prop == "potent":
        return data.potent
    if prop in ("unit", "torsion_unit"):
        return data.unit
    if prop == "idempotent":
        return data.idempotent
    if prop == "nilpotent":
        return data.nilpotent
    raise ValueError(f"unknown part property {prop}")


def decompose(R: FiniteRing, x: int, kind: str) -> Certificate | ExhaustiveFailure:
    """Search x = a + b for the given kind; smallest part_b wins."""
    if kind not in _KIND_TABLE:
        raise InvalidSpec(f"unknown decomposition kind {kind!r}")
    _check_handle(R, x)
    if kind in _ZERO_EXCLUDED and x == R.zero:
        raise ZeroNotEligible(f"{kind} decomposition is defined for non-zero "
                              "elements only")
    a_prop, b_prop, need_commute = _KIND_TABLE[kind]
    data = power_data(R)
    a_mask = _prop_mask(data, a_prop)
    candidates = np.nonzero(_prop_mask(data, b_prop))[0]
    enumerated = 0
    for b in candidates.tolist():
        enumerated += 1
        a = R.sub(x, b)
        if not a_mask[a]:
            continue
        if need_commute and R.mul(a, b) != R.mul(b, a):
            continue
        return Certificate(
            kind=kind,
            target=x,
            part_a=int(a),
            part_b=int(b),
            witnesses={"part_a": _part_witness(R, a_prop, a),
                       "part_b": _part_witness(R, b_prop, b)},
            commuting=R.mul(a, b) == R.mul(b, a),
        )
    return ExhaustiveFailure(kind=kind, target=x,
                             search_space_size=int(candidates.size),
                             enumerated=enumerated)


# ---------------------------------------------------------------------------
# Certificate verification (independent of the search)


def _verify_part(R: FiniteRing, h: int, prop: str,
                 witness: dict[str, Any] | None, code: str) -> str | None:
    """Re-check one part from its recorded witness; None means it holds."""
    if not isinstance(witness, dict):
        return code
    if prop == "periodic":
        m, n = witness.get("m"), witness.get("n")
        if not (isinstance(m, int) and isinstance(n, int) and 1 <= m < n):
            return code
        if R.pow(h, m) != R.pow(h, n):
            return code
    elif prop == "potent":
        n = witness.get("exponent")
        if not (isinstance(n, int) and n >= 2):
            return code
        if R.pow(h, n) != h:
            return code
    elif prop in ("unit", "torsion_unit"):
        t = witness.get("order")
        if not (isinstance(t, int) and t >= 1):
            return code
        if R.pow(h, t) != R.one:
            return code
    elif prop == "idempotent":
        if R.mul(h, h) != h:
            return code
    elif prop == "nilpotent":
        k = witness.get("index")
        if not (isinstance(k, int) and k >= 1):
            return code
        if R.pow(h, k) != R.zero:
            return code
    else:
        return code
    return None


_PROP_CODE = {
    "periodic": "Periodic",
    "potent": "Potent",
    "unit": "Unit",
    "torsion_unit": "TorsionUnit",
    "idempotent": "Idempotent",
    "nilpotent": "Nilpotent",
}


def verify_certificate(R: FiniteRing, cert: Certificate) -> VerificationResult:
    if cert.kind not in _KIND_TABLE:
        return VerificationResult(False, "UnknownKind")
    for h in (cert.target, cert.part_a, cert.part_b):
        if not (0 <= h < R.order):
            return VerificationResult(False, "InvalidHandle")
    a_prop, b_prop, need_commute = _KIND_TABLE[cert.kind]
    if cert.kind in _ZERO_EXCLUDED and cert.target == R.zero:
        return VerificationResult(False, "ZeroTarget")
    if R.add(cert.part_a, cert.part_b) != cert.target:
        return VerificationResult(False, "SumMismatch")
    bad = _verify_part(R, cert.part_a, a_prop,
                       cert.witnesses.get("part_a"),
                       f"PartANot{_PROP_CODE[a_prop]}")
    if bad:
        return VerificationResult(False, bad)
    bad = _verify_part(R, cert.part_b, b_prop,
                       cert.witnesses.get("part_b"),
                       f"PartBNot{_PROP_CODE[b_prop]}")
    if bad:
        return VerificationResult(False, bad)
    if need_commute and not cert.commuting:
        return VerificationResult(False, "CommutingRequired")
    if cert.commuting:
        if R.mul(cert.part_a, cert.part_b) != R.mul(cert.part_b, cert.part_a):
            return VerificationResult(False, "CommutingMismatch")
    return VerificationResult(True, None)


# ---------------------------------------------------------------------------
# Ring-level predicates


def _exists_scan(R: FiniteRing, targets: Array, b_set: Array, ok_mask: Array,
                 commute: bool = False) -> Array:
    """For each target x, does some b in b_set give ok_mask[x - b]
    (optionally with xb = bx)?  Vectorized over targets per candidate."""
    satisfied = np.zeros(targets.shape, dtype=bool)
    for b in b_set.tolist():
        todo = ~satisfied
        if not todo.any():
            break
        xs = targets[todo]
        bb = np.full(xs.shape, b, dtype=np.int64)
        cond = ok_mask[R.sub_many(xs, bb)]
        if commute:
            cond &= R.mul_many(xs, bb) == R.mul_many(bb, xs)
        sat = np.zeros(targets.shape, dtype=bool)
        sat[np.nonzero(todo)[0][cond]] = True
        satisfied |= sat
    return satisfied


def ring_predicate(R: FiniteRing, kind: str) -> PredicateResult:
    """Quantify a decomposition (or unit-set condition) over the ring.

    Universe: all elements; all non-zero elements for Fine/TFine; the units
    for UU, PiUU, UNC and UnitSemiNilClean.  The counterexample, when the
    predicate fails, is the smallest offending handle.
    """
    if kind not in PREDICATE_KINDS:
        raise InvalidSpec(f"unknown ring predicate {kind!r}")
    data = power_data(R)
    idx = np.arange(R.order, dtype=np.int64)
    nil = idx[data.nilpotent]
    units = idx[data.unit]
    idem = idx[data.idempotent]

    if kind == "Periodic":
        # every element of a finite ring has a power-walk witness; the sweep
        # above computed one for each, so the scan is the verification
        ok = (data.mu >= 1) & (data.cycle >= 1)
        return _result(kind, idx, ok)

    if kind in ("WeaklyPeriodic", "SemiNilClean", "StronglySemiNilClean",
                "NilClean"):
        a_mask = {"WeaklyPeriodic": data.potent,
                  "SemiNilClean": np.ones(R.order, dtype=bool),
                  "StronglySemiNilClean": np.ones(R.order, dtype=bool),
                  "NilClean": data.idempotent}[kind]
        ok = _exists_scan(R, idx, nil, a_mask,
                          commute=(kind == "StronglySemiNilClean"))
        return _result(kind, idx, ok)

    if kind == "Clean":
        ok = _exists_scan(R, idx, idem, data.unit)
        return _result(kind, idx, ok)

    if kind == "SemiClean":
        ok = _exists_scan(R, idx, units, np.ones(R.order, dtype=bool))
        return _result(kind, idx, ok)

    if kind in ("Fine", "TFine"):
        targets = idx[idx != R.zero]
        ok = _exists_scan(R, targets, nil, data.unit)
        return _result(kind, targets, ok)

    if kind == "UU":
        bad = data.unit & ~data.unipotent
        ok = ~bad[units]
        return _result(kind, units, ok)

    if kind == "PiUU":
        # some power of each unit is unipotent; u^(order) = 1 always is,
        # so walk powers up to the unit order
        satisfied = np.zeros(units.shape, dtype=bool)
        cur = units.copy()
        for _ in range(int(data.cycle[units].max()) if units.size else 0):
            satisfied |= data.unipotent[cur]
            if satisfied.all():
                break
            cur = R.mul_many(cur, units)
        return _result(kind, units, satisfied)

    if kind == "UNC":
        ok = _exists_scan(R, units, nil, data.idempotent)
        return _result(kind, units, ok)

    if kind == "UnitSemiNilClean":
        ok = _exists_scan(R, units, nil, np.ones(R.order, dtype=bool))
        return _result(kind, units, ok)

    raise AssertionError(kind)


def _result(kind: str, universe: Array, ok: Array) -> PredicateResult:
    if ok.all():
        return PredicateResult(kind, True, None, int(universe.size))
    first = int(universe[np.nonzero(~ok)[0][0]])
    return PredicateResult(kind, False, first, int(universe.size))


# ---------------------------------------------------------------------------
# Serialization


def certificate_to_json(cert: Certificate) -> dict[str, Any]:
    return {"kind": cert.kind, "target": cert.target, "part_a": cert.part_a,
            "part_b": cert.part_b, "witnesses": cert.witnesses,
            "commuting": cert.commuting}


def failure_to_json(f: ExhaustiveFailure) -> dict[str, Any]:
    return {"kind": f.kind, "target": f.target,
            "search_space_size": f.search_space_size}


def certificate_from_json(obj: dict[str, Any]) -> Certificate:
    return Certificate(kind=obj["kind"], target=int(obj["target"]),
                       part_a=int(obj["part_a"]), part_b=int(obj["part_b"]),
                       witnesses=obj["witnesses"],
                       commuting=bool(obj["commuting"]))
