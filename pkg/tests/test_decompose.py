"""Certificate search vs a brute-force oracle, verification reason codes,
ring-level predicates, JSON shapes.

The oracle below re-derives every part property from its definition and
replays the same ascending part_b scan, so agreement pins both the answer
and the tie-breaking rule.
"""

import importlib

import pytest

from ringlab.decompose import (KINDS, PREDICATE_KINDS, Certificate,
                               ExhaustiveFailure, certificate_from_json,
                               certificate_to_json, decompose,
                               failure_to_json, ring_predicate,
                               verify_certificate)
from ringlab.errors import InvalidSpec, ZeroNotEligible
from ringlab.rings import FiniteRing, realize
from ringlab.specs import parse_ring_spec

_KIND_TABLE = importlib.import_module("ringlab.decompose")._KIND_TABLE

SMALL = ["Z/4", "Z/6", "Z/8", "Z/12", "GF(4)", "GF(9)", "M(2,GF(2))",
         "UT(2,GF(2))", "Quot(Z/8,[4])", "GR(GF(2),C2)"]


def R(spec: str) -> FiniteRing:
    return realize(parse_ring_spec(spec))


# ---------------------------------------------------------------- oracle

def _is_nilpotent(ring, x):
    cur = x
    for _ in range(ring.order + 1):
        if cur == 0:
            return True
        cur = ring.mul(cur, x)
    return False


def _is_unit(ring, x):
    return any(ring.mul(x, y) == ring.one and ring.mul(y, x) == ring.one
               for y in range(ring.order))


def _is_potent(ring, x):
    cur = ring.mul(x, x)
    for _ in range(ring.order + 1):
        if cur == x:
            return True
        cur = ring.mul(cur, x)
    return False


def _is_periodic(ring, x):
    seen = set()
    cur = x
    for _ in range(ring.order + 2):
        if cur in seen:
            return True
        seen.add(cur)
        cur = ring.mul(cur, x)
    return False


_PROP = {
    "periodic": _is_periodic,
    "potent": _is_potent,
    "unit": _is_unit,
    "torsion_unit": _is_unit,   # finite ring: every unit has finite order
    "idempotent": lambda ring, x: ring.mul(x, x) == x,
    "nilpotent": _is_nilpotent,
}


def _oracle_decompose(ring, x, kind):
    """First (a, b) with b ascending; None if the search is empty-handed."""
    a_prop, b_prop, need_commute = _KIND_TABLE[kind]
    space = 0
    for b in range(ring.order):
        if not _PROP[b_prop](ring, b):
            continue
        space += 1
        a = ring.sub(x, b)
        if not _PROP[a_prop](ring, a):
            continue
        if need_commute and ring.mul(a, b) != ring.mul(b, a):
            continue
        return (a, b)
    return ("fail", space)


@pytest.mark.parametrize("spec", SMALL)
@pytest.mark.parametrize("kind", sorted(_KIND_TABLE))
def test_decompose_matches_oracle(spec, kind):
    ring = R(spec)
    zero_excluded = kind in ("Fine", "TFine")
    for x in range(ring.order):
        if zero_excluded and x == 0:
            continue
        got = decompose(ring, x, kind)
        expect = _oracle_decompose(ring, x, kind)
        if isinstance(got, Certificate):
            assert (got.part_a, got.part_b) == expect, (spec, kind, x)
            assert verify_certificate(ring, got).ok
        else:
            assert expect[0] == "fail", (spec, kind, x)
            assert got.search_space_size == expect[1]


def test_pinned_certificates():
    m2 = R("M(2,GF(2))")
    cert = decompose(m2, 8, "TFine")         # E11
    assert (cert.part_a, cert.part_b) == (7, 15)
    assert cert.witnesses["part_a"] == {"property": "torsion_unit",
                                        "order": 3}
    assert cert.witnesses["part_b"] == {"property": "nilpotent", "index": 2}
    assert cert.commuting is False

    z4 = R("Z/4")
    cert = decompose(z4, 2, "WeaklyPeriodic")
    assert (cert.part_a, cert.part_b) == (0, 2)
    cert = decompose(z4, 2, "Clean")
    assert (cert.part_a, cert.part_b) == (1, 1)
    fail = decompose(z4, 2, "TFine")
    assert isinstance(fail, ExhaustiveFailure)
    assert fail.search_space_size == 2       # nilpotents 0 and 2


def test_zero_not_eligible():
    z4 = R("Z/4")
    for kind in ("Fine", "TFine"):
        with pytest.raises(ZeroNotEligible):
            decompose(z4, 0, kind)
    # zero is a legitimate target for the additive kinds
    cert = decompose(z4, 0, "NilClean")
    assert verify_certificate(z4, cert).ok


def test_unknown_kind_and_bad_handle():
    z4 = R("Z/4")
    with pytest.raises(InvalidSpec):
        decompose(z4, 1, "Sparkly")
    with pytest.raises(Exception):
        decompose(z4, 4, "Clean")


# ------------------------------------------------------- verification

def test_verify_reason_codes():
    z4 = R("Z/4")
    m2 = R("M(2,GF(2))")
    nil_w = {"property": "nilpotent", "index": 2}
    unit_w = {"property": "unit", "order": 1}

    bad = Certificate("Sparkly", 1, 1, 0, {}, False)
    assert verify_certificate(z4, bad).reason == "UnknownKind"

    bad = Certificate("Clean", 4, 1, 1, {}, False)
    assert verify_certificate(z4, bad).reason == "InvalidHandle"

    bad = Certificate("TFine", 0, 1, 3, {}, False)
    assert verify_certificate(z4, bad).reason == "ZeroTarget"

    bad = Certificate("Clean", 3, 1, 1, {}, False)
    assert verify_certificate(z4, bad).reason == "SumMismatch"

    bad = Certificate("Clean", 2, 2, 0,
                      {"part_a": unit_w, "part_b": {"property": "idempotent"}},
                      False)
    assert verify_certificate(z4, bad).reason == "PartANotUnit"

    bad = Certificate("TFine", 2, 0, 2,
                      {"part_a": {"property": "torsion_unit", "order": 1},
                       "part_b": nil_w}, False)
    assert verify_certificate(z4, bad).reason == "PartANotTorsionUnit"

    bad = Certificate("Clean", 3, 1, 2,
                      {"part_a": unit_w, "part_b": {"property": "idempotent"}},
                      False)
    assert verify_certificate(z4, bad).reason == "PartBNotIdempotent"

    # sum-consistent tamper: 14 + 6 = 8 in M(2,GF(2)) with 14 a torsion
    # unit of order 3, but 6 is a permutation matrix, not nilpotent
    bad = Certificate("TFine", 8, 14, 6,
                      {"part_a": {"property": "torsion_unit", "order": 3},
                       "part_b": nil_w}, False)
    assert m2.add(14, 6) == 8
    assert verify_certificate(m2, bad).reason == "PartBNotNilpotent"

    good = decompose(z4, 2, "StronglySemiNilClean")
    bad = Certificate(good.kind, good.target, good.part_a, good.part_b,
                      good.witnesses, commuting=False)
    assert verify_certificate(z4, bad).reason == "CommutingRequired"

    # claimed commuting, parts genuinely do not commute
    bad = Certificate("Clean", 5, 13, 8,
                      {"part_a": {"property": "unit", "order": 2},
                       "part_b": {"property": "idempotent"}}, True)
    assert m2.add(13, 8) == 5
    assert m2.mul(13, 8) != m2.mul(8, 13)
    assert verify_certificate(m2, bad).reason == "CommutingMismatch"


def test_verify_rejects_missing_or_false_witness():
    z4 = R("Z/4")
    cert = decompose(z4, 2, "NilClean")
    stripped = Certificate(cert.kind, cert.target, cert.part_a, cert.part_b,
                           {}, cert.commuting)
    res = verify_certificate(z4, stripped)
    assert not res.ok and res.reason.startswith("Part")
    lied = Certificate(cert.kind, cert.target, cert.part_a, cert.part_b,
                       {"part_a": {"property": "idempotent"},
                        "part_b": {"property": "nilpotent", "index": 1}},
                       cert.commuting)
    assert verify_certificate(z4, lied).reason == "PartBNotNilpotent"


# ------------------------------------------------------- ring predicates

def _oracle_predicate(ring, kind):
    n = ring.order
    sets = {name: {x for x in range(n) if fn(ring, x)}
            for name, fn in _PROP.items()}
    units = sorted(sets["unit"])
    unipotent = {x for x in range(n)
                 if ring.sub(x, ring.one) in sets["nilpotent"]}

    def exists_sum(x, a_prop, b_prop, commute=False):
        for b in sorted(sets[b_prop]):
            a = ring.sub(x, b)
            if a not in sets[a_prop]:
                continue
            if commute and ring.mul(a, b) != ring.mul(b, a):
                continue
            return True
        return False

    if kind == "Periodic":
        universe = list(range(n))
        ok = [_is_periodic(ring, x) for x in universe]
    elif kind in _KIND_TABLE and kind not in ("Fine", "TFine"):
        a_prop, b_prop, commute = _KIND_TABLE[kind]
        universe = list(range(n))
        ok = [exists_sum(x, a_prop, b_prop, commute) for x in universe]
    elif kind in ("Fine", "TFine"):
        a_prop, b_prop, commute = _KIND_TABLE[kind]
        universe = [x for x in range(n) if x != 0]
        ok = [exists_sum(x, a_prop, b_prop, commute) for x in universe]
    elif kind == "UU":
        universe = units
        ok = [u in unipotent for u in universe]
    elif kind == "PiUU":
        universe = units
        ok = []
        for u in universe:
            cur, hit = u, False
            for _ in range(n):
                if cur in unipotent:
                    hit = True
                    break
                cur = ring.mul(cur, u)
            ok.append(hit)
    elif kind == "UNC":
        universe = units
        ok = [exists_sum(u, "idempotent", "nilpotent") for u in universe]
    elif kind == "UnitSemiNilClean":
        universe = units
        ok = [exists_sum(u, "periodic", "nilpotent") for u in universe]
    else:
        raise AssertionError(kind)

    holds = all(ok)
    counterexample = None if holds else universe[ok.index(False)]
    return holds, counterexample, len(universe)


@pytest.mark.parametrize("spec", SMALL)
@pytest.mark.parametrize("kind", PREDICATE_KINDS)
def test_ring_predicate_matches_oracle(spec, kind):
    ring = R(spec)
    got = ring_predicate(ring, kind)
    holds, cex, checked = _oracle_predicate(ring, kind)
    assert got.holds == holds, (spec, kind)
    assert got.counterexample == cex, (spec, kind)
    assert got.checked == checked, (spec, kind)


def test_predicate_pins():
    z4 = R("Z/4")
    res = ring_predicate(z4, "TFine")
    assert not res.holds and res.counterexample == 2 and res.checked == 3
    assert ring_predicate(z4, "NilClean").holds
    assert ring_predicate(z4, "UU").holds
    assert ring_predicate(R("M(2,GF(2))"), "TFine").holds
    res = ring_predicate(R("Z/6"), "UU")
    assert not res.holds and res.counterexample == 5 and res.checked == 2
    assert ring_predicate(R("Z/6"), "Periodic").holds
    with pytest.raises(InvalidSpec):
        ring_predicate(z4, "Shiny")


def test_kind_constants():
    assert set(_KIND_TABLE) <= set(KINDS) | {"StronglyNilClean"}
    assert len(PREDICATE_KINDS) == 13


# ------------------------------------------------------------- JSON

def test_certificate_json_round_trip():
    m2 = R("M(2,GF(2))")
    cert = decompose(m2, 8, "TFine")
    obj = certificate_to_json(cert)
    assert set(obj) == {"kind", "target", "part_a", "part_b", "witnesses",
                        "commuting"}
    back = certificate_from_json(obj)
    assert back == cert
    assert verify_certificate(m2, back).ok


def test_failure_json_shape():
    z4 = R("Z/4")
    fail = decompose(z4, 2, "TFine")
    obj = failure_to_json(fail)
    assert set(obj) == {"kind", "target", "search_space_size"}
    assert obj == {"kind": "TFine", "target": 2, "search_space_size": 2}
