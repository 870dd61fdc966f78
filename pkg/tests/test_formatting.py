"""Rendering and parsing of elements across every backend.

The load-bearing property is the round trip: parse(pretty(x)) == x for all
handles.  Literal integers are position-sensitive (a bare one is a handle,
a nested one is n * 1), so both readings get their own pins.
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ringlab.errors import ExprError
from ringlab.formatting import parse_element, pretty
from ringlab.rings import FiniteRing, realize
from ringlab.specs import parse_ring_spec

BACKENDS = ["Z/6", "Z/16", "GF(4)", "GF(9)", "GF(8)", "M(2,GF(2))",
            "M(2,Z/4)", "UT(2,Z/4)", "UT(3,GF(2))", "Prod(Z/2,Z/3)",
            "Prod(Z/4,GF(4))", "GR(Z/4,C2)", "GR(GF(2),C3)",
            "Quot(Z/8,[4])", "End(Ab[2,4])", "End(Ab[4])"]

_CACHE: dict[str, FiniteRing] = {}


def R(spec: str) -> FiniteRing:
    if spec not in _CACHE:
        _CACHE[spec] = realize(parse_ring_spec(spec))
    return _CACHE[spec]


@pytest.mark.parametrize("spec", BACKENDS)
def test_round_trip_every_handle(spec):
    ring = R(spec)
    for x in range(ring.order):
        assert parse_element(ring, pretty(ring, x)) == x, (spec, x)


@settings(max_examples=60)
@given(st.sampled_from(BACKENDS), st.data())
def test_round_trip_hypothesis(spec, data):
    ring = R(spec)
    x = data.draw(st.integers(min_value=0, max_value=ring.order - 1))
    assert parse_element(ring, pretty(ring, x)) == x


def test_pretty_pins():
    assert pretty(R("GF(9)"), 8) == "2*a + 2"
    assert pretty(R("GF(4)"), 2) == "a"
    assert pretty(R("M(2,GF(2))"), 8) == "[[1, 0], [0, 0]]"
    assert pretty(R("Prod(Z/2,Z/3)"), 5) == "(1, 2)"
    assert pretty(R("GR(Z/4,C2)"), 13) == "1 + 3*g1"
    assert pretty(R("GR(Z/4,C2)"), 8) == "2*g1"
    assert pretty(R("Z/6"), 4) == "4"


def test_bare_integer_is_a_handle():
    ring = R("M(2,GF(2))")
    assert parse_element(ring, "9") == 9        # identity matrix handle
    assert parse_element(ring, "0") == 0
    with pytest.raises(ExprError):
        parse_element(ring, "16")               # out of range
    with pytest.raises(ExprError):
        parse_element(ring, "-1")


def test_nested_integer_is_multiple_of_one():
    ring = R("M(2,GF(2))")
    # inside a literal, 1 means the ring one of the entry ring
    assert parse_element(ring, "[[1, 0], [0, 1]]") == ring.one
    # entries reduce mod the characteristic
    assert parse_element(ring, "[[3, 0], [0, 1]]") == ring.one
    gr = R("GR(Z/4,C2)")
    assert parse_element(gr, "5 + 2*g1") == parse_element(gr, "1 + 2*g1")


def test_product_components_are_sub_expressions():
    prod = R("Prod(Z/2,Z/3)")
    # components carry the factor ring's own syntax: bare ints are handles
    assert parse_element(prod, "(1, 2)") == 1 * 3 + 2
    with pytest.raises(ExprError):
        parse_element(prod, "(3, 4)")           # 3 is no Z/2 handle
    nested = R("Prod(Z/4,GF(4))")
    assert parse_element(nested, "(3, a)") == 3 * 4 + 2
    big = realize(parse_ring_spec("Prod(M(2,GF(2)),Z/2)"))
    h = parse_element(big, "([[1, 0], [0, 1]], 1)")
    assert h == big.one


def test_groupring_g_alias():
    gr = R("GR(Z/4,C2)")
    assert parse_element(gr, "g") == parse_element(gr, "g1")
    assert parse_element(gr, "1 + 3*g") == 13
    gr3 = R("GR(GF(2),C3)")
    assert parse_element(gr3, "1 + g1 + g2") == 7
    assert parse_element(gr3, "g2") == 4


def test_polynomial_parsing():
    gf9 = R("GF(9)")
    assert parse_element(gf9, "a") == 3
    assert parse_element(gf9, "a^2") == gf9.mul(3, 3)
    assert parse_element(gf9, "2*a + 2") == 8
    gf8 = R("GF(8)")
    assert parse_element(gf8, "a^3") == gf8.pow(2, 3)
    with pytest.raises(ExprError):
        parse_element(R("Z/5"), "a")            # prime field, no generator


def test_whitespace_tolerance():
    ring = R("M(2,GF(2))")
    assert parse_element(ring, " [[1,0],[0,0]] ") == 8
    gr = R("GR(Z/4,C2)")
    assert parse_element(gr, "1+3*g1") == 13


def test_matrix_errors():
    ring = R("M(2,GF(2))")
    for bad in ("[[1, 0]]", "[[1], [0]]", "[[1, 0], [0]]",
                "[[1, 0], [0, 1]", "[1, 0], [0, 1]]", "[[.]]"):
        with pytest.raises(ExprError):
            parse_element(ring, bad)
    ut = R("UT(2,Z/4)")
    with pytest.raises(ExprError):
        parse_element(ut, "[[1, 0], [1, 1]]")   # below-diagonal entry
    assert parse_element(ut, "[[1, 2], [0, 1]]") is not None


def test_end_ring_multiples():
    end = R("End(Ab[2,4])")
    # maps out of Z/2 into Z/4 must scale by 4/gcd(2,4) = 2, so the
    # below-diagonal slot only accepts even entries
    with pytest.raises(ExprError):
        parse_element(end, "[[0, 0], [1, 0]]")
    h = parse_element(end, "[[0, 0], [2, 0]]")
    assert pretty(end, h) == "[[0, 0], [2, 0]]"
    # entries reduce mod the target invariant, here q_0 = 2
    assert parse_element(end, "[[0, 2], [0, 0]]") == 0
    assert parse_element(end, pretty(end, end.one)) == end.one


def test_product_errors():
    prod = R("Prod(Z/2,Z/3)")
    for bad in ("(1,)", "(1, 2, 3)", "(1", "1, 2)"):
        with pytest.raises(ExprError):
            parse_element(prod, bad)


def test_quotient_canonical_representative():
    q = R("Quot(Z/8,[4])")
    for x in range(q.order):
        assert parse_element(q, pretty(q, x)) == x
    with pytest.raises(ExprError):
        parse_element(q, "6")                   # not a handle: order is 4


def test_garbage_rejected():
    ring = R("Z/6")
    for bad in ("", "  ", "one", "1 +", "* 2", "((1)"):
        with pytest.raises(ExprError):
            parse_element(ring, bad)
