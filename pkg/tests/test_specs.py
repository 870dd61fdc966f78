"""Spec grammar: parsing, rendering, and order arithmetic."""

import pytest

from ringlab.errors import InvalidSpec
from ringlab.specs import (Cyclic, Dihedral, DirectProductGroup, EndAbelian,
                           GaloisField, GroupRing, Matrix, Product, Quotient,
                           UpperTriangular, ZMod, group_order, is_prime,
                           parse_group_spec, parse_ring_spec, prime_power,
                           render, render_group, spec_order)


def test_is_prime_against_sieve():
    # independent oracle: sieve of Eratosthenes
    limit = 500
    sieve = [True] * (limit + 1)
    sieve[0] = sieve[1] = False
    for i in range(2, limit + 1):
        if sieve[i]:
            for j in range(i * i, limit + 1, i):
                sieve[j] = False
    for n in range(limit + 1):
        assert is_prime(n) == sieve[n], n


def test_prime_power_against_factorization():
    def oracle(q):
        if q < 2:
            return None
        for p in range(2, q + 1):
            if q % p == 0:
                k = 0
                while q % p == 0:
                    q //= p
                    k += 1
                return (p, k) if q == 1 else None
    for q in range(200):
        assert prime_power(q) == oracle(q), q


@pytest.mark.parametrize("text,expected", [
    ("Z/4", ZMod(4)),
    ("GF(2,2)", GaloisField(2, 2)),
    ("GF(4)", GaloisField(2, 2)),
    ("GF(27)", GaloisField(3, 3)),
    ("M(2,GF(2))", Matrix(2, GaloisField(2, 1))),
    ("UT(2,Z/4)", UpperTriangular(2, ZMod(4))),
    ("Prod(Z/2,Z/3)", Product(ZMod(2), ZMod(3))),
    ("GR(Z/4,C2)", GroupRing(ZMod(4), Cyclic(2))),
    ("GR(GF(2),C2xC2)",
     GroupRing(GaloisField(2, 1),
               DirectProductGroup((Cyclic(2), Cyclic(2))))),
    ("GR(GF(2),D3)", GroupRing(GaloisField(2, 1), Dihedral(3))),
    ("Quot(Z/8,[4])", Quotient(ZMod(8), (4,))),
    ("End(Ab[2,2])", EndAbelian((2, 2))),
    ("M(2,Prod(Z/2,Z/3))", Matrix(2, Product(ZMod(2), ZMod(3)))),
])
def test_parse_ring_spec(text, expected):
    assert parse_ring_spec(text) == expected


def test_render_round_trip():
    for text in ("Z/4", "GF(2,2)", "M(2,GF(2,1))", "UT(3,Z/4)",
                 "Prod(Z/2,GR(Z/4,C2))", "Quot(Z/8,[2,4])", "End(Ab[2,4])",
                 "GR(GF(3,1),C3xC3)", "GR(Z/2,D4)"):
        spec = parse_ring_spec(text)
        assert parse_ring_spec(render(spec)) == spec


def test_group_spec_round_trip():
    for text in ("C2", "C12", "C2xC2xC3", "D3", "D5"):
        g = parse_group_spec(text)
        assert parse_group_spec(render_group(g)) == g


@pytest.mark.parametrize("bad", [
    "GF(6)", "Prod(Z/2)", "GR(Z/2)", "Quot(Z/8)", "wat", "Z4",
    "M(2,GF(2)", "GF(2,2,2)",
])
def test_bad_grammar_rejected_at_parse(bad):
    with pytest.raises(InvalidSpec):
        parse_ring_spec(bad)


@pytest.mark.parametrize("bad", [
    "Z/0", "Z/-3", "GF(4,0)", "M(0,Z/2)", "UT(1,Z/2)", "End(Ab[6])",
])
def test_bad_values_rejected_at_order_check(bad):
    spec = parse_ring_spec(bad)
    with pytest.raises(InvalidSpec):
        spec_order(spec)


def test_spec_order_formulas():
    assert spec_order(parse_ring_spec("Z/12")) == 12
    assert spec_order(parse_ring_spec("GF(27)")) == 27
    assert spec_order(parse_ring_spec("M(2,Z/4)")) == 4 ** 4
    assert spec_order(parse_ring_spec("UT(2,Z/4)")) == 4 ** 3
    assert spec_order(parse_ring_spec("Prod(Z/2,Z/3)")) == 6
    assert spec_order(parse_ring_spec("GR(Z/4,C2)")) == 16
    assert spec_order(parse_ring_spec("GR(GF(2),D3)")) == 64
    # |End(Z_2 + Z_4)| = prod gcd(q_i, q_j) = 2*2*2*4
    assert spec_order(parse_ring_spec("End(Ab[2,4])")) == 32
    assert group_order(parse_group_spec("D6")) == 12
    assert group_order(parse_group_spec("C2xC3xC4")) == 24
