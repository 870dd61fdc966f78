"""Ring realization against independent oracles.

Every backend is checked against arithmetic computed a second way:
integers mod n, numpy matrix products, naive convolution, brute-force
endomorphism enumeration.  Enumeration-order pins (which handle is which
element) are frozen here because certificates and reports quote handles.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ringlab.errors import InvalidSpec, OrderCapExceeded
from ringlab.rings import (FiniteRing, IdealHandle, end_abelian,
                           ideal_closure, min_irreducible, quotient, realize)
from ringlab.specs import parse_ring_spec


def R(spec: str, max_order: int = 65536) -> FiniteRing:
    return realize(parse_ring_spec(spec), max_order)


# ------------------------------------------------------------------ Z/n

@given(st.integers(2, 200), st.data())
@settings(max_examples=60, deadline=None)
def test_zmod_matches_integer_arithmetic(n, data):
    ring = R(f"Z/{n}")
    a = data.draw(st.integers(0, n - 1))
    b = data.draw(st.integers(0, n - 1))
    assert ring.add(a, b) == (a + b) % n
    assert ring.mul(a, b) == (a * b) % n
    assert ring.neg(a) == (-a) % n
    assert ring.sub(a, b) == (a - b) % n
    assert ring.pow(a, 5) == pow(a, 5, n)


def test_zmod_characteristic_and_one():
    ring = R("Z/12")
    assert ring.one == 1 and ring.characteristic == 12


# ------------------------------------------------------------ GF(p, k)

def _naive_min_irreducible(p, k):
    """Oracle: smallest monic irreducible by low-degree-first lex order,
    testing irreducibility by exhaustive root/product checks."""
    def poly_mul(f, g):
        out = [0] * (len(f) + len(g) - 1)
        for i, a in enumerate(f):
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
        return out

    def all_monic(deg):
        # elementwise lexicographic order, low-degree coefficient most
        # significant: (c0, c1, ...) ascending as tuples
        import itertools
        for coeffs in itertools.product(range(p), repeat=deg):
            yield list(coeffs) + [1]

    def reducible(f):
        deg = len(f) - 1
        for d in range(1, deg // 2 + 1):
            for g in all_monic(d):
                # trial division
                rem = list(f)
                while len(rem) >= len(g) and any(rem):
                    if len(rem) < len(g):
                        break
                    lead = rem[-1]
                    if lead:
                        shift = len(rem) - len(g)
                        for i, c in enumerate(g):
                            rem[shift + i] = (rem[shift + i] - lead * c) % p
                    rem.pop()
                if not any(rem):
                    return True
        return False

    for f in all_monic(k):
        if not reducible(f):
            return tuple(f)


@pytest.mark.parametrize("p,k", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3),
                                 (5, 2)])
def test_min_irreducible_matches_oracle(p, k):
    assert tuple(min_irreducible(p, k)) == _naive_min_irreducible(p, k)


def test_gf4_modulus_pin():
    # x^2 + x + 1; handle digits little-endian, so a = handle 2
    ring = R("GF(4)")
    a = 2
    assert ring.mul(a, a) == 3            # a^2 = a + 1
    assert ring.mul(a, 3) == 1            # a * (a+1) = a^2 + a = 1


def test_gf9_modulus_pin():
    # x^2 + 1 is the smallest monic irreducible over F_3: a^2 = -1 = 2
    ring = R("GF(9)")
    a = 3
    assert ring.mul(a, a) == 2


@pytest.mark.parametrize("spec", ["GF(4)", "GF(8)", "GF(9)", "GF(25)",
                                  "GF(27)"])
def test_galois_field_axioms(spec):
    ring = R(spec)
    q = ring.order
    xs = np.arange(q, dtype=np.int64)
    # multiplicative group: every nonzero x has x^(q-1) = 1
    acc = np.ones(q, dtype=np.int64) * ring.one
    for _ in range(q - 1):
        acc = ring.mul_many(acc, xs)
    assert (acc[1:] == ring.one).all()
    # Frobenius x -> x^p is additive
    p = ring.backend.p
    frob = xs.copy()
    for _ in range(p - 1):
        frob = ring.mul_many(frob, xs)
    ii, jj = np.meshgrid(xs, xs, indexing="ij")
    lhs = frob[ring.add_many(ii, jj)]
    rhs = ring.add_many(frob[ii], frob[jj])
    assert (lhs == rhs).all()


# ------------------------------------------------------------- matrices

def test_matrix_ring_matches_numpy():
    ring = R("M(2,Z/4)")
    rng = np.random.default_rng(7)
    hs = rng.integers(0, ring.order, size=50, dtype=np.int64)
    ks = rng.integers(0, ring.order, size=50, dtype=np.int64)
    for h, k in zip(hs.tolist(), ks.tolist()):
        A = np.array(ring.backend._decode_scalar(h)).reshape(2, 2)
        B = np.array(ring.backend._decode_scalar(k)).reshape(2, 2)
        got_mul = ring.backend._decode_scalar(ring.mul(h, k))
        assert got_mul == ((A @ B) % 4).ravel().tolist()
        got_add = ring.backend._decode_scalar(ring.add(h, k))
        assert got_add == ((A + B) % 4).ravel().tolist()


def test_matrix_encoding_big_endian_row_major():
    ring = R("M(2,GF(2))")
    # handle 8 = 0b1000: entries (1,0,0,0) row-major, i.e. E11
    assert ring.backend._decode_scalar(8) == [1, 0, 0, 0]
    assert ring.one == 0b1001


def test_upper_triangular_embeds_in_full_matrix_ring():
    ut = R("UT(2,Z/4)")
    full = R("M(2,Z/4)")

    def embed(h):
        a, b, c = ut.backend._decode_scalar(h)   # positions (0,0),(0,1),(1,1)
        return full.backend._encode_scalar([a, b, 0, c])

    rng = np.random.default_rng(3)
    for h, k in zip(rng.integers(0, ut.order, 40).tolist(),
                    rng.integers(0, ut.order, 40).tolist()):
        assert embed(ut.mul(h, k)) == full.mul(embed(h), embed(k))
        assert embed(ut.add(h, k)) == full.add(embed(h), embed(k))


def test_product_ring_componentwise():
    ring = R("Prod(Z/2,Z/3)")
    for x in range(6):
        for y in range(6):
            xl, xr = divmod(x, 3)
            yl, yr = divmod(y, 3)
            assert ring.mul(x, y) == (xl * yl % 2) * 3 + (xr * yr % 3)
            assert ring.add(x, y) == ((xl + yl) % 2) * 3 + ((xr + yr) % 3)


# ----------------------------------------------------------- group ring

def test_group_ring_convolution_oracle():
    ring = R("GR(Z/4,C2)")

    def conv(u, v):
        # naive convolution over C2: coefficient digits little-endian
        out = [0, 0]
        for i in range(2):
            for j in range(2):
                out[(i + j) % 2] = (out[(i + j) % 2]
                                    + (u >> (2 * i)) % 4 * ((v >> (2 * j)) % 4)) % 4

    # digits of handle h are base-4: c0 = h % 4, c1 = h // 4
    def coeffs(h):
        return [h % 4, h // 4]

    def conv2(u, v):
        cu, cv = coeffs(u), coeffs(v)
        out = [0, 0]
        for i in range(2):
            for j in range(2):
                out[(i + j) % 2] = (out[(i + j) % 2] + cu[i] * cv[j]) % 4
        return out[0] + 4 * out[1]

    for u in range(16):
        for v in range(16):
            assert ring.mul(u, v) == conv2(u, v)
            au, av = coeffs(u), coeffs(v)
            s = [(au[0] + av[0]) % 4, (au[1] + av[1]) % 4]
            assert ring.add(u, v) == s[0] + 4 * s[1]


def test_group_ring_identity_coefficient_first():
    ring = R("GR(Z/4,C2)")
    assert ring.one == 1          # 1 * identity
    # 1 + 3g has c0 = 1, c1 = 3 -> handle 1 + 3*4 = 13
    assert ring.backend._encode_scalar([1, 3]) == 13


# ------------------------------------------------------------- quotient

def test_quotient_z8_by_4_is_z4():
    q = R("Quot(Z/8,[4])")
    assert q.order == 4
    for a in range(4):
        for b in range(4):
            assert q.add(a, b) == (a + b) % 4
            assert q.mul(a, b) == (a * b) % 4


def test_quotient_rejects_unit_ideal():
    with pytest.raises(InvalidSpec):
        R("Quot(Z/8,[1])")


def test_quotient_representatives_are_smallest():
    base = R("Z/8")
    q = quotient(base, [4])
    assert tuple(q.backend._reps.tolist()) == (0, 1, 2, 3)


def test_ideal_closure_two_sided():
    ring = R("M(2,GF(2))")
    # the closure of E11 in a simple ring is everything
    closed = ideal_closure(ring, [8])
    assert len(closed) == ring.order
    closed.validate(ring)
    # a proper ideal: 2Z/8 inside Z/8
    z8 = R("Z/8")
    ideal = ideal_closure(z8, [2])
    assert ideal.handles == (0, 2, 4, 6)
    ideal.validate(z8)
    assert 4 in ideal and 3 not in ideal


# ---------------------------------------------------------- End(Ab[..])

def _brute_force_endomorphisms(qs):
    """Oracle: all additive maps of Z_q1 + ... + Z_qs as action tables on
    the underlying abelian group, composed directly."""
    import itertools
    n = 1
    for q in qs:
        n *= q

    def unpack(x):
        out = []
        for q in reversed(qs):
            out.append(x % q)
            x //= q
        return tuple(reversed(out))

    def pack(t):
        x = 0
        for v, q in zip(t, qs):
            x = x * q + v % q
        return x

    elements = [unpack(x) for x in range(n)]
    gens = []
    for i in range(len(qs)):
        e = [0] * len(qs)
        e[i] = 1
        gens.append(tuple(e))

    maps = []
    # a map is determined by images of generators; it is well defined iff
    # q_i * f(e_i) = 0
    for images in itertools.product(range(n), repeat=len(qs)):
        ok = True
        for i, img in enumerate(images):
            t = unpack(img)
            if any((qs[i] * v) % q for v, q in zip(t, qs)):
                ok = False
                break
        if not ok:
            continue
        table = []
        for x in elements:
            acc = tuple(0 for _ in qs)
            for coeff, img in zip(x, images):
                t = unpack(img)
                acc = tuple((a + coeff * v) % q
                            for a, v, q in zip(acc, t, qs))
            table.append(pack(acc))
        maps.append(tuple(table))
    return maps


@pytest.mark.parametrize("qs", [[2, 2], [4], [2, 4]])
def test_end_abelian_matches_brute_force(qs):
    ring = end_abelian(qs)
    oracle_maps = _brute_force_endomorphisms(qs)
    assert ring.order == len(set(oracle_maps)) == len(oracle_maps)

    # realize each handle as an action table via the m_ij values
    b = ring.backend
    s = len(qs)

    def action(h):
        vals = b._values(np.array([h], dtype=np.int64))[0].reshape(s, s)
        table = []
        n = 1
        for q in qs:
            n *= q

        def unpack(x):
            out = []
            for q in reversed(qs):
                out.append(x % q)
                x //= q
            return list(reversed(out))

        def pack(t):
            x = 0
            for v, q in zip(t, qs):
                x = x * q + v % q
            return x

        for x in range(n):
            xs = unpack(x)
            ys = [sum(int(vals[i][j]) * xs[j] for j in range(s)) % qs[i]
                  for i in range(s)]
            table.append(pack(ys))
        return tuple(table)

    handle_tables = {h: action(h) for h in range(ring.order)}
    assert set(handle_tables.values()) == set(oracle_maps)

    # ring ops = pointwise addition / composition of action tables
    rng = np.random.default_rng(5)
    for h, k in zip(rng.integers(0, ring.order, 60).tolist(),
                    rng.integers(0, ring.order, 60).tolist()):
        th, tk = handle_tables[h], handle_tables[k]
        n = len(th)

        def addt(u, v):
            def unpack(x):
                out = []
                for q in reversed(qs):
                    out.append(x % q)
                    x //= q
                return list(reversed(out))

            def pack(t):
                x = 0
                for vv, q in zip(t, qs):
                    x = x * q + vv % q
                return x
            return tuple(pack([a + b_ for a, b_ in
                               zip(unpack(u[i]), unpack(v[i]))])
                         for i in range(n))

        assert handle_tables[ring.add(h, k)] == addt(th, tk)
        # composition order: (f*g)(x) = f(g(x))
        assert handle_tables[ring.mul(h, k)] == tuple(th[tk[x]]
                                                      for x in range(n))


def test_end_22_has_16_elements_and_matches_m2f2():
    ring = end_abelian([2, 2])
    m2 = R("M(2,GF(2))")
    assert ring.order == m2.order == 16


# --------------------------------------------------- caps and bulk ops

def test_order_cap_checked_before_build():
    with pytest.raises(OrderCapExceeded):
        R("M(3,Z/7)")               # 7^9 = 40 million >> cap
    with pytest.raises(OrderCapExceeded):
        realize(parse_ring_spec("Z/100"), max_order=50)


def test_zero_ring_rejected():
    with pytest.raises(InvalidSpec):
        R("Z/1")


@pytest.mark.parametrize("spec", ["Z/7", "GF(8)", "M(2,GF(2))", "UT(2,Z/4)",
                                  "Prod(Z/2,Z/3)", "GR(Z/4,C2)",
                                  "Quot(Z/8,[4])", "End(Ab[2,4])"])
def test_bulk_ops_match_scalar(spec):
    ring = R(spec)
    rng = np.random.default_rng(11)
    a = rng.integers(0, ring.order, 200, dtype=np.int64)
    b = rng.integers(0, ring.order, 200, dtype=np.int64)
    assert all(int(x) == ring.add(int(u), int(v))
               for x, u, v in zip(ring.add_many(a, b), a, b))
    assert all(int(x) == ring.mul(int(u), int(v))
               for x, u, v in zip(ring.mul_many(a, b), a, b))
    assert all(int(x) == ring.neg(int(u))
               for x, u in zip(ring.neg_many(a), a))
    assert all(int(x) == ring.sub(int(u), int(v))
               for x, u, v in zip(ring.sub_many(a, b), a, b))


def test_lazy_backend_matches_integer_oracle():
    ring = R("Z/5000")             # above the eager-table cap
    rng = np.random.default_rng(13)
    a = rng.integers(0, 5000, 100, dtype=np.int64)
    b = rng.integers(0, 5000, 100, dtype=np.int64)
    assert (ring.mul_many(a, b) == (a * b) % 5000).all()
    assert (ring.add_many(a, b) == (a + b) % 5000).all()


def test_lazy_matrix_ring_matches_numpy():
    ring = R("M(2,Z/9)")           # order 6561, above the eager cap
    rng = np.random.default_rng(17)
    for h, k in zip(rng.integers(0, ring.order, 25).tolist(),
                    rng.integers(0, ring.order, 25).tolist()):
        A = np.array(ring.backend._decode_scalar(h)).reshape(2, 2)
        B = np.array(ring.backend._decode_scalar(k)).reshape(2, 2)
        assert (ring.backend._decode_scalar(ring.mul(h, k))
                == ((A @ B) % 9).ravel().tolist())


def test_is_commutative():
    assert R("Z/12").is_commutative()
    assert R("GF(8)").is_commutative()
    assert not R("M(2,GF(2))").is_commutative()
    assert not R("UT(2,GF(2))").is_commutative()
    assert not R("GR(GF(2),D3)").is_commutative()
    assert R("GR(Z/4,C2)").is_commutative()
