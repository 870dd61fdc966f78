"""Finite rings on canonical integer handles.

A realized ring enumerates its elements as handles 0..order-1 (handle 0 is the
zero element) and exposes exact arithmetic both element-wise and in bulk over
numpy arrays of handles.  Operation tables are materialized eagerly for orders
up to 4096 and computed on demand above that.

Enumeration orders (all deterministic):
  * Z/n by residue;
  * GF(p,k) by polynomial coefficient vector, base-p digits low-degree-first
    (the constant term is the least significant digit);
  * matrices and upper-triangular matrices row-major over the inner
    enumeration, products and End(A) lexicographic — i.e. the component tuple
    read left to right is a big-endian mixed-radix numeral;
  * group rings by coefficient vector indexed by group element (identity
    first), the identity coefficient being the least significant digit;
  * quotients by smallest coset representative, ascending.
"""

from __future__ import annotations

import bisect
import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidSpec, OrderCapExceeded
from .groups import GroupTable, realize_group
from .specs import (EndAbelian, GaloisField, GroupRing, Matrix, Product,
                    Quotient, RingSpec, UpperTriangular, ZMod, is_prime,
                    render, spec_order, _gcd)

DEFAULT_MAX_ORDER = 65_536
EAGER_TABLE_CAP = 4_096

Array = np.ndarray


def _as_idx(xs) -> Array:
    return np.asarray(xs, dtype=np.int64)


# ---------------------------------------------------------------------------
# Backends: scalar and bulk arithmetic per constructor


class _ZModBackend:
    def __init__(self, n: int) -> None:
        self.order = n
        self.one = 1 % n

    def add(self, x: int, y: int) -> int:
        return (x + y) % self.order

    def mul(self, x: int, y: int) -> int:
        return (x * y) % self.order

    def neg(self, x: int) -> int:
        return (-x) % self.order

    def add_many(self, xs: Array, ys: Array) -> Array:
        return (xs + ys) % self.order

    def mul_many(self, xs: Array, ys: Array) -> Array:
        return (xs * ys) % self.order

    def neg_many(self, xs: Array) -> Array:
        return (-xs) % self.order


def _poly_divmod(num: list[int], den: list[int], p: int) -> tuple[list[int], list[int]]:
    """Polynomial division over F_p; coefficient lists low-degree-first."""
    num = list(num)
    dd = len(den) - 1
    inv_lead = pow(den[-1], p - 2, p) if p > 2 else den[-1]
    quot = [0] * max(1, len(num) - dd)
    while len(num) - 1 >= dd and any(num):
        while num and num[-1] == 0:
            num.pop()
        if len(num) - 1 < dd:
            break
        shift = len(num) - 1 - dd
        factor = (num[-1] * inv_lead) % p
        quot[shift] = factor
        for i, c in enumerate(den):
            num[shift + i] = (num[shift + i] - factor * c) % p
    while num and num[-1] == 0:
        num.pop()
    return quot, num


def _is_irreducible(f: list[int], p: int) -> bool:
    """Trial division by all monic polynomials of degree 1..deg(f)//2."""
    k = len(f) - 1
    for d in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            g = list(tail) + [1]
            _, rem = _poly_divmod(f, g, p)
            if not rem:
                return False
    return True


def min_irreducible(p: int, k: int) -> list[int]:
    """Lexicographically smallest monic irreducible of degree k over F_p.

    Coefficients are compared low-degree-first; the returned list has length
    k + 1 with trailing coefficient 1.
    """
    for tail in itertools.product(range(p), repeat=k):
        f = list(tail) + [1]
        if _is_irreducible(f, p):
            return f
    raise InvalidSpec(f"no irreducible polynomial of degree {k} over F_{p}")


class _GaloisBackend:
    def __init__(self, p: int, k: int) -> None:
        self.p = p
        self.k = k
        self.order = p ** k
        self.one = 1
        self.modulus = min_irreducible(p, k)
        n = self.order
        digits = np.empty((n, k), dtype=np.int32)
        h = np.arange(n, dtype=np.int64)
        for i in range(k):
            digits[:, i] = (h // p**i) % p
        self._digits = digits
        self._weights = np.array([p**i for i in range(k)], dtype=np.int64)
        # x^(k+m) mod f as digit vectors, m = 0..k-2
        red = np.zeros((max(0, k - 1), k), dtype=np.int64)
        cur = [(-c) % p for c in self.modulus[:k]]  # x^k mod f
        for m in range(k - 1):
            red[m] = cur
            # multiply by x, then fold the overflowing degree-k term back in
            carry = cur[-1]
            shifted = [0] + cur[:-1]
            cur = [(a + carry * ((-c) % p)) % p
                   for a, c in zip(shifted, self.modulus[:k])]
        self._reduction = red

    def _encode(self, digs: Array) -> Array:
        return digs @ self._weights

    def add(self, x: int, y: int) -> int:
        return int(self.add_many(_as_idx([x]), _as_idx([y]))[0])

    def mul(self, x: int, y: int) -> int:
        return int(self.mul_many(_as_idx([x]), _as_idx([y]))[0])

    def neg(self, x: int) -> int:
        return int(self.neg_many(_as_idx([x]))[0])

    def add_many(self, xs: Array, ys: Array) -> Array:
        digs = (self._digits[xs].astype(np.int64) + self._digits[ys]) % self.p
        return self._encode(digs)

    def neg_many(self, xs: Array) -> Array:
        return self._encode((-self._digits[xs].astype(np.int64)) % self.p)

    def mul_many(self, xs: Array, ys: Array) -> Array:
        k, p = self.k, self.p
        X = self._digits[xs].astype(np.int64)
        Y = self._digits[ys].astype(np.int64)
        conv = np.zeros(X.shape[:-1] + (2 * k - 1,), dtype=np.int64)
        for i in range(k):
            for j in range(k):
                conv[..., i + j] += X[..., i] * Y[..., j]
        conv %= p
        res = conv[..., :k].copy()
        for m in range(k - 1):
            res += conv[..., k + m:k + m + 1] * self._reduction[m]
        return self._encode(res % p)


class _MatrixShapeMixin:
    """Shared decode/encode for entrywise-encoded backends (big-endian)."""

    def _init_codes(self, inner, positions: int) -> None:
        q = inner.order
        n_elems = q ** positions
        self.order = n_elems
        self._q = q
        w = np.array([q ** (positions - 1 - t) for t in range(positions)],
                     dtype=np.int64)
        self._weights = w
        dec = np.empty((n_elems, positions), dtype=np.int32)
        h = np.arange(n_elems, dtype=np.int64)
        for t in range(positions):
            dec[:, t] = (h // w[t]) % q
        self._dec = dec

    def _decode_scalar(self, x: int) -> list[int]:
        return [int(v) for v in self._dec[x]]

    def _encode_scalar(self, entries: Sequence[int]) -> int:
        acc = 0
        for v in entries:
            acc = acc * self._q + int(v)
        return acc


class _MatrixBackend(_MatrixShapeMixin):
    def __init__(self, n: int, inner: "FiniteRing") -> None:
        self.n = n
        self.inner = inner
        self._init_codes(inner, n * n)
        self.one = self._encode_scalar(
            [inner.one if i == j else 0 for i in range(n) for j in range(n)])

    def add(self, x: int, y: int) -> int:
        R = self.inner
        xs, ys = self._decode_scalar(x), self._decode_scalar(y)
        return self._encode_scalar([R.add(a, b) for a, b in zip(xs, ys)])

    def neg(self, x: int) -> int:
        R = self.inner
        return self._encode_scalar([R.neg(a) for a in self._decode_scalar(x)])

    def mul(self, x: int, y: int) -> int:
        R, n = self.inner, self.n
        X, Y = self._decode_scalar(x), self._decode_scalar(y)
        out = []
        for i in range(n):
            for j in range(n):
                acc = 0
                for k in range(n):
                    acc = R.add(acc, R.mul(X[i * n + k], Y[k * n + j]))
                out.append(acc)
        return self._encode_scalar(out)

    def add_many(self, xs: Array, ys: Array) -> Array:
        R = self.inner
        X = self._dec[xs].astype(np.int64)
        Y = self._dec[ys].astype(np.int64)
        out = np.empty_like(X)
        for t in range(X.shape[-1]):
            out[..., t] = R.add_many(X[..., t], Y[..., t])
        return self._encode_bulk(out)

    def _encode_bulk(self, entries: Array) -> Array:
        q = self._q
        acc = np.zeros(entries.shape[:-1], dtype=np.int64)
        for t in range(entries.shape[-1]):
            acc = acc * q + entries[..., t]
        return acc

    def neg_many(self, xs: Array) -> Array:
        R = self.inner
        X = self._dec[xs].astype(np.int64)
        out = np.empty_like(X)
        for t in range(X.shape[-1]):
            out[..., t] = R.neg_many(X[..., t])
        return self._encode_bulk(out)

    def mul_many(self, xs: Array, ys: Array) -> Array:
        R, n = self.inner, self.n
        X = self._dec[xs].astype(np.int64)
        Y = self._dec[ys].astype(np.int64)
        out = np.empty_like(X)
        for i in range(n):
            for j in range(n):
                acc = R.mul_many(X[..., i * n], Y[..., j])
                for k in range(1, n):
                    acc = R.add_many(acc, R.mul_many(X[..., i * n + k],
                                                     Y[..., k * n + j]))
                out[..., i * n + j] = acc
        return self._encode_bulk(out)


class _UpperTriangularBackend(_MatrixShapeMixin):
    def __init__(self, n: int, inner: "FiniteRing") -> None:
        self.n = n
        self.inner = inner
        self.positions = [(i, j) for i in range(n) for j in range(i, n)]
        self._pos_index = {pos: t for t, pos in enumerate(self.positions)}
        self._init_codes(inner, len(self.positions))
        self.one = self._encode_scalar(
            [inner.one if i == j else 0 for (i, j) in self.positions])

    def add(self, x: int, y: int) -> int:
        R = self.inner
        return self._encode_scalar([R.add(a, b) for a, b in
                                    zip(self._decode_scalar(x), self._decode_scalar(y))])

    def neg(self, x: int) -> int:
        R = self.inner
        return self._encode_scalar([R.neg(a) for a in self._decode_scalar(x)])

    def mul(self, x: int, y: int) -> int:
        R = self.inner
        X, Y = self._decode_scalar(x), self._decode_scalar(y)
        out = []
        for (i, j) in self.positions:
            acc = 0
            for k in range(i, j + 1):
                acc = R.add(acc, R.mul(X[self._pos_index[(i, k)]],
                                       Y[self._pos_index[(k, j)]]))
            out.append(acc)
        return self._encode_scalar(out)

    def _encode_bulk(self, entries: Array) -> Array:
        q = self._q
        acc = np.zeros(entries.shape[:-1], dtype=np.int64)
        for t in range(entries.shape[-1]):
            acc = acc * q + entries[..., t]
        return acc

    def add_many(self, xs: Array, ys: Array) -> Array:
        R = self.inner
        X = self._dec[xs].astype(np.int64)
        Y = self._dec[ys].astype(np.int64)
        out = np.empty_like(X)
        for t in range(X.shape[-1]):
            out[..., t] = R.add_many(X[..., t], Y[..., t])
        return self._encode_bulk(out)

    def neg_many(self, xs: Array) -> Array:
        R = self.inner
        X = self._dec[xs].astype(np.int64)
        out = np.empty_like(X)
        for t in range(X.shape[-1]):
            out[..., t] = R.neg_many(X[..., t])
        return self._encode_bulk(out)

    def mul_many(self, xs: Array, ys: Array) -> Array:
        R = self.inner
        X = self._dec[xs].astype(np.int64)
        Y = self._dec[ys].astype(np.int64)
        out = np.empty_like(X)
        for t, (i, j) in enumerate(self.positions):
            acc = None
            for k in range(i, j + 1):
                term = R.mul_many(X[..., self._pos_index[(i, k)]],
                                  Y[..., self._pos_index[(k, j)]])
                acc = term if acc is None else R.add_many(acc, term)
            out[..., t] = acc
        return self._encode_bulk(out)


class _ProductBackend:
    def __init__(self, left: "FiniteRing", right: "FiniteRing") -> None:
        self.left = left
        self.right = right
        self.order = left.order * right.order
        self.one = left.one * right.order + right.one

    def add(self, x: int, y: int) -> int:
        m = self.right.order
        return self.left.add(x // m, y // m) * m + self.right.add(x % m, y % m)

    def mul(self, x: int, y: int) -> int:
        m = self.right.order
        return self.left.mul(x // m, y // m) * m + self.right.mul(x % m, y % m)

    def neg(self, x: int) -> int:
        m = self.right.order
        return self.left.neg(x // m) * m + self.right.neg(x % m)

    def add_many(self, xs: Array, ys: Array) -> Array:
        m = self.right.order
        return (self.left.add_many(xs // m, ys // m) * m
                + self.right.add_many(xs % m, ys % m))

    def mul_many(self, xs: Array, ys: Array) -> Array:
        m = self.right.order
        return (self.left.mul_many(xs // m, ys // m) * m
                + self.right.mul_many(xs % m, ys % m))

    def neg_many(self, xs: Array) -> Array:
        m = self.right.order
        return self.left.neg_many(xs // m) * m + self.right.neg_many(xs % m)


class _GroupRingBackend:
    """Coefficient vectors over the group, identity coefficient first.

    Handle = sum of coeff_i * |R|^i over group indices i (little-endian).
    """

    def __init__(self, coeff: "FiniteRing", group: GroupTable) -> None:
        self.coeff = coeff
        self.group = group
        q = coeff.order
        g = group.order
        self.order = q ** g
        self.one = coeff.one  # coefficient of the identity, digit 0
        dec = np.empty((self.order, g), dtype=np.int32)
        h = np.arange(self.order, dtype=np.int64)
        for i in range(g):
            dec[:, i] = (h // q**i) % q
        self._dec = dec
        self._weights = np.array([q**i for i in range(g)], dtype=np.int64)

    def coeffs(self, x: int) -> list[int]:
        return [int(v) for v in self._dec[x]]

    def _encode_scalar(self, cs: Sequence[int]) -> int:
        return int(sum(int(c) * int(w) for c, w in zip(cs, self._weights)))

    def add(self, x: int, y: int) -> int:
        R = self.coeff
        return self._encode_scalar([R.add(a, b) for a, b in
                                    zip(self.coeffs(x), self.coeffs(y))])

    def neg(self, x: int) -> int:
        R = self.coeff
        return self._encode_scalar([R.neg(a) for a in self.coeffs(x)])

    def mul(self, x: int, y: int) -> int:
        R, G = self.coeff, self.group
        X, Y = self.coeffs(x), self.coeffs(y)
        out = [0] * G.order
        for i in range(G.order):
            if X[i] == 0:
                continue
            for j in range(G.order):
                if Y[j] == 0:
                    continue
                k = G.mul(i, j)
                out[k] = R.add(out[k], R.mul(X[i], Y[j]))
        return self._encode_scalar(out)

    def add_many(self, xs: Array, ys: Array) -> Array:
        R = self.coeff
        X = self._dec[xs].astype(np.int64)
        Y = self._dec[ys].astype(np.int64)
        out = np.empty_like(X)
        for i in range(X.shape[-1]):
            out[..., i] = R.add_many(X[..., i], Y[..., i])
        return out @ self._weights

    def neg_many(self, xs: Array) -> Array:
        R = self.coeff
        X = self._dec[xs].astype(np.int64)
        out = np.empty_like(X)
        for i in range(X.shape[-1]):
            out[..., i] = R.neg_many(X[..., i])
        return out @ self._weights

    def mul_many(self, xs: Array, ys: Array) -> Array:
        R, G = self.coeff, self.group
        X = self._dec[xs].astype(np.int64)
        Y = self._dec[ys].astype(np.int64)
        g = G.order
        out = np.zeros_like(X)
        for i in range(g):
            for j in range(g):
                k = G.mul(i, j)
                out[..., k] = R.add_many(out[..., k],
                                         R.mul_many(X[..., i], Y[..., j]))
        return out @ self._weights


class _QuotientBackend:
    def __init__(self, inner: "FiniteRing", ideal: Array) -> None:
        self.inner = inner
        n = inner.order
        rep_map = np.full(n, -1, dtype=np.int64)
        reps = []
        for h in range(n):
            if rep_map[h] >= 0:
                continue
            coset = inner.add_many(np.full(len(ideal), h, dtype=np.int64), ideal)
            rep_map[coset] = h  # h ascending, so h is the smallest in its coset
            reps.append(h)
        self._rep_map = rep_map
        self._reps = np.array(reps, dtype=np.int64)
        self.order = len(reps)
        self.one = int(np.searchsorted(self._reps, rep_map[inner.one]))

    def lift(self, x: int) -> int:
        return int(self._reps[x])

    def _project_scalar(self, h: int) -> int:
        return int(np.searchsorted(self._reps, self._rep_map[h]))

    def add(self, x: int, y: int) -> int:
        return self._project_scalar(self.inner.add(self.lift(x), self.lift(y)))

    def mul(self, x: int, y: int) -> int:
        return self._project_scalar(self.inner.mul(self.lift(x), self.lift(y)))

    def neg(self, x: int) -> int:
        return self._project_scalar(self.inner.neg(self.lift(x)))

    def _project(self, hs: Array) -> Array:
        return np.searchsorted(self._reps, self._rep_map[hs])

    def add_many(self, xs: Array, ys: Array) -> Array:
        return self._project(self.inner.add_many(self._reps[xs], self._reps[ys]))

    def mul_many(self, xs: Array, ys: Array) -> Array:
        return self._project(self.inner.mul_many(self._reps[xs], self._reps[ys]))

    def neg_many(self, xs: Array) -> Array:
        return self._project(self.inner.neg_many(self._reps[xs]))


class _EndAbelianBackend:
    """End(Z_q1 + ... + Z_qs): matrices (m_ij) with m_ij in (q_i/g_ij)Z_{q_i}.

    Position (i,j) stores t_ij in range(g_ij) with m_ij = t_ij * q_i / g_ij;
    handle = big-endian mixed-radix numeral of the t_ij read row-major.
    """

    def __init__(self, invariants: Sequence[int]) -> None:
        qs = list(invariants)
        s = len(qs)
        self.qs = qs
        self.s = s
        g = [[_gcd(qs[i], qs[j]) for j in range(s)] for i in range(s)]
        self.g = g
        self.mult = [[qs[i] // g[i][j] for j in range(s)] for i in range(s)]
        radices = [g[i][j] for i in range(s) for j in range(s)]
        self._radices = radices
        order = 1
        for r in radices:
            order *= r
        self.order = order
        # decode all handles to t-digit matrices
        dec = np.empty((order, s * s), dtype=np.int32)
        h = np.arange(order, dtype=np.int64)
        w = np.empty(s * s, dtype=np.int64)
        acc = 1
        for t in range(s * s - 1, -1, -1):
            w[t] = acc
            acc *= radices[t]
        for t in range(s * s):
            dec[:, t] = (h // w[t]) % radices[t]
        self._dec = dec
        self._w = w
        self.one = self._encode_t(
            [1 if i == j else 0 for i in range(s) for j in range(s)])
        mult_flat = np.array([self.mult[i][j] for i in range(s) for j in range(s)],
                             dtype=np.int64)
        mods_flat = np.array([qs[i] for i in range(s) for j in range(s)],
                             dtype=np.int64)
        self._mult_flat = mult_flat
        self._mods_flat = mods_flat

    def _encode_t(self, ts: Sequence[int]) -> int:
        acc = 0
        for t, r in zip(ts, self._radices):
            acc = acc * r + int(t)
        return acc

    def _values(self, xs: Array) -> Array:
        """Matrix entries m_ij (mod q_i) for an array of handles."""
        return self._dec[xs].astype(np.int64) * self._mult_flat

    def _encode_values(self, vals: Array) -> Array:
        ts = vals // self._mult_flat
        acc = np.zeros(vals.shape[:-1], dtype=np.int64)
        for t, r in zip(range(len(self._radices)), self._radices):
            acc = acc * r + ts[..., t]
        return acc

    def add(self, x: int, y: int) -> int:
        return int(self.add_many(_as_idx([x]), _as_idx([y]))[0])

    def mul(self, x: int, y: int) -> int:
        return int(self.mul_many(_as_idx([x]), _as_idx([y]))[0])

    def neg(self, x: int) -> int:
        return int(self.neg_many(_as_idx([x]))[0])

    def add_many(self, xs: Array, ys: Array) -> Array:
        vals = (self._values(xs) + self._values(ys)) % self._mods_flat
        return self._encode_values(vals)

    def neg_many(self, xs: Array) -> Array:
        return self._encode_values((-self._values(xs)) % self._mods_flat)

    def mul_many(self, xs: Array, ys: Array) -> Array:
        s = self.s
        A = self._values(xs)
        B = self._values(ys)
        out = np.zeros_like(A)
        for i in range(s):
            qi = self.qs[i]
            for j in range(s):
                acc = np.zeros(A.shape[:-1], dtype=np.int64)
                for k in range(s):
                    acc += A[..., i * s + k] * B[..., k * s + j]
                out[..., i * s + j] = acc % qi
        return self._encode_values(out)


# ---------------------------------------------------------------------------
# FiniteRing


class FiniteRing:
    """A realized finite ring with exact arithmetic on integer handles."""

    def __init__(self, backend, spec: RingSpec) -> None:
        self.backend = backend
        self.spec = spec
        self.order: int = backend.order
        self.zero: int = 0
        self.one: int = backend.one
        self._add_t: np.ndarray | None = None
        self._mul_t: np.ndarray | None = None
        self._neg_t: np.ndarray | None = None
        self._subsets = None  # classify.StructuralSubsets cache
        self._power_data = None  # classify bulk power-profile cache
        if self.order <= EAGER_TABLE_CAP:
            self._build_tables()
        self.characteristic = self._characteristic()

    # -- construction helpers

    def _build_tables(self) -> None:
        n = self.order
        dtype = np.int16 if n <= 2**15 else np.int32
        idx = np.arange(n, dtype=np.int64)
        add_t = np.empty((n, n), dtype=dtype)
        mul_t = np.empty((n, n), dtype=dtype)
        chunk = max(1, (1 << 20) // n)
        for start in range(0, n, chunk):
            rows = np.arange(start, min(start + chunk, n), dtype=np.int64)
            xs = np.repeat(rows, n)
            ys = np.tile(idx, len(rows))
            add_t[start:start + len(rows)] = \
                self.backend.add_many(xs, ys).reshape(len(rows), n)
            mul_t[start:start + len(rows)] = \
                self.backend.mul_many(xs, ys).reshape(len(rows), n)
        self._add_t = add_t
        self._mul_t = mul_t
        self._neg_t = self.backend.neg_many(idx).astype(np.int64)

    def _characteristic(self) -> int:
        acc = self.one
        k = 1
        while acc != self.zero:
            acc = self.add(acc, self.one)
            k += 1
            if k > self.order + 1:
                raise InvalidSpec("additive order of 1 exceeds ring order")
        return k

    # -- scalar ops

    def add(self, x: int, y: int) -> int:
        if self._add_t is not None:
            return int(self._add_t[x, y])
        return self.backend.add(x, y)

    def mul(self, x: int, y: int) -> int:
        if self._mul_t is not None:
            return int(self._mul_t[x, y])
        return self.backend.mul(x, y)

    def neg(self, x: int) -> int:
        if self._neg_t is not None:
            return int(self._neg_t[x])
        return self.backend.neg(x)

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def pow(self, x: int, k: int) -> int:
        if k < 0:
            raise ValueError("pow exponent must be >= 0")
        result = self.one
        base = x
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    # -- bulk ops on handle arrays

    def add_many(self, xs, ys) -> Array:
        xs, ys = _as_idx(xs), _as_idx(ys)
        if self._add_t is not None:
            return self._add_t[xs, ys].astype(np.int64)
        return self.backend.add_many(xs, ys)

    def mul_many(self, xs, ys) -> Array:
        xs, ys = _as_idx(xs), _as_idx(ys)
        if self._mul_t is not None:
            return self._mul_t[xs, ys].astype(np.int64)
        return self.backend.mul_many(xs, ys)

    def neg_many(self, xs) -> Array:
        xs = _as_idx(xs)
        if self._neg_t is not None:
            return self._neg_t[xs]
        return self.backend.neg_many(xs)

    def sub_many(self, xs, ys) -> Array:
        return self.add_many(xs, self.neg_many(ys))

    # -- misc

    @property
    def spec_string(self) -> str:
        return render(self.spec)

    def elements(self) -> Array:
        return np.arange(self.order, dtype=np.int64)

    def is_commutative(self) -> bool:
        if self._mul_t is not None:
            return bool(np.array_equal(self._mul_t, self._mul_t.T))
        idx = self.elements()
        for y in range(self.order):
            ys = np.full(self.order, y, dtype=np.int64)
            if not np.array_equal(self.mul_many(idx, ys), self.mul_many(ys, idx)):
                return False
        return True

    def __repr__(self) -> str:
        return f"FiniteRing({self.spec_string}, order={self.order})"


# ---------------------------------------------------------------------------
# Ideals and quotients


@dataclass(frozen=True)
class IdealHandle:
    """A two-sided ideal as a sorted tuple of element handles."""

    handles: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.handles)

    def __contains__(self, h: int) -> bool:
        i = bisect.bisect_left(self.handles, h)
        return i < len(self.handles) and self.handles[i] == h

    def validate(self, R: FiniteRing) -> bool:
        hs = np.array(self.handles, dtype=np.int64)
        if hs[0] != 0:
            return False
        hset = set(self.handles)
        sums = R.add_many(np.repeat(hs, len(hs)), np.tile(hs, len(hs)))
        if not set(sums.tolist()) <= hset:
            return False
        if not set(R.neg_many(hs).tolist()) <= hset:
            return False
        idx = R.elements()
        left = R.mul_many(np.repeat(idx, len(hs)), np.tile(hs, R.order))
        right = R.mul_many(np.tile(hs, R.order), np.repeat(idx, len(hs)))
        return set(left.tolist()) <= hset and set(right.tolist()) <= hset


def ideal_closure(R: FiniteRing, generators: Iterable[int]) -> IdealHandle:
    """Two-sided ideal closure by fixed-point iteration."""
    gens = [int(g) for g in generators]
    for g in gens:
        if not (0 <= g < R.order):
            raise InvalidSpec(f"generator {g} is not a handle of {R.spec_string}")
    cur = np.unique(np.array([0] + list(gens), dtype=np.int64))
    idx = R.elements()
    while True:
        size = len(cur)
        cur = np.unique(np.concatenate([cur, R.neg_many(cur)]))
        # absorb: r*s and s*r for every ring element r
        reps = np.repeat(idx, len(cur))
        tiles = np.tile(cur, R.order)
        cur = np.unique(np.concatenate(
            [cur, R.mul_many(reps, tiles), R.mul_many(tiles, reps)]))
        # additive closure
        sums = R.add_many(np.repeat(cur, len(cur)), np.tile(cur, len(cur)))
        cur = np.unique(np.concatenate([cur, sums]))
        if len(cur) == size:
            break
    return IdealHandle(tuple(int(h) for h in cur))


def quotient(R: FiniteRing, generators: Iterable[int]) -> FiniteRing:
    """Quotient of R by the two-sided ideal generated by the given handles."""
    ideal = ideal_closure(R, generators)
    if len(ideal) == R.order:
        raise InvalidSpec("quotient collapses to the zero ring (1 = 0)")
    backend = _QuotientBackend(R, np.array(ideal.handles, dtype=np.int64))
    spec = Quotient(R.spec, tuple(sorted(set(int(g) for g in generators))))
    return FiniteRing(backend, spec)


# ---------------------------------------------------------------------------
# Realization


def realize(spec: RingSpec, max_order: int = DEFAULT_MAX_ORDER) -> FiniteRing:
    """Build the FiniteRing a spec describes; deterministic per spec."""
    order = spec_order(spec)
    if order > max_order:
        raise OrderCapExceeded(order, max_order)
    if order < 2 and not isinstance(spec, Quotient):
        raise InvalidSpec(f"{render(spec)} realizes the zero ring (order 1); rejected")

    if isinstance(spec, ZMod):
        return FiniteRing(_ZModBackend(spec.n), spec)
    if isinstance(spec, GaloisField):
        if not is_prime(spec.p):
            raise InvalidSpec(f"GF({spec.p},{spec.k}): {spec.p} is not prime")
        return FiniteRing(_GaloisBackend(spec.p, spec.k), spec)
    if isinstance(spec, Matrix):
        inner = realize(spec.inner, max_order)
        return FiniteRing(_MatrixBackend(spec.n, inner), spec)
    if isinstance(spec, UpperTriangular):
        inner = realize(spec.inner, max_order)
        return FiniteRing(_UpperTriangularBackend(spec.n, inner), spec)
    if isinstance(spec, Product):
        left = realize(spec.left, max_order)
        right = realize(spec.right, max_order)
        return FiniteRing(_ProductBackend(left, right), spec)
    if isinstance(spec, GroupRing):
        coeff = realize(spec.coeff, max_order)
        group = realize_group(spec.group)
        return FiniteRing(_GroupRingBackend(coeff, group), spec)
    if isinstance(spec, Quotient):
        inner = realize(spec.inner, max_order)
        return quotient(inner, spec.generators)
    if isinstance(spec, EndAbelian):
        return FiniteRing(_EndAbelianBackend(spec.invariants), spec)
    raise InvalidSpec(f"unknown spec node {spec!r}")


def end_abelian(invariants: Sequence[int],
                max_order: int = DEFAULT_MAX_ORDER) -> FiniteRing:
    """Endomorphism ring of the abelian group  Z_q1 + ... + Z_qs."""
    return realize(EndAbelian(tuple(invariants)), max_order)


# ---------------------------------------------------------------------------
# Module-level element ops (thin wrappers, mirroring the public surface)


def add(R: FiniteRing, x: int, y: int) -> int:
    return R.add(x, y)


def mul(R: FiniteRing, x: int, y: int) -> int:
    return R.mul(x, y)


def neg(R: FiniteRing, x: int) -> int:
    return R.neg(x)


def ring_pow(R: FiniteRing, x: int, k: int) -> int:
    return R.pow(x, k)
