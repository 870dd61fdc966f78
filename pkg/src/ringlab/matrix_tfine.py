"""Torsion-unit + nilpotent decomposition of matrices by block induction.

A non-zero n x n matrix M over a t-fine finite ring R splits as M = U + N
with U a torsion unit and N nilpotent.  The construction conjugates M so
that its leading (n-1) x (n-1) block A and corner entry d are both
non-zero, recurses on A, splits d = v + t in R, and assembles

    M' = [[U_A, 0], [gamma, v]]  +  [[N_A, beta], [0, t]]

where the first summand is block lower triangular with torsion-unit
diagonal (hence torsion) and the second is block upper triangular with
nilpotent diagonal (hence nilpotent).  Undoing the conjugation preserves
both properties.  Two base cases: n = 1 falls back to the generic
element search, and |R| = 2 uses exhaustive search over the realized
matrix ring (supported through n = 4).  Every result is re-verified by
actually powering U to the identity and N to zero.

Matrices here are tuples of tuples of element handles, row-major.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Iterator

import numpy as np

from .classify import nilpotence_index_bound, power_data, _power_walk
from .decompose import Certificate, certificate_to_json, decompose
from .errors import (BudgetExhausted, NoSolution, NotTFineBase,
                     OrderCapExceeded, ZeroMatrix)
from .rings import FiniteRing, realize
from .specs import Matrix

Mat = tuple[tuple[int, ...], ...]

DEFAULT_SIMILARITY_BUDGET = 1_000_000
DEFAULT_FALLBACK_BUDGET = 10_000_000
_FALLBACK_REALIZE_CAP = 1 << 20  # memory guard on the fallback matrix ring
_F2_BASE_MAX_N = 4
_TORSION_WALK_CAP = 1_000_000


# ---------------------------------------------------------------------------
# Entry-space matrix arithmetic


def mat_zero(n: int) -> Mat:
    return tuple((0,) * n for _ in range(n))


def mat_identity(R: FiniteRing, n: int) -> Mat:
    return tuple(tuple(R.one if i == j else 0 for j in range(n))
                 for i in range(n))


def mat_add(R: FiniteRing, A: Mat, B: Mat) -> Mat:
    return tuple(tuple(R.add(a, b) for a, b in zip(ra, rb))
                 for ra, rb in zip(A, B))


def mat_sub(R: FiniteRing, A: Mat, B: Mat) -> Mat:
    return tuple(tuple(R.sub(a, b) for a, b in zip(ra, rb))
                 for ra, rb in zip(A, B))


def mat_mul(R: FiniteRing, A: Mat, B: Mat) -> Mat:
    n = len(A)
    m = len(B[0])
    k_dim = len(B)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = 0
            for k in range(k_dim):
                acc = R.add(acc, R.mul(A[i][k], B[k][j]))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_is_zero(M: Mat) -> bool:
    return all(v == 0 for row in M for v in row)


def matrix_nilpotency_index(R: FiniteRing, M: Mat,
                            bound: int) -> int | None:
    """Minimal k <= bound with M^k = 0, or None."""
    cur = M
    for k in range(1, bound + 1):
        if mat_is_zero(cur):
            return k
        cur = mat_mul(R, cur, M)
    return None


def matrix_torsion_order(R: FiniteRing, n: int, M: Mat,
                         cap: int = _TORSION_WALK_CAP) -> int | None:
    """Minimal k >= 1 with M^k = I, or None within the cap."""
    ident = mat_identity(R, n)
    cur = M
    for k in range(1, cap + 1):
        if cur == ident:
            return k
        cur = mat_mul(R, cur, M)
    return None


# ---------------------------------------------------------------------------
# Handle conversion against a realized matrix ring


@lru_cache(maxsize=16)
def _matrix_ring(n: int, spec, max_order: int) -> FiniteRing:
    return realize(Matrix(n, spec), max_order)


def mat_to_handle(S: FiniteRing, M: Mat) -> int:
    return S.backend._encode_scalar([v for row in M for v in row])


def handle_to_mat(S: FiniteRing, n: int, h: int) -> Mat:
    flat = S.backend._decode_scalar(h)
    return tuple(tuple(flat[i * n + j] for j in range(n)) for i in range(n))


# ---------------------------------------------------------------------------
# one_as_two_units


def one_as_two_units(R: FiniteRing) -> tuple[int, int]:
    """Smallest unit u with 1 - u also a unit; u + (1 - u) = 1."""
    data = power_data(R)
    for u in np.nonzero(data.unit)[0].tolist():
        v = R.sub(R.one, u)
        if data.unit[v]:
            return int(u), int(v)
    raise NoSolution(f"1 is not a sum of two units in {R.spec_string}")


# ---------------------------------------------------------------------------
# Similarity normalization


def _conjugators(R: FiniteRing, n: int) -> Iterator[tuple[str, Mat, Mat]]:
    """Candidate (description, P, P_inverse) conjugators in a fixed order:
    identity, permutations, transvections I + c E_ij, then products of two
    transvections."""
    ident = mat_identity(R, n)
    yield "identity", ident, ident

    for perm in itertools.permutations(range(n)):
        if perm == tuple(range(n)):
            continue
        P = tuple(tuple(R.one if j == perm[i] else 0 for j in range(n))
                  for i in range(n))
        Pinv = tuple(tuple(R.one if perm[j] == i else 0 for j in range(n))
                     for i in range(n))
        yield f"permutation{perm}", P, Pinv

    def transvections() -> Iterator[tuple[int, int, int, Mat, Mat]]:
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                for c in range(1, R.order):
                    T = [list(row) for row in ident]
                    T[i][j] = c
                    Tinv = [list(row) for row in ident]
                    Tinv[i][j] = R.neg(c)
                    yield i, j, c, tuple(map(tuple, T)), tuple(map(tuple, Tinv))

    for i, j, c, T, Tinv in transvections():
        yield f"transvection(i={i},j={j},c={c})", T, Tinv

    for (i1, j1, c1, T1, T1inv), (i2, j2, c2, T2, T2inv) in \
            itertools.product(transvections(), repeat=2):
        P = mat_mul(R, T1, T2)
        Pinv = mat_mul(R, T2inv, T1inv)
        yield (f"transvection_product(i={i1},j={j1},c={c1};"
               f"i={i2},j={j2},c={c2})"), P, Pinv


def similarity_normalize(R: FiniteRing, n: int, M: Mat,
                         budget: int = DEFAULT_SIMILARITY_BUDGET
                         ) -> tuple[str, Mat, Mat, Mat]:
    """First conjugator (in the documented order) making the leading
    (n-1) x (n-1) block and the corner entry of P.M.P^-1 both non-zero.

    Returns (description, P, P_inverse, conjugated matrix).
    """
    if mat_is_zero(M):
        raise ZeroMatrix("cannot normalize the zero matrix")
    tried = 0
    for desc, P, Pinv in _conjugators(R, n):
        tried += 1
        if tried > budget:
            break
        M2 = mat_mul(R, mat_mul(R, P, M), Pinv)
        lead_nonzero = any(M2[i][j] != 0
                           for i in range(n - 1) for j in range(n - 1))
        if lead_nonzero and M2[n - 1][n - 1] != 0:
            return desc, P, Pinv, M2
    raise BudgetExhausted(
        f"no conjugator within budget {budget} separated a non-zero leading "
        f"block and corner for this {n}x{n} matrix")


# ---------------------------------------------------------------------------
# The decomposition


@dataclass(frozen=True)
class MatrixDecomposition:
    n: int
    U: Mat
    N: Mat
    u_order: int
    n_index: int
    trace: tuple[dict[str, Any], ...]


def _verify_parts(R: FiniteRing, n: int, M: Mat, U: Mat, N: Mat,
                  trace: list[dict[str, Any]],
                  index_hint: int | None = None) -> MatrixDecomposition:
    if mat_add(R, U, N) != M:
        raise AssertionError("assembled parts do not sum to the input")
    order = matrix_torsion_order(R, n, U)
    if order is None:
        raise AssertionError("assembled U is not torsion within the walk cap")
    bound = max(n * nilpotence_index_bound(R), n + 1, index_hint or 0)
    index = matrix_nilpotency_index(R, N, bound)
    if index is None:
        raise AssertionError("assembled N is not nilpotent within the bound")
    return MatrixDecomposition(n=n, U=U, N=N, u_order=order, n_index=index,
                               trace=tuple(trace))


def _decompose_via_ring(R: FiniteRing, n: int, M: Mat, S: FiniteRing,
                        method: str) -> MatrixDecomposition:
    """Exhaustive search in the realized matrix ring S = M_n(R): smallest
    nilpotent b with M - b a unit."""
    data = power_data(S)
    h = mat_to_handle(S, M)
    nil = np.nonzero(data.nilpotent)[0]
    for b in nil.tolist():
        a = S.sub(h, b)
        if data.unit[a]:
            U = handle_to_mat(S, n, a)
            N = handle_to_mat(S, n, b)
            trace = [{"level": n, "method": method,
                      "search_space": int(nil.size)}]
            return _verify_parts(R, n, M, U, N, trace,
                                 index_hint=int(data.mu[b]))
    raise NotTFineBase(
        f"exhaustive search found no decomposition in {S.spec_string}; "
        "the entry ring is not t-fine at this size")


def tfine_decompose_matrix(R: FiniteRing, n: int, M: Mat,
                           budget_similarity: int = DEFAULT_SIMILARITY_BUDGET,
                           budget_fallback: int = DEFAULT_FALLBACK_BUDGET
                           ) -> MatrixDecomposition:
    """Decompose a non-zero matrix over a t-fine ring as torsion unit plus
    nilpotent, following the block induction with verified assembly."""
    if len(M) != n or any(len(row) != n for row in M):
        raise ValueError(f"matrix shape is not {n}x{n}")
    if mat_is_zero(M):
        raise ZeroMatrix("the zero matrix has no torsion-unit + nilpotent "
                         "decomposition")

    if n == 1:
        result = decompose(R, M[0][0], "TFine")
        if not isinstance(result, Certificate):
            raise NotTFineBase(
                f"element {M[0][0]} of {R.spec_string} is not a torsion unit "
                "plus a nilpotent; the ring is not t-fine")
        U = ((result.part_a,),)
        N = ((result.part_b,),)
        trace = [{"level": 1, "method": "element",
                  "certificate": certificate_to_json(result)}]
        return _verify_parts(R, n, M, U, N, trace)

    if R.order == 2:
        if n > _F2_BASE_MAX_N:
            raise BudgetExhausted(
                f"exhaustive base case over a 2-element ring supports "
                f"n <= {_F2_BASE_MAX_N}, got {n}")
        S = _matrix_ring(n, R.spec, 2 ** (n * n))
        return _decompose_via_ring(R, n, M, S, "exhaustive_order2")

    try:
        desc, P, Pinv, M2 = similarity_normalize(R, n, M, budget_similarity)
    except BudgetExhausted:
        try:
            S = _matrix_ring(n, R.spec,
                             min(budget_fallback, _FALLBACK_REALIZE_CAP))
        except OrderCapExceeded as exc:
            raise BudgetExhausted(
                f"similarity search failed and the fallback matrix ring "
                f"exceeds the budget: {exc}") from exc
        return _decompose_via_ring(R, n, M, S, "exhaustive_fallback")

    A = tuple(row[:n - 1] for row in M2[:n - 1])
    beta = tuple((M2[i][n - 1],) for i in range(n - 1))
    gamma = M2[n - 1][:n - 1]
    d = M2[n - 1][n - 1]

    inner = tfine_decompose_matrix(R, n - 1, A, budget_similarity,
                                   budget_fallback)
    corner = decompose(R, d, "TFine")
    if not isinstance(corner, Certificate):
        raise NotTFineBase(
            f"corner entry {d} of {R.spec_string} is not a torsion unit "
            "plus a nilpotent; the ring is not t-fine")
    v, t = corner.part_a, corner.part_b

    U2 = tuple(tuple(inner.U[i]) + (0,) for i in range(n - 1)) \
        + (tuple(gamma) + (v,),)
    N2 = tuple(tuple(inner.N[i]) + (beta[i][0],) for i in range(n - 1)) \
        + ((0,) * (n - 1) + (t,),)

    U = mat_mul(R, mat_mul(R, Pinv, U2), P)
    N = mat_mul(R, mat_mul(R, Pinv, N2), P)
    trace = [{"level": n, "method": "block_induction", "similarity": desc,
              "corner_certificate": certificate_to_json(corner)}]
    trace.extend(inner.trace)
    return _verify_parts(R, n, M, U, N, trace)


# ---------------------------------------------------------------------------
# Independent verification


@dataclass(frozen=True)
class MatrixVerification:
    ok: bool
    reason: str | None = None


def verify_matrix_decomposition(R: FiniteRing, n: int, M: Mat,
                                dec: MatrixDecomposition) -> MatrixVerification:
    if mat_add(R, dec.U, dec.N) != M:
        return MatrixVerification(False, "SumMismatch")
    if dec.u_order < 1:
        return MatrixVerification(False, "UNotTorsion")
    cur = mat_identity(R, n)
    for _ in range(dec.u_order):
        cur = mat_mul(R, cur, dec.U)
    if cur != mat_identity(R, n):
        return MatrixVerification(False, "UNotTorsion")
    if dec.n_index < 1:
        return MatrixVerification(False, "NNotNilpotent")
    cur = mat_identity(R, n)
    for _ in range(dec.n_index):
        cur = mat_mul(R, cur, dec.N)
    if not mat_is_zero(cur):
        return MatrixVerification(False, "NNotNilpotent")
    return MatrixVerification(True, None)
