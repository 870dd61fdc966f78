"""Human-readable element rendering and the inverse expression parser.

Rendering conventions, by ring shape:
  Z/n           residue integers: "3"
  GF(p,k)       polynomials in a, descending powers: "a^2 + 2*a + 1"
  M/UT(n,R)     nested brackets, row-major, inner entries rendered
                recursively: "[[0, 1], [1, 1]]"
  Prod(A,B)     component pair: "(1, 2)"
  GR(R,G)       coefficient sum "c0 + c1*g1 + ...", identity term first,
                zero terms omitted; parser also accepts g as alias for g1
  Quot(R,I)     the canonical (smallest) coset representative, rendered in R
  End(Ab[...])  the integer matrix (m_ij), m_ij taken mod q_i

Parsing is the inverse, with one rule worth stating twice: a bare integer
at top level is a HANDLE, while an integer inside a matrix entry, group
ring coefficient, or polynomial term is the image n*1 of that ring.  The
two agree on Z/n, which is why the shorthand is safe there.  Product
components are full sub-expressions, so a bare integer there is a handle
of the factor ring.
"""

from __future__ import annotations

import re

from .errors import ExprError
from .rings import (FiniteRing, _EndAbelianBackend, _GaloisBackend,
                    _GroupRingBackend, _MatrixBackend, _ProductBackend,
                    _QuotientBackend, _UpperTriangularBackend, _ZModBackend)

_INT_RE = re.compile(r"\d+$")


# ---------------------------------------------------------------- pretty

def pretty(R: FiniteRing, x: int) -> str:
    if not 0 <= x < R.order:
        raise ExprError(f"handle {x} out of range for {R.spec_string}")
    b = R.backend
    if isinstance(b, _ZModBackend):
        return str(x)
    if isinstance(b, _GaloisBackend):
        return _pretty_poly(b, x)
    if isinstance(b, _MatrixBackend):
        entries = b._decode_scalar(x)
        rows = [[pretty(b.inner, entries[i * b.n + j]) for j in range(b.n)]
                for i in range(b.n)]
        return _brackets(rows)
    if isinstance(b, _UpperTriangularBackend):
        entries = b._decode_scalar(x)
        zero = pretty(b.inner, 0)
        rows = [[(pretty(b.inner, entries[b._pos_index[(i, j)]])
                  if i <= j else zero) for j in range(b.n)]
                for i in range(b.n)]
        return _brackets(rows)
    if isinstance(b, _ProductBackend):
        l, r = divmod(x, b.right.order)
        return f"({pretty(b.left, l)}, {pretty(b.right, r)})"
    if isinstance(b, _GroupRingBackend):
        return _pretty_groupring(b, x)
    if isinstance(b, _QuotientBackend):
        return pretty(b.inner, int(b._reps[x]))
    if isinstance(b, _EndAbelianBackend):
        import numpy as np
        vals = b._values(np.array([x], dtype=np.int64))[0]
        rows = [[str(int(vals[i * b.s + j])) for j in range(b.s)]
                for i in range(b.s)]
        return _brackets(rows)
    raise ExprError(f"no renderer for {R.spec_string}")


def _brackets(rows: list[list[str]]) -> str:
    return "[" + ", ".join("[" + ", ".join(r) + "]" for r in rows) + "]"


def _pretty_poly(b: _GaloisBackend, x: int) -> str:
    digits = b._digits[x]
    terms = []
    for i in range(b.k - 1, -1, -1):
        c = int(digits[i])
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            var = "a" if i == 1 else f"a^{i}"
            terms.append(var if c == 1 else f"{c}*{var}")
    return " + ".join(terms) if terms else "0"


def _pretty_groupring(b: _GroupRingBackend, x: int) -> str:
    terms = []
    for i in range(b.group.order):
        c = int(b._dec[x, i])
        if c == 0:
            continue
        cs = pretty(b.coeff, c)
        if i == 0:
            terms.append(cs)
            continue
        if c == b.coeff.one:
            terms.append(f"g{i}")
        else:
            if "+" in cs or " " in cs:
                cs = f"({cs})"
            terms.append(f"{cs}*g{i}")
    return " + ".join(terms) if terms else "0"


# ----------------------------------------------------------------- parse

def parse_element(R: FiniteRing, text: str) -> int:
    """Top-level entry: bare integers are handles, anything structured is
    parsed against the ring's shape."""
    s = text.strip()
    if not s:
        raise ExprError("empty element expression")
    if _INT_RE.fullmatch(s):
        h = int(s)
        if not 0 <= h < R.order:
            raise ExprError(f"handle {h} out of range for {R.spec_string} "
                            f"(order {R.order})")
        return h
    return _parse_value(R, s)


def _parse_value(R: FiniteRing, s: str) -> int:
    """Structured expression; bare integers here mean n*1."""
    s = s.strip()
    if not s:
        raise ExprError("empty subexpression")
    b = R.backend
    if _INT_RE.fullmatch(s):
        return _int_image(R, int(s))
    if isinstance(b, (_MatrixBackend, _UpperTriangularBackend)):
        return _parse_matrix(R, s)
    if isinstance(b, _GaloisBackend):
        return _parse_poly(R, s)
    if isinstance(b, _GroupRingBackend):
        return _parse_groupring(R, s)
    if isinstance(b, _ProductBackend):
        return _parse_product(R, s)
    if isinstance(b, _QuotientBackend):
        inner = _parse_value(b.inner, s)
        import numpy as np
        rep = int(b._rep_map[inner])
        return int(np.searchsorted(b._reps, rep))
    if isinstance(b, _EndAbelianBackend):
        return _parse_end(R, s)
    raise ExprError(f"cannot parse {s!r} as an element of {R.spec_string}")


def _int_image(R: FiniteRing, n: int) -> int:
    n %= R.characteristic
    acc = 0
    for _ in range(n):
        acc = R.add(acc, R.one)
    return acc


def _split_level(s: str, sep: str) -> list[str]:
    """Split on sep at bracket/paren depth zero."""
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(s):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise ExprError(f"unbalanced brackets in {s!r}")
        elif ch == sep and depth == 0:
            parts.append(s[start:i])
            start = i + 1
    if depth != 0:
        raise ExprError(f"unbalanced brackets in {s!r}")
    parts.append(s[start:])
    return parts


def _parse_matrix(R: FiniteRing, s: str) -> int:
    b = R.backend
    if not (s.startswith("[") and s.endswith("]")):
        raise ExprError(f"matrix literal expected, got {s!r}")
    rows_raw = _split_level(s[1:-1].strip(), ",")
    rows = []
    for raw in rows_raw:
        raw = raw.strip()
        if not (raw.startswith("[") and raw.endswith("]")):
            raise ExprError(f"matrix row expected, got {raw!r}")
        rows.append([_parse_value(b.inner, e)
                     for e in _split_level(raw[1:-1], ",")])
    n = b.n
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ExprError(f"expected a {n}x{n} matrix literal")
    if isinstance(b, _UpperTriangularBackend):
        for i in range(n):
            for j in range(i):
                if rows[i][j] != 0:
                    raise ExprError("entries below the diagonal must be 0 "
                                    "in an upper-triangular ring")
        return b._encode_scalar([rows[i][j] for (i, j) in b.positions])
    return b._encode_scalar([rows[i][j] for i in range(n) for j in range(n)])


_POLY_TERM_RE = re.compile(r"(?:(\d+)\*)?a(?:\^(\d+))?$|(\d+)$")


def _parse_poly(R: FiniteRing, s: str) -> int:
    acc = 0
    for term in _split_level(s, "+"):
        term = term.strip().replace(" ", "")
        m = _POLY_TERM_RE.fullmatch(term)
        if not m:
            raise ExprError(f"bad polynomial term {term!r}")
        if m.group(3) is not None:
            acc = R.add(acc, _int_image(R, int(m.group(3))))
            continue
        if R.backend.k == 1:
            raise ExprError(f"{R.spec_string} is a prime field; it has no "
                            "generator a")
        c = int(m.group(1)) if m.group(1) else 1
        k = int(m.group(2)) if m.group(2) else 1
        mono = R.pow(R.backend.p, k)  # handle of a is p (digit vector e_1)
        for _ in range(c % R.characteristic):
            acc = R.add(acc, mono)
    return acc


_GR_TERM_RE = re.compile(r"(?:(.+)\*)?g(\d*)$")


def _parse_groupring(R: FiniteRing, s: str) -> int:
    b = R.backend
    coeffs = [0] * b.group.order
    for term in _split_level(s, "+"):
        term = term.strip()
        m = _GR_TERM_RE.fullmatch(term)
        if m:
            idx = int(m.group(2)) if m.group(2) else 1
            if not 0 <= idx < b.group.order:
                raise ExprError(f"no group element g{idx} in a group of "
                                f"order {b.group.order}")
            craw = m.group(1)
            if craw is None:
                c = b.coeff.one
            else:
                craw = craw.strip()
                if craw.startswith("(") and craw.endswith(")"):
                    craw = craw[1:-1]
                c = _parse_value(b.coeff, craw)
        else:
            idx = 0
            c = _parse_value(b.coeff, term)
        coeffs[idx] = b.coeff.add(coeffs[idx], c)
    return b._encode_scalar(coeffs)


def _parse_product(R: FiniteRing, s: str) -> int:
    b = R.backend
    if not (s.startswith("(") and s.endswith(")")):
        raise ExprError(f"product literal (left, right) expected, got {s!r}")
    parts = _split_level(s[1:-1], ",")
    if len(parts) != 2:
        raise ExprError("product literal takes exactly two components")
    l = parse_element(b.left, parts[0])
    r = parse_element(b.right, parts[1])
    return l * b.right.order + r


def _parse_end(R: FiniteRing, s: str) -> int:
    b = R.backend
    if not (s.startswith("[") and s.endswith("]")):
        raise ExprError(f"matrix literal expected, got {s!r}")
    rows_raw = _split_level(s[1:-1].strip(), ",")
    if len(rows_raw) != b.s:
        raise ExprError(f"expected {b.s} rows")
    ts = []
    for i, raw in enumerate(rows_raw):
        raw = raw.strip()
        if not (raw.startswith("[") and raw.endswith("]")):
            raise ExprError(f"matrix row expected, got {raw!r}")
        entries = _split_level(raw[1:-1], ",")
        if len(entries) != b.s:
            raise ExprError(f"expected {b.s} columns")
        for j, e in enumerate(entries):
            e = e.strip()
            if not _INT_RE.fullmatch(e):
                raise ExprError(f"integer entry expected, got {e!r}")
            m_ij = int(e) % b.qs[i]
            mult = b.mult[i][j]
            if m_ij % mult != 0:
                raise ExprError(
                    f"entry ({i},{j}) must be a multiple of {mult} "
                    f"(maps Z_{b.qs[j]} into Z_{b.qs[i]})")
            ts.append(m_ij // mult)
    return b._encode_t(ts)
