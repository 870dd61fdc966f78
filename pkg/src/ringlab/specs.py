"""Ring and group spec ASTs, the text grammar, and order arithmetic.

Grammar (UTF-8 text, whitespace-insensitive):

    Z/4   GF(2,2)   GF(4)   M(2,GF(2))   UT(2,Z/4)   Prod(Z/2,Z/3)
    GR(Z/4,C2)   GR(Z/2,C2xC2)   Quot(Z/8,[4])   End(Ab[2,2])

Groups: ``C<n>``, direct products joined with ``x``, ``D<n>`` (order 2n), and
``Table(<path>)`` where the file holds one Cayley-table row per line of
space-separated 0-based indices with the identity at index 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import InvalidSpec


# ---------------------------------------------------------------------------
# ASTs


@dataclass(frozen=True)
class ZMod:
    n: int


@dataclass(frozen=True)
class GaloisField:
    p: int
    k: int


@dataclass(frozen=True)
class Matrix:
    n: int
    inner: "RingSpec"


@dataclass(frozen=True)
class UpperTriangular:
    n: int
    inner: "RingSpec"


@dataclass(frozen=True)
class Product:
    left: "RingSpec"
    right: "RingSpec"


@dataclass(frozen=True)
class GroupRing:
    coeff: "RingSpec"
    group: "GroupSpec"


@dataclass(frozen=True)
class Quotient:
    inner: "RingSpec"
    generators: tuple[int, ...]


@dataclass(frozen=True)
class EndAbelian:
    invariants: tuple[int, ...]


RingSpec = Union[ZMod, GaloisField, Matrix, UpperTriangular, Product,
                 GroupRing, Quotient, EndAbelian]


@dataclass(frozen=True)
class Cyclic:
    n: int


@dataclass(frozen=True)
class DirectProductGroup:
    parts: tuple["GroupSpec", ...]


@dataclass(frozen=True)
class Dihedral:
    n: int


@dataclass(frozen=True)
class ExplicitTable:
    path: str


GroupSpec = Union[Cyclic, DirectProductGroup, Dihedral, ExplicitTable]


# ---------------------------------------------------------------------------
# Small number theory helpers

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, k) with q = p^k and p prime, or None."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if p * p > q:
            break
        if q % p:
            continue
        k = 0
        m = q
        while m % p == 0:
            m //= p
            k += 1
        return (p, k) if m == 1 else None
    return (q, 1)  # q itself prime


# ---------------------------------------------------------------------------
# Rendering (canonical spec strings)

def render(spec: RingSpec) -> str:
    if isinstance(spec, ZMod):
        return f"Z/{spec.n}"
    if isinstance(spec, GaloisField):
        return f"GF({spec.p},{spec.k})"
    if isinstance(spec, Matrix):
        return f"M({spec.n},{render(spec.inner)})"
    if isinstance(spec, UpperTriangular):
        return f"UT({spec.n},{render(spec.inner)})"
    if isinstance(spec, Product):
        return f"Prod({render(spec.left)},{render(spec.right)})"
    if isinstance(spec, GroupRing):
        return f"GR({render(spec.coeff)},{render_group(spec.group)})"
    if isinstance(spec, Quotient):
        gens = ",".join(str(g) for g in spec.generators)
        return f"Quot({render(spec.inner)},[{gens}])"
    if isinstance(spec, EndAbelian):
        inv = ",".join(str(q) for q in spec.invariants)
        return f"End(Ab[{inv}])"
    raise InvalidSpec(f"unknown spec node {spec!r}")


def render_group(g: GroupSpec) -> str:
    if isinstance(g, Cyclic):
        return f"C{g.n}"
    if isinstance(g, DirectProductGroup):
        return "x".join(render_group(p) for p in g.parts)
    if isinstance(g, Dihedral):
        return f"D{g.n}"
    if isinstance(g, ExplicitTable):
        return f"Table({g.path})"
    raise InvalidSpec(f"unknown group node {g!r}")


# ---------------------------------------------------------------------------
# Parsing

def _split_top(text: str, sep: str) -> list[str]:
    """Split on sep at paren/bracket depth 0."""
    parts = []
    depth = 0
    cur = []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def _int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise InvalidSpec(f"expected an integer for {what}, got {text!r}") from None


def _args(text: str, head: str) -> str:
    """Strip 'head(' ... ')' and return the inside."""
    if not text.endswith(")"):
        raise InvalidSpec(f"unbalanced parentheses in {text!r}")
    return text[len(head) + 1:-1]


def parse_ring_spec(text: str) -> RingSpec:
    s = "".join(text.split())
    if not s:
        raise InvalidSpec("empty ring spec")
    if s.startswith("Z/"):
        return ZMod(_int(s[2:], "Z/n"))
    if s.startswith("GF("):
        args = _split_top(_args(s, "GF"), ",")
        if len(args) == 1:
            q = _int(args[0], "GF(q)")
            pk = prime_power(q)
            if pk is None:
                raise InvalidSpec(f"GF({q}): {q} is not a prime power")
            return GaloisField(*pk)
        if len(args) == 2:
            return GaloisField(_int(args[0], "GF p"), _int(args[1], "GF k"))
        raise InvalidSpec(f"GF takes 1 or 2 arguments, got {len(args)}")
    if s.startswith("M("):
        args = _split_top(_args(s, "M"), ",")
        if len(args) != 2:
            raise InvalidSpec("M takes (n, inner)")
        return Matrix(_int(args[0], "matrix size"), parse_ring_spec(args[1]))
    if s.startswith("UT("):
        args = _split_top(_args(s, "UT"), ",")
        if len(args) != 2:
            raise InvalidSpec("UT takes (n, inner)")
        return UpperTriangular(_int(args[0], "UT size"), parse_ring_spec(args[1]))
    if s.startswith("Prod("):
        args = _split_top(_args(s, "Prod"), ",")
        if len(args) != 2:
            raise InvalidSpec("Prod takes (left, right)")
        return Product(parse_ring_spec(args[0]), parse_ring_spec(args[1]))
    if s.startswith("GR("):
        args = _split_top(_args(s, "GR"), ",")
        if len(args) != 2:
            raise InvalidSpec("GR takes (coeff, group)")
        return GroupRing(parse_ring_spec(args[0]), parse_group_spec(args[1]))
    if s.startswith("Quot("):
        args = _split_top(_args(s, "Quot"), ",")
        if len(args) != 2 or not (args[1].startswith("[") and args[1].endswith("]")):
            raise InvalidSpec("Quot takes (inner, [handles])")
        body = args[1][1:-1]
        gens = tuple(_int(t, "ideal generator") for t in body.split(",")) if body else ()
        return Quotient(parse_ring_spec(args[0]), gens)
    if s.startswith("End("):
        body = _args(s, "End")
        if not (body.startswith("Ab[") and body.endswith("]")):
            raise InvalidSpec("End takes Ab[q1,q2,...]")
        inner = body[3:-1]
        if not inner:
            raise InvalidSpec("End(Ab[...]) needs at least one invariant")
        return EndAbelian(tuple(_int(t, "abelian invariant") for t in inner.split(",")))
    raise InvalidSpec(f"cannot parse ring spec {text!r}")


def parse_group_spec(text: str) -> GroupSpec:
    s = "".join(text.split())
    if not s:
        raise InvalidSpec("empty group spec")
    factors = _split_top(s, "x")
    if len(factors) > 1:
        return DirectProductGroup(tuple(_parse_group_atom(f) for f in factors))
    return _parse_group_atom(factors[0])


def _parse_group_atom(s: str) -> GroupSpec:
    if s.startswith("Table("):
        return ExplicitTable(_args(s, "Table"))
    if s.startswith("C") and s[1:].isdigit():
        return Cyclic(int(s[1:]))
    if s.startswith("D") and s[1:].isdigit():
        return Dihedral(int(s[1:]))
    raise InvalidSpec(f"cannot parse group spec {s!r}")


# ---------------------------------------------------------------------------
# Order arithmetic (pre-realization cap checks)

def group_order(g: GroupSpec) -> int:
    if isinstance(g, Cyclic):
        if g.n < 1:
            raise InvalidSpec(f"C{g.n}: order must be >= 1")
        return g.n
    if isinstance(g, DirectProductGroup):
        total = 1
        for part in g.parts:
            total *= group_order(part)
        return total
    if isinstance(g, Dihedral):
        if g.n < 1:
            raise InvalidSpec(f"D{g.n}: order must be >= 1")
        return 2 * g.n
    if isinstance(g, ExplicitTable):
        try:
            with open(g.path, "r", encoding="utf-8") as fh:
                rows = [line for line in fh if line.strip()]
        except OSError as exc:
            raise InvalidSpec(f"cannot read group table {g.path!r}: {exc}") from None
        if not rows:
            raise InvalidSpec(f"group table {g.path!r} is empty")
        return len(rows)
    raise InvalidSpec(f"unknown group node {g!r}")


def spec_order(spec: RingSpec) -> int:
    """Element count the spec will realize to, without building anything."""
    if isinstance(spec, ZMod):
        if spec.n < 1:
            raise InvalidSpec(f"Z/{spec.n}: modulus must be >= 1")
        return spec.n
    if isinstance(spec, GaloisField):
        if not is_prime(spec.p):
            raise InvalidSpec(f"GF({spec.p},{spec.k}): {spec.p} is not prime")
        if spec.k < 1:
            raise InvalidSpec(f"GF({spec.p},{spec.k}): degree must be >= 1")
        return spec.p ** spec.k
    if isinstance(spec, Matrix):
        if spec.n < 1:
            raise InvalidSpec(f"M({spec.n},...): size must be >= 1")
        return spec_order(spec.inner) ** (spec.n * spec.n)
    if isinstance(spec, UpperTriangular):
        if spec.n < 2:
            raise InvalidSpec(f"UT({spec.n},...): size must be >= 2")
        return spec_order(spec.inner) ** (spec.n * (spec.n + 1) // 2)
    if isinstance(spec, Product):
        return spec_order(spec.left) * spec_order(spec.right)
    if isinstance(spec, GroupRing):
        return spec_order(spec.coeff) ** group_order(spec.group)
    if isinstance(spec, Quotient):
        # Exact quotient size needs the ideal; the inner order is an upper bound.
        return spec_order(spec.inner)
    if isinstance(spec, EndAbelian):
        for q in spec.invariants:
            if prime_power(q) is None:
                raise InvalidSpec(f"End(Ab[...]): {q} is not a prime power")
        # |End| = prod over ordered pairs of |Hom(Z_qj, Z_qi)| = gcd(qi, qj)
        total = 1
        for qi in spec.invariants:
            for qj in spec.invariants:
                total *= _gcd(qi, qj)
        return total
    raise InvalidSpec(f"unknown spec node {spec!r}")


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a
