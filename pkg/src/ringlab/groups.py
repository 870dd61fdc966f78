"""Finite groups as Cayley tables on 0-based indices, identity at 0."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidSpec
from .specs import (Cyclic, Dihedral, DirectProductGroup, ExplicitTable,
                    GroupSpec, group_order, render_group)

_EXHAUSTIVE_AXIOM_CAP = 64
_AXIOM_SAMPLES = 10_000


@dataclass
class GroupTable:
    order: int
    table: np.ndarray          # (order, order) int32, table[i, j] = i * j
    identity: int              # always 0
    inverse: np.ndarray        # (order,) int32
    spec: GroupSpec
    _abelian: bool | None = field(default=None, repr=False)

    def mul(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    def inv(self, i: int) -> int:
        return int(self.inverse[i])

    @property
    def name(self) -> str:
        return render_group(self.spec)

    def is_abelian(self) -> bool:
        if self._abelian is None:
            self._abelian = bool(np.array_equal(self.table, self.table.T))
        return self._abelian

    def is_p_group(self) -> tuple[bool, int | None]:
        """(True, p) if |G| is a power of the prime p; (False, None) otherwise."""
        from .specs import prime_power
        pk = prime_power(self.order)
        if pk is None:
            return (False, None)
        return (True, pk[0])


def _validate(table: np.ndarray, where: str) -> np.ndarray:
    n = table.shape[0]
    if table.shape != (n, n):
        raise InvalidSpec(f"{where}: Cayley table is not square")
    if table.min() < 0 or table.max() >= n:
        raise InvalidSpec(f"{where}: table entries out of range")
    if not (np.array_equal(table[0], np.arange(n))
            and np.array_equal(table[:, 0], np.arange(n))):
        raise InvalidSpec(f"{where}: index 0 is not the identity")
    # each row and column must be a permutation (cancellation)
    ar = np.arange(n)
    for i in range(n):
        if not np.array_equal(np.sort(table[i]), ar):
            raise InvalidSpec(f"{where}: row {i} is not a permutation")
        if not np.array_equal(np.sort(table[:, i]), ar):
            raise InvalidSpec(f"{where}: column {i} is not a permutation")
    # associativity: exhaustive when small, sampled above
    if n <= _EXHAUSTIVE_AXIOM_CAP:
        left = table[table, :]           # left[i,j,k] = (i*j)*k
        right = table[:, table]          # right[i,j,k] = i*(j*k)
        if not np.array_equal(left, right):
            raise InvalidSpec(f"{where}: multiplication is not associative")
    else:
        rng = random.Random(0)
        for _ in range(_AXIOM_SAMPLES):
            i, j, k = (rng.randrange(n) for _ in range(3))
            if table[table[i, j], k] != table[i, table[j, k]]:
                raise InvalidSpec(f"{where}: associativity fails at ({i},{j},{k})")
    inverse = np.empty(n, dtype=np.int32)
    for i in range(n):
        js = np.nonzero(table[i] == 0)[0]
        if len(js) != 1 or table[js[0], i] != 0:
            raise InvalidSpec(f"{where}: element {i} lacks a two-sided inverse")
        inverse[i] = js[0]
    return inverse


def realize_group(spec: GroupSpec) -> GroupTable:
    n = group_order(spec)
    if isinstance(spec, Cyclic):
        idx = np.arange(n, dtype=np.int32)
        table = (idx[:, None] + idx[None, :]) % n
    elif isinstance(spec, Dihedral):
        # element e*n + a is r^a s^e; (r^a s^e)(r^b s^f) = r^(a + (-1)^e b) s^(e+f)
        m = spec.n
        table = np.empty((n, n), dtype=np.int32)
        for x in range(n):
            e, a = divmod(x, m)
            for y in range(n):
                f, b = divmod(y, m)
                rot = (a - b) % m if e else (a + b) % m
                table[x, y] = ((e + f) % 2) * m + rot
    elif isinstance(spec, DirectProductGroup):
        parts = [realize_group(p) for p in spec.parts]
        sizes = [p.order for p in parts]
        table = np.empty((n, n), dtype=np.int32)
        for x in range(n):
            xs = _unpack(x, sizes)
            for y in range(n):
                ys = _unpack(y, sizes)
                zs = [p.mul(a, b) for p, a, b in zip(parts, xs, ys)]
                table[x, y] = _pack(zs, sizes)
    elif isinstance(spec, ExplicitTable):
        rows = []
        with open(spec.path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line:
                    rows.append([int(tok) for tok in line.split()])
        table = np.array(rows, dtype=np.int32)
    else:
        raise InvalidSpec(f"unknown group node {spec!r}")
    inverse = _validate(table, render_group(spec))
    return GroupTable(order=n, table=table.astype(np.int32), identity=0,
                      inverse=inverse, spec=spec)


def _unpack(x: int, sizes: list[int]) -> list[int]:
    # big-endian lexicographic: first component most significant
    out = []
    for size in reversed(sizes):
        out.append(x % size)
        x //= size
    out.reverse()
    return out


def _pack(xs: list[int], sizes: list[int]) -> int:
    acc = 0
    for v, size in zip(xs, sizes):
        acc = acc * size + v
    return acc
