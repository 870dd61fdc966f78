"""Element power profiles and structural subsets of a finite ring.

Every element x of a finite ring has an eventually periodic power sequence
x, x^2, x^3, ...  We record its tail length mu and cycle length c; the pair
(m, n) = (mu, mu + c) is then the lexicographically smallest pair with
m < n and x^m = x^n.  Everything else reads off that data:

  * x nilpotent   iff  x^mu = 0, and mu is the nilpotency index;
  * x potent      iff  mu = 1 (x = x^(1+c), exponent at least 2);
  * x a unit      iff  mu = 1 and x^c = 1, and c is the unit order
    (in a finite ring every one-sided inverse is two-sided and every
    unit has finite multiplicative order, so units and torsion units
    coincide);
  * x unipotent   iff  x - 1 nilpotent;
  * x idempotent  iff  x^2 = x.

The bulk sweep runs Brent cycle detection on all elements simultaneously:
the tortoise/hare update schedule depends only on the step counter, never
on element values, so one synchronized loop serves every lane.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CapExceeded, NotCommutative
from .rings import FiniteRing

Array = np.ndarray

UNIT_GROUP_CAP = 100_000
DEFAULT_EXPONENT_BOUND = 1_000
_POLY_DEGREE_CAP = 4_096


# ---------------------------------------------------------------------------
# Bulk power data


@dataclass
class PowerData:
    """Per-handle tail/cycle lengths and the masks derived from them."""

    mu: Array
    cycle: Array
    nilpotent: Array
    unit: Array
    idempotent: Array
    potent: Array
    unipotent: Array


def pow_many(R: FiniteRing, xs: Array, exps: Array) -> Array:
    """Per-lane x^e by square-and-multiply; exponents may differ by lane."""
    xs = np.asarray(xs, dtype=np.int64)
    e = np.asarray(exps, dtype=np.int64).copy()
    if (e < 0).any():
        raise ValueError("exponents must be >= 0")
    result = np.full(xs.shape, R.one, dtype=np.int64)
    base = xs.copy()
    while (e > 0).any():
        sel = (e & 1) == 1
        if sel.any():
            result[sel] = R.mul_many(result[sel], base[sel])
        e >>= 1
        if (e > 0).any():
            base = R.mul_many(base, base)
    return result


def power_data(R: FiniteRing) -> PowerData:
    """Compute (mu, c) for every handle at once; cached on the ring."""
    if R._power_data is not None:
        return R._power_data
    n = R.order
    idx = np.arange(n, dtype=np.int64)

    mu = np.zeros(n, dtype=np.int64)
    cycle = np.zeros(n, dtype=np.int64)

    # Brent phase: find cycle length per lane.  The power/lam schedule is
    # value-independent, so all active lanes share it.
    active = idx.copy()          # original handles still searching
    tort = idx.copy()            # x^1
    hare = R.mul_many(idx, idx)  # x^2
    base = idx.copy()            # the element itself, for stepping
    power, lam = 1, 1
    eq = tort == hare
    if eq.any():
        cycle[active[eq]] = lam
    keep = ~eq
    active, tort, hare, base = active[keep], tort[keep], hare[keep], base[keep]
    while active.size:
        if power == lam:
            tort = hare.copy()
            power *= 2
            lam = 0
        hare = R.mul_many(hare, base)
        lam += 1
        eq = tort == hare
        if eq.any():
            cycle[active[eq]] = lam
            keep = ~eq
            active, tort, hare, base = (active[keep], tort[keep],
                                        hare[keep], base[keep])

    # Tail phase: mu = least m >= 1 with x^m = x^(m+c).
    active = idx.copy()
    u = idx.copy()
    v = pow_many(R, idx, cycle + 1)
    base = idx.copy()
    m = 1
    while active.size:
        eq = u == v
        if eq.any():
            mu[active[eq]] = m
            keep = ~eq
            active, u, v, base = active[keep], u[keep], v[keep], base[keep]
            if not active.size:
                break
        u = R.mul_many(u, base)
        v = R.mul_many(v, base)
        m += 1

    x_mu = pow_many(R, idx, mu)
    x_c = pow_many(R, idx, cycle)
    nilpotent = x_mu == R.zero
    unit = (mu == 1) & (x_c == R.one)
    idempotent = R.mul_many(idx, idx) == idx
    potent = mu == 1
    one_arr = np.full(n, R.one, dtype=np.int64)
    unipotent = nilpotent[R.sub_many(idx, one_arr)]

    data = PowerData(mu=mu, cycle=cycle, nilpotent=nilpotent, unit=unit,
                     idempotent=idempotent, potent=potent, unipotent=unipotent)
    R._power_data = data
    return data


# ---------------------------------------------------------------------------
# Scalar power profile and element predicates


@dataclass(frozen=True)
class PowerProfile:
    element: int
    witness: tuple[int, int]
    power_class: str  # "nilpotent" | "torsion_unit" | "mixed"
    nilpotency_index: int | None
    torsion_order: int | None


def _power_walk(R: FiniteRing, x: int) -> tuple[int, int]:
    """First repeat in the power sequence: returns (mu, c)."""
    seen: dict[int, int] = {}
    cur = x
    k = 1
    while cur not in seen:
        seen[cur] = k
        cur = R.mul(cur, x)
        k += 1
    m = seen[cur]
    return m, k - m


def power_profile(R: FiniteRing, x: int) -> PowerProfile:
    mu, c = _power_walk(R, x)
    is_nil = R.pow(x, mu) == R.zero
    is_unit = mu == 1 and R.pow(x, c) == R.one
    if is_nil:
        klass = "nilpotent"
    elif is_unit:
        klass = "torsion_unit"
    else:
        klass = "mixed"
    return PowerProfile(
        element=x,
        witness=(mu, mu + c),
        power_class=klass,
        nilpotency_index=mu if is_nil else None,
        torsion_order=c if is_unit else None,
    )


def idempotent_power(R: FiniteRing, x: int) -> int:
    """Least k >= 1 with x^k idempotent: the first multiple of c at or
    beyond mu."""
    mu, c = _power_walk(R, x)
    k = c * ((mu + c - 1) // c)
    e = R.pow(x, k)
    assert R.mul(e, e) == e
    return k


def is_nilpotent(R: FiniteRing, x: int) -> tuple[bool, int | None]:
    p = power_profile(R, x)
    return p.power_class == "nilpotent", p.nilpotency_index


def is_unit(R: FiniteRing, x: int) -> tuple[bool, int | None]:
    p = power_profile(R, x)
    return p.power_class == "torsion_unit", p.torsion_order


def is_torsion_unit(R: FiniteRing, x: int) -> tuple[bool, int | None]:
    return is_unit(R, x)


def is_idempotent(R: FiniteRing, x: int) -> bool:
    return R.mul(x, x) == x


def is_potent(R: FiniteRing, x: int) -> tuple[bool, int | None]:
    """x^n = x with n >= 2; the smallest such n is cycle + 1."""
    mu, c = _power_walk(R, x)
    if mu != 1:
        return False, None
    return True, c + 1


def is_unipotent(R: FiniteRing, x: int) -> tuple[bool, int | None]:
    return is_nilpotent(R, R.sub(x, R.one))


# ---------------------------------------------------------------------------
# Structural subsets


@dataclass(frozen=True)
class StructuralSubsets:
    units: tuple[int, ...]
    nilpotents: tuple[int, ...]
    idempotents: tuple[int, ...]
    potents: tuple[int, ...]
    torsion_units: tuple[int, ...]
    unipotents: tuple[int, ...]
    center: tuple[int, ...]
    jacobson: tuple[int, ...]


def _center(R: FiniteRing) -> Array:
    if R._mul_t is not None:
        eq = (R._mul_t == R._mul_t.T).all(axis=1)
        return np.nonzero(eq)[0].astype(np.int64)
    cand = np.arange(R.order, dtype=np.int64)
    for r in range(R.order):
        rr = np.full(cand.shape, r, dtype=np.int64)
        keep = R.mul_many(cand, rr) == R.mul_many(rr, cand)
        cand = cand[keep]
        if not cand.size:
            break
    return cand


def _jacobson(R: FiniteRing, unit_mask: Array) -> Array:
    """x in J(R) iff 1 - r*x is a unit for every r (quasi-regularity);
    computed from both sides and cross-checked."""
    def one_sided(left: bool) -> Array:
        cand = np.arange(R.order, dtype=np.int64)
        for r in range(R.order):
            rr = np.full(cand.shape, r, dtype=np.int64)
            prod = R.mul_many(rr, cand) if left else R.mul_many(cand, rr)
            one_arr = np.full(cand.shape, R.one, dtype=np.int64)
            ok = unit_mask[R.sub_many(one_arr, prod)]
            cand = cand[ok]
            if not cand.size:
                break
        return cand

    left = one_sided(True)
    right = one_sided(False)
    if not np.array_equal(left, right):
        raise AssertionError("left and right quasi-regular sets differ")
    return left


def structural_subsets(R: FiniteRing) -> StructuralSubsets:
    if R._subsets is not None:
        return R._subsets
    data = power_data(R)
    idx = np.arange(R.order, dtype=np.int64)
    units = tuple(int(h) for h in idx[data.unit])
    subs = StructuralSubsets(
        units=units,
        nilpotents=tuple(int(h) for h in idx[data.nilpotent]),
        idempotents=tuple(int(h) for h in idx[data.idempotent]),
        potents=tuple(int(h) for h in idx[data.potent]),
        torsion_units=units,
        unipotents=tuple(int(h) for h in idx[data.unipotent]),
        center=tuple(int(h) for h in _center(R)),
        jacobson=tuple(int(h) for h in _jacobson(R, data.unit)),
    )
    R._subsets = subs
    return subs


# ---------------------------------------------------------------------------
# Ring-level nilpotent-structure predicates


@dataclass(frozen=True)
class NIResult:
    is_ni: bool
    max_nilpotency_index: int
    counterexample: tuple[str, int, int] | None
    """When not NI: (kind, a, b) with kind one of "sum", "left_mul",
    "right_mul"; the witnessed operation lands outside the nilpotents."""


def nil_additively_closed(R: FiniteRing) -> tuple[bool, tuple[int, int] | None]:
    """Is the set of nilpotents closed under addition?  Returns the
    smallest-handle counterexample pair otherwise."""
    data = power_data(R)
    nil = np.nonzero(data.nilpotent)[0].astype(np.int64)
    k = nil.size
    if k == 0:
        return True, None
    sums = R.add_many(np.repeat(nil, k), np.tile(nil, k))
    bad = ~data.nilpotent[sums]
    if not bad.any():
        return True, None
    t = int(np.nonzero(bad)[0][0])
    return False, (int(nil[t // k]), int(nil[t % k]))


def nilpotence_index_bound(R: FiniteRing) -> int:
    """Max over the nilpotents of the minimal k with x^k = 0 (at least 1,
    from the zero element)."""
    data = power_data(R)
    return int(data.mu[data.nilpotent].max())


def is_NI(R: FiniteRing) -> NIResult:
    """NI means the nilpotents form a two-sided ideal."""
    data = power_data(R)
    nil = np.nonzero(data.nilpotent)[0].astype(np.int64)
    d = int(data.mu[data.nilpotent].max())
    closed, pair = nil_additively_closed(R)
    if not closed:
        return NIResult(False, d, ("sum", pair[0], pair[1]))
    idx = np.arange(R.order, dtype=np.int64)
    k = nil.size
    reps = np.repeat(idx, k)
    tiles = np.tile(nil, R.order)
    left = R.mul_many(reps, tiles)
    bad = ~data.nilpotent[left]
    if bad.any():
        t = int(np.nonzero(bad)[0][0])
        return NIResult(False, d, ("left_mul", int(reps[t]), int(tiles[t])))
    right = R.mul_many(tiles, reps)
    bad = ~data.nilpotent[right]
    if bad.any():
        t = int(np.nonzero(bad)[0][0])
        return NIResult(False, d, ("right_mul", int(tiles[t]), int(reps[t])))
    return NIResult(True, d, None)


def is_weakly_2_primal(R: FiniteRing) -> bool:
    """Decided as nilpotents = jacobson.  In a finite ring J(R) is
    nilpotent, so the Levitzki radical, both nilradicals and J(R) all
    coincide; the definition reduces to this set equality."""
    subs = structural_subsets(R)
    return subs.nilpotents == subs.jacobson


# ---------------------------------------------------------------------------
# Unit group nilpotency


@dataclass(frozen=True)
class UnitGroupNilpotency:
    is_nilpotent: bool
    nilpotency_class: int | None
    unit_count: int
    generator_count: int


def _unit_inverse(R: FiniteRing, u: int) -> int:
    mu, c = _power_walk(R, u)
    assert mu == 1 and R.pow(u, c) == R.one
    return R.pow(u, c - 1)


def _orbit_close(R: FiniteRing, seeds: Array, gens: list[int],
                 cap: int) -> Array:
    """Subgroup closure: orbit of seeds under right multiplication by the
    generators and their inverses."""
    member = dict.fromkeys(int(s) for s in seeds)
    frontier = np.unique(np.asarray(list(member), dtype=np.int64))
    steps = sorted({g for u in gens for g in (u, _unit_inverse(R, u))})
    while frontier.size:
        new = []
        for g in steps:
            gg = np.full(frontier.shape, g, dtype=np.int64)
            for p in R.mul_many(frontier, gg).tolist():
                if p not in member:
                    member[p] = None
                    new.append(p)
        if len(member) > cap:
            raise CapExceeded(f"subgroup closure exceeded cap {cap}")
        frontier = np.asarray(new, dtype=np.int64)
    return np.array(sorted(member), dtype=np.int64)


def _generators(R: FiniteRing, units: Array, cap: int) -> tuple[list[int], Array]:
    """Greedy generating set: scan units ascending, keep those outside the
    closure so far."""
    gens: list[int] = []
    closure = np.array([R.one], dtype=np.int64)
    closed = {R.one}
    for u in units.tolist():
        if u in closed:
            continue
        gens.append(int(u))
        closure = _orbit_close(R, closure, gens, cap)
        closed = set(closure.tolist())
        if len(closed) == units.size:
            break
    return gens, closure


def _normal_closure(R: FiniteRing, seeds: list[int], ugens: list[int],
                    cap: int) -> Array:
    """Smallest subgroup containing the seeds and closed under conjugation
    by the unit group (conjugating by the unit generators suffices)."""
    cur_gens = sorted(set(seeds) | {R.one})
    members = _orbit_close(R, np.array([R.one], dtype=np.int64), cur_gens, cap)
    while True:
        new_gens = []
        mset = set(members.tolist())
        for g in ugens:
            ginv = _unit_inverse(R, g)
            gg = np.full(members.shape, g, dtype=np.int64)
            gi = np.full(members.shape, ginv, dtype=np.int64)
            conj = R.mul_many(R.mul_many(gi, members), gg)
            for hc in conj.tolist():
                if hc not in mset:
                    new_gens.append(hc)
        if not new_gens:
            return members
        cur_gens = sorted(set(cur_gens) | set(new_gens))
        members = _orbit_close(R, members, cur_gens, cap)


def unit_group_is_nilpotent(R: FiniteRing,
                            cap: int = UNIT_GROUP_CAP) -> UnitGroupNilpotency:
    """Decide nilpotency of U(R) via its lower central series.

    gamma_1 = U, gamma_{k+1} = normal closure of the commutators
    [gamma_k generators, U generators]; nilpotent of class k when the
    series hits the trivial group, not nilpotent when it stalls above it.
    Raises CapExceeded when the unit group outgrows the cap.
    """
    data = power_data(R)
    units = np.nonzero(data.unit)[0].astype(np.int64)
    n_units = int(units.size)
    if n_units > cap:
        raise CapExceeded(f"unit group of size {n_units} exceeds cap {cap}")

    # Abelian fast path (class <= 1).
    abelian = True
    for u in units.tolist():
        uu = np.full(units.shape, u, dtype=np.int64)
        if not np.array_equal(R.mul_many(units, uu), R.mul_many(uu, units)):
            abelian = False
            break
    if abelian:
        cls = 0 if n_units == 1 else 1
        gens, _ = _generators(R, units, cap)
        return UnitGroupNilpotency(True, cls, n_units, len(gens))

    ugens, _ = _generators(R, units, cap)
    gamma_gens = ugens
    gamma_size = n_units
    cls = 1
    while True:
        comms = []
        for a in gamma_gens:
            ainv = _unit_inverse(R, a)
            for b in ugens:
                binv = _unit_inverse(R, b)
                comms.append(R.mul(R.mul(ainv, binv), R.mul(a, b)))
        nxt = _normal_closure(R, comms, ugens, cap)
        if nxt.size == 1:
            return UnitGroupNilpotency(True, cls, n_units, len(ugens))
        if nxt.size >= gamma_size:
            return UnitGroupNilpotency(False, None, n_units, len(ugens))
        gamma_size = int(nxt.size)
        gamma_gens = [int(h) for h in nxt if h != R.one]
        cls += 1


# ---------------------------------------------------------------------------
# Periodicity of polynomials over a commutative ring


@dataclass(frozen=True)
class PolyPeriodicity:
    kind: str  # "Periodic" | "NotPeriodic" | "UnknownUpToBound"
    m: int | None = None
    n: int | None = None
    reason: str | None = None


def _poly_trim(cs: tuple[int, ...]) -> tuple[int, ...]:
    k = len(cs)
    while k > 0 and cs[k - 1] == 0:
        k -= 1
    return cs[:k]


def _poly_mul(R: FiniteRing, f: tuple[int, ...],
              g: tuple[int, ...]) -> tuple[int, ...]:
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            if b == 0:
                continue
            out[i + j] = R.add(out[i + j], R.mul(a, b))
    return _poly_trim(tuple(out))


def _poly_walk(R: FiniteRing, f: tuple[int, ...],
               bound: int | None) -> tuple[int, int] | None:
    """First repeat among f, f^2, ...; None if the bound cuts it off."""
    seen: dict[tuple[int, ...], int] = {}
    cur = f
    k = 1
    while cur not in seen:
        if bound is not None and (k > bound or len(cur) > _POLY_DEGREE_CAP):
            return None
        seen[cur] = k
        cur = _poly_mul(R, cur, f)
        k += 1
    return seen[cur], k


def poly_element_periodic(R: FiniteRing, coeffs: list[int],
                          exponent_bound: int = DEFAULT_EXPONENT_BOUND
                          ) -> PolyPeriodicity:
    """Is the polynomial with the given coefficients (constant term first)
    periodic in R[t], i.e. does f^m = f^n hold for some m < n?

    Decision rules, applied in order and each sound:
      1. deg(f) >= 1 with unit leading coefficient: never periodic, the
         leading term of f^k is (lead)^k t^(k deg) and never dies.
      2. every coefficient nilpotent: f is nilpotent in R[t] (R is
         commutative), so the power walk reaches 0 and the first repeat
         is a genuine witness; no bound is needed.
      3. otherwise walk the powers up to the exponent bound and report
         the repeat if one appears, UnknownUpToBound if not.
    """
    if not R.is_commutative():
        raise NotCommutative(
            f"{R.spec_string} is not commutative; polynomial periodicity "
            "is only decided over commutative coefficient rings")
    f = _poly_trim(tuple(int(c) for c in coeffs))
    for c in f:
        if not (0 <= c < R.order):
            raise ValueError(f"coefficient {c} is not a handle of {R.spec_string}")

    data = power_data(R)
    if len(f) >= 2 and data.unit[f[-1]]:
        return PolyPeriodicity(
            kind="NotPeriodic",
            reason=f"leading coefficient {f[-1]} at degree {len(f) - 1} "
                   "is a unit, so powers have strictly increasing degree")

    if all(data.nilpotent[c] for c in f):
        m, n = _poly_walk(R, f, None)
        return PolyPeriodicity(kind="Periodic", m=m, n=n)

    hit = _poly_walk(R, f, exponent_bound)
    if hit is None:
        return PolyPeriodicity(
            kind="UnknownUpToBound",
            reason=f"no repeat among the first {exponent_bound} powers")
    return PolyPeriodicity(kind="Periodic", m=hit[0], n=hit[1])
