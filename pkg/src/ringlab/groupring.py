"""Group-ring analysis: augmentation, its kernel, and nil-ideal checks.

Elements of RG are coefficient vectors over the group (identity coefficient
first).  The augmentation map sums the coefficients; its kernel is the
augmentation ideal, written delta here.  The central question this module
answers is whether delta is nil, element by element, with exponent
witnesses either way; the report also records the prediction "delta is nil
when p·1 is nilpotent in R and G is a p-group" next to the observed answer
so agreement is data, not an assumption.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from .classify import power_data
from .decompose import PREDICATE_KINDS, ring_predicate
from .errors import InvalidSpec, OrderCapExceeded
from .groups import GroupTable
from .rings import (DEFAULT_MAX_ORDER, FiniteRing, IdealHandle, realize)
from .rings import _GroupRingBackend
from .specs import (GroupRing, GroupSpec, RingSpec, prime_power, render,
                    render_group)

Array = np.ndarray


@dataclass(frozen=True)
class GroupRingView:
    ring: FiniteRing
    coeff_ring: FiniteRing
    group: GroupTable

    def coefficient(self, x: int, i: int) -> int:
        """Coefficient of the i-th group element in x."""
        return int(self.ring.backend._dec[x, i])

    def coefficients(self, x: int) -> tuple[int, ...]:
        return tuple(int(v) for v in self.ring.backend._dec[x])

    def from_coefficients(self, cs: Sequence[int]) -> int:
        if len(cs) != self.group.order:
            raise InvalidSpec(f"expected {self.group.order} coefficients")
        return self.ring.backend._encode_scalar(list(cs))

    def group_element(self, i: int) -> int:
        """The handle of the group element g_i viewed inside RG."""
        cs = [0] * self.group.order
        cs[i] = self.coeff_ring.one
        return self.from_coefficients(cs)


def groupring_view(R: FiniteRing) -> GroupRingView:
    if not isinstance(R.backend, _GroupRingBackend):
        raise InvalidSpec(f"{R.spec_string} is not a group ring")
    return GroupRingView(ring=R, coeff_ring=R.backend.coeff,
                         group=R.backend.group)


def augmentation(V: GroupRingView, x: int) -> int:
    """Sum of the coefficients of x, in the coefficient ring."""
    acc = 0
    for i in range(V.group.order):
        acc = V.coeff_ring.add(acc, V.coefficient(x, i))
    return acc


def augmentation_many(V: GroupRingView, xs: Array) -> Array:
    dec = V.ring.backend._dec[np.asarray(xs, dtype=np.int64)].astype(np.int64)
    acc = dec[..., 0]
    for i in range(1, V.group.order):
        acc = V.coeff_ring.add_many(acc, dec[..., i])
    return acc


def augmentation_ideal(V: GroupRingView) -> IdealHandle:
    """Kernel of the augmentation: |kernel| = |RG| / |R|."""
    xs = np.arange(V.ring.order, dtype=np.int64)
    kernel = xs[augmentation_many(V, xs) == 0]
    ideal = IdealHandle(tuple(int(h) for h in kernel))
    assert len(ideal) * V.coeff_ring.order == V.ring.order
    return ideal


@dataclass(frozen=True)
class NilIdealReport:
    ideal: IdealHandle
    is_nil: bool
    max_index: int | None
    counterexample: int | None
    counterexample_witness: tuple[int, int] | None
    """Power-walk pair (m, n) of the counterexample: its powers cycle
    through x^m = x^n without ever reaching 0."""
    prime: int | None
    group_is_p_group: bool
    p_nilpotent_in_coeff: bool | None
    predicted_nil: bool | None
    agrees: bool | None


def delta_nil_check(coeff: RingSpec, group: GroupSpec,
                    max_order: int = DEFAULT_MAX_ORDER) -> NilIdealReport:
    """Build RG, compute delta, and decide its nilness element-by-element.

    The prediction column: when G is a p-group and p·1 is nilpotent in R,
    delta should be nil.  When G is not a p-group there is no prediction.
    """
    RG = realize(GroupRing(coeff, group), max_order)
    V = groupring_view(RG)
    ideal = augmentation_ideal(V)
    data = power_data(RG)
    handles = np.array(ideal.handles, dtype=np.int64)
    nil_mask = data.nilpotent[handles]

    is_p, p = V.group.is_p_group()
    p_nilpotent: bool | None = None
    predicted: bool | None = None
    if is_p:
        R = V.coeff_ring
        p_elem = 0
        for _ in range(p):
            p_elem = R.add(p_elem, R.one)
        p_nilpotent = bool(power_data(R).nilpotent[p_elem])
        predicted = True if p_nilpotent else None

    if nil_mask.all():
        max_index = int(data.mu[handles].max())
        return NilIdealReport(
            ideal=ideal, is_nil=True, max_index=max_index,
            counterexample=None, counterexample_witness=None,
            prime=p if is_p else None, group_is_p_group=is_p,
            p_nilpotent_in_coeff=p_nilpotent, predicted_nil=predicted,
            agrees=(True if predicted else None))

    bad = int(handles[~nil_mask][0])
    mu = int(data.mu[bad])
    c = int(data.cycle[bad])
    return NilIdealReport(
        ideal=ideal, is_nil=False, max_index=None,
        counterexample=bad, counterexample_witness=(mu, mu + c),
        prime=p if is_p else None, group_is_p_group=is_p,
        p_nilpotent_in_coeff=p_nilpotent, predicted_nil=predicted,
        agrees=(False if predicted else None))


def nil_report_to_json(rep: NilIdealReport) -> dict[str, Any]:
    return {
        "ideal_size": len(rep.ideal),
        "is_nil": rep.is_nil,
        "max_index": rep.max_index,
        "counterexample": rep.counterexample,
        "counterexample_witness": (list(rep.counterexample_witness)
                                   if rep.counterexample_witness else None),
        "prime": rep.prime,
        "group_is_p_group": rep.group_is_p_group,
        "p_nilpotent_in_coeff": rep.p_nilpotent_in_coeff,
        "predicted_nil": rep.predicted_nil,
        "agrees": rep.agrees,
    }


def groupring_scan(pairs: Sequence[tuple[RingSpec, GroupSpec]],
                   predicates: Sequence[str] = PREDICATE_KINDS,
                   max_order: int = DEFAULT_MAX_ORDER) -> list[dict[str, Any]]:
    """One record per (R, G) pair: requested ring predicates of RG plus the
    delta-nilness report.  Realization failures are recorded, not raised."""
    records: list[dict[str, Any]] = []
    for coeff, group in pairs:
        rec: dict[str, Any] = {"ring": render(coeff),
                               "group": render_group(group)}
        try:
            RG = realize(GroupRing(coeff, group), max_order)
        except OrderCapExceeded as exc:
            rec["error"] = f"OrderCapExceeded: {exc}"
            records.append(rec)
            continue
        rec["order"] = RG.order
        rec["predicates"] = {}
        for kind in predicates:
            res = ring_predicate(RG, kind)
            rec["predicates"][kind] = {"holds": res.holds,
                                       "counterexample": res.counterexample}
        rec["delta"] = nil_report_to_json(delta_nil_check(coeff, group,
                                                          max_order))
        records.append(rec)
    return records
