"""Default ring catalog for scans and the invariant suite.

Chosen to cover every constructor and both sides of every predicate at
orders small enough for exhaustive work: fields and non-fields, matrix
rings over both, triangular rings, products mixing the two, group rings
over p-groups and non-p-groups (D3 is the non-abelian control), a proper
quotient, and endomorphism rings of abelian groups.  Orders stay at or
below 4096.
"""

from __future__ import annotations

from .specs import parse_ring_spec, spec_order

DEFAULT_CATALOG: tuple[str, ...] = (
    "Z/2",
    "Z/3",
    "Z/4",
    "Z/5",
    "Z/6",
    "Z/8",
    "Z/9",
    "Z/12",
    "Z/16",
    "GF(4)",
    "GF(8)",
    "GF(9)",
    "GF(16)",
    "GF(25)",
    "GF(27)",
    "M(2,GF(2))",
    "M(2,GF(3))",
    "M(2,GF(4))",
    "M(2,Z/4)",
    "M(2,Z/6)",
    "M(3,GF(2))",
    "UT(2,GF(2))",
    "UT(2,Z/4)",
    "UT(3,GF(2))",
    "Prod(Z/2,Z/3)",
    "Prod(Z/4,GF(4))",
    "Prod(M(2,GF(2)),Z/2)",
    "GR(GF(2),C2)",
    "GR(GF(2),C3)",
    "GR(GF(2),C2xC2)",
    "GR(GF(2),D3)",
    "GR(Z/4,C2)",
    "GR(Z/4,C2xC2)",
    "GR(GF(3),C3)",
    "Quot(Z/8,[4])",
    "End(Ab[2,2])",
    "End(Ab[4])",
    "End(Ab[2,4])",
)


def catalog_specs(max_order: int | None = None) -> list[str]:
    """Catalog entries, optionally filtered to orders within max_order."""
    if max_order is None:
        return list(DEFAULT_CATALOG)
    out = []
    for s in DEFAULT_CATALOG:
        if spec_order(parse_ring_spec(s)) <= max_order:
            out.append(s)
    return out
