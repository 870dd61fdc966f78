"""Group realization: Cayley tables and their validation."""

import numpy as np
import pytest

from ringlab.errors import InvalidSpec
from ringlab.groups import GroupTable, realize_group
from ringlab.specs import (Cyclic, Dihedral, DirectProductGroup,
                           ExplicitTable, parse_group_spec)


def _assert_group_axioms(G: GroupTable):
    n = G.order
    for a in range(n):
        assert G.mul(0, a) == a and G.mul(a, 0) == a
        assert G.mul(a, G.inv(a)) == 0 and G.mul(G.inv(a), a) == 0
    for a in range(n):
        for b in range(n):
            for c in range(n):
                assert G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c))


def test_cyclic_is_modular_addition():
    G = realize_group(Cyclic(6))
    for a in range(6):
        for b in range(6):
            assert G.mul(a, b) == (a + b) % 6
    _assert_group_axioms(G)
    assert G.is_abelian()


def test_dihedral_presentation():
    # D3 = <r, s | r^3 = s^2 = 1, s r s = r^-1>, element s^e r^a at e*3 + a
    G = realize_group(Dihedral(3))
    assert G.order == 6
    _assert_group_axioms(G)
    assert not G.is_abelian()
    r, s = 1, 3
    assert G.mul(r, G.mul(r, r)) == 0
    assert G.mul(s, s) == 0
    assert G.mul(G.mul(s, r), s) == G.inv(r)


def test_direct_product_big_endian():
    G = realize_group(DirectProductGroup((Cyclic(2), Cyclic(3))))
    assert G.order == 6
    _assert_group_axioms(G)
    # handle = a*3 + b for (a, b) in C2 x C3
    for a1 in range(2):
        for b1 in range(3):
            for a2 in range(2):
                for b2 in range(3):
                    got = G.mul(a1 * 3 + b1, a2 * 3 + b2)
                    assert got == ((a1 + a2) % 2) * 3 + (b1 + b2) % 3


def test_p_group_detection():
    assert realize_group(Cyclic(8)).is_p_group() == (True, 2)
    assert realize_group(
        DirectProductGroup((Cyclic(2), Cyclic(2)))).is_p_group() == (True, 2)
    assert realize_group(Cyclic(6)).is_p_group()[0] is False
    assert realize_group(Dihedral(2)).is_p_group() == (True, 2)
    assert realize_group(Dihedral(3)).is_p_group()[0] is False


def _table_file(tmp_path, name, rows):
    path = tmp_path / name
    path.write_text("\n".join(" ".join(str(v) for v in row) for row in rows))
    return str(path)


def test_explicit_table_validation(tmp_path):
    # Klein four-group, identity at index 0
    k4 = ((0, 1, 2, 3), (1, 0, 3, 2), (2, 3, 0, 1), (3, 2, 1, 0))
    G = realize_group(ExplicitTable(_table_file(tmp_path, "k4.txt", k4)))
    _assert_group_axioms(G)
    assert G.is_p_group() == (True, 2)

    with pytest.raises(InvalidSpec):  # identity not at index 0
        realize_group(ExplicitTable(
            _table_file(tmp_path, "noid.txt", ((1, 0), (0, 1)))))
    with pytest.raises(InvalidSpec):  # not a Latin square
        realize_group(ExplicitTable(
            _table_file(tmp_path, "nolatin.txt", ((0, 1), (1, 1)))))
    # a Latin square with identity that is not associative (order 5
    # quasigroup; the only order-5 group is cyclic, and this is not)
    q = ((0, 1, 2, 3, 4),
         (1, 0, 3, 4, 2),
         (2, 3, 4, 0, 1),
         (3, 4, 1, 2, 0),
         (4, 2, 0, 1, 3))
    with pytest.raises(InvalidSpec):
        realize_group(ExplicitTable(_table_file(tmp_path, "quasi.txt", q)))


def test_inverse_table_consistency():
    for spec in (Cyclic(12), Dihedral(4),
                 DirectProductGroup((Cyclic(2), Cyclic(4)))):
        G = realize_group(spec)
        inv = np.array([G.inv(a) for a in range(G.order)])
        assert sorted(inv.tolist()) == list(range(G.order))
