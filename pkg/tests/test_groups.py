import pytest

from ribbonheap.groups import (
    AbelianGroup,
    GroupError,
    cyclic_group,
    dihedral_group,
    group_from_table_text,
    parse_group_spec,
)


def test_cyclic_trivial():
    g = cyclic_group(1)
    assert g.order == 1
    assert g.identity == 0


def test_cyclic_three():
    g = cyclic_group(3)
    # z * z^2 = 1, forced by the group axioms
    assert g.op(1, 2) == 0


def test_cyclic_six_powers():
    g = cyclic_group(6)
    # z^4 * z^5 = z^3 by modular arithmetic
    assert g.op(4, 5) == 3


def test_cyclic_rejects_zero():
    with pytest.raises(GroupError):
        cyclic_group(0)


def test_dihedral_one_is_z2():
    g = dihedral_group(1)
    assert g.order == 2
    assert g.op(1, 1) == 0


def test_dihedral_three_against_permutations():
    # D_3 as permutations of {0,1,2}: z = rotation, a = transposition fixing 0
    import itertools

    rot = (1, 2, 0)
    refl = (0, 2, 1)

    def compose(p, q):  # apply q then p
        return tuple(p[q[i]] for i in range(3))

    perms = {}

    def elt(f, j):
        m = (0, 1, 2)
        for _ in range(j):
            m = compose(rot, m)
        if f:
            m = compose(refl, m)
        return m

    g = dihedral_group(3)
    for x in range(6):
        for y in range(6):
            fx, jx = divmod(x, 3)
            fy, jy = divmod(y, 3)
            # x*y in the table must match permutation composition x after y
            lhs = g.op(x, y)
            fl, jl = divmod(lhs, 3)
            assert elt(fl, jl) == compose(elt(fx, jx), elt(fy, jy))
    assert not g.is_abelian()
    # reflections square to the identity
    for x in range(3, 6):
        assert g.op(x, x) == 0
    # defining relation a z a = z^-1
    a = 3
    assert g.op(g.op(a, 1), a) == g.inv[1]


def test_dihedral_four_center():
    g = dihedral_group(4)
    assert g.center() == [0, 2]


def test_table_parse_roundtrip():
    g = cyclic_group(4)
    text = "\n".join(" ".join(str(v) for v in row) for row in g.mul)
    g2 = group_from_table_text(text)
    assert g2.mul == g.mul


def test_table_parse_rejects_nongroup():
    with pytest.raises(GroupError):
        group_from_table_text("0 0\n0 0")


def test_abelian_group_arithmetic():
    A = AbelianGroup((2, 3))
    assert A.order == 6
    a = (1, 2)
    assert A.add(a, a) == (0, 1)
    assert A.neg(a) == (1, 1)
    assert len(A.elements()) == 6
    assert A.name(A.zero()) == "e"


def test_parse_group_spec():
    assert parse_group_spec("cyclic:5").order == 5
    assert parse_group_spec("dihedral:3").order == 6
    with pytest.raises(GroupError):
        parse_group_spec("nope:3")
