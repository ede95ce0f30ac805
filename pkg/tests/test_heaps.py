import random

import pytest

from ribbonheap.groups import cyclic_coefficients, cyclic_group, dihedral_group
from ribbonheap.heaps import (
    HeapError,
    affine_op,
    check_op_conditions,
    extension_tsd,
    group_from_heap,
    group_heap,
    is_heap,
    is_tsd,
    ternary_from_fn,
)
from ribbonheap.cochains import coboundary, zero_cochain


def test_group_heap_degeneracy():
    h = group_heap(cyclic_group(2))
    assert h.t(0, 1, 1) == 0  # [x,y,y] = x


def test_group_heap_z3_value():
    h = group_heap(cyclic_group(3))
    assert h.t(1, 0, 1) == 2  # z * 1 * z = z^2


def test_group_heap_d3_value():
    g = dihedral_group(3)
    h = group_heap(g)
    a, z, az = 3, 1, 4
    assert h.t(a, z, az) == g.op(g.op(a, g.inv[z]), az)


def test_group_heaps_are_heaps_and_tsd():
    for g in (cyclic_group(5), dihedral_group(3)):
        h = group_heap(g)
        assert is_heap(h.op)
        assert is_tsd(h.op)


def test_constant_map_is_not_heap():
    op = ternary_from_fn(2, lambda x, y, z: 0)
    assert not is_heap(op)


def test_affine_op_not_heap_in_general():
    assert not is_heap(affine_op(5, 2, 1))


def test_affine_op_is_tsd():
    # linear TSD structure over Z_5 with t=2, s=3
    assert is_tsd(affine_op(5, 2, 3))


def test_random_table_not_tsd():
    rng = random.Random(7)
    op = ternary_from_fn(3, lambda x, y, z: rng.randrange(3))
    assert not is_tsd(op)


def test_group_heap_conditions_all_true():
    for n in (2, 3, 4, 5):
        rep = check_op_conditions(group_heap(cyclic_group(n)).op)
        assert rep.idempotency and rep.reversibility and rep.additivity


def test_affine_op_conditions_fail_with_witness():
    rep = check_op_conditions(affine_op(5, 2, 3))
    assert not (rep.reversibility and rep.additivity)
    assert rep.reversibility_witness or rep.additivity_witness


def test_additivity_and_idempotency_imply_reversibility():
    # scan small ops: whenever additivity and idempotency hold, so does
    # reversibility (set x = z in the additivity identity)
    rng = random.Random(3)
    for _ in range(50):
        op = ternary_from_fn(3, lambda x, y, z: rng.randrange(3))
        rep = check_op_conditions(op)
        if rep.additivity and rep.idempotency:
            assert rep.reversibility


def test_heap_group_recovery():
    # for every heap and fixed e, x*y = T(x,e,y) is a group whose heap is T
    for g in (cyclic_group(4), dihedral_group(3)):
        h = group_heap(g)
        for e in range(h.size):
            g2 = group_from_heap(h, e)
            h2 = group_heap(g2)
            assert h2.op.table == h.op.table


def test_extension_tsd_by_cocycle():
    heap = group_heap(cyclic_group(2))
    A = cyclic_coefficients(2)
    # zero cochain: product structure, TSD
    z = zero_cochain(heap, A)
    tbl = {
        (x, y, zz): z(x, y, zz)
        for x in range(2)
        for y in range(2)
        for zz in range(2)
    }
    assert is_tsd(extension_tsd(heap.op, A, tbl))
    # nonzero coboundary is a cocycle, extension stays TSD
    df = coboundary(heap, A, [(0,), (1,)])
    tbl = {
        (x, y, zz): df(x, y, zz)
        for x in range(2)
        for y in range(2)
        for zz in range(2)
    }
    assert is_tsd(extension_tsd(heap.op, A, tbl))
    # a non-cocycle table breaks TSD
    bad = dict(tbl)
    bad[(0, 0, 1)] = (1,)
    bad[(0, 1, 0)] = (0,)
    bad[(1, 0, 0)] = (0,)
    assert not is_tsd(extension_tsd(heap.op, A, bad))


def test_extension_overflow_guard():
    heap = group_heap(cyclic_group(12))
    A = cyclic_coefficients(12)
    z = zero_cochain(heap, A)
    tbl = {(0, 0, 0): z(0, 0, 0)}
    with pytest.raises(HeapError):
        extension_tsd(heap.op, A, tbl)
