from math import gcd

import pytest

from ribbonheap.builders import (
    annulus,
    disk,
    hopf_annuli,
    looped_band,
    punctured_disk,
    stabilize_all_crossings,
    three_annuli_chain,
    torus_t1,
    trivial_band_closure,
)
from ribbonheap.coloring import count_colorings, enumerate_colorings
from ribbonheap.groups import cyclic_group, dihedral_group
from ribbonheap.heaps import group_heap
from ribbonheap.presentation import (
    count_presentation_homs,
    fundamental_presentation,
    split_free_factor,
    tietze_simplify,
)

Z2 = group_heap(cyclic_group(2))
Z3 = group_heap(cyclic_group(3))
Z4 = group_heap(cyclic_group(4))
D2 = group_heap(dihedral_group(2))


def test_annulus_counts():
    assert count_colorings(annulus(), Z3) == 9
    assert count_colorings(disk(), Z3) == 3


@pytest.mark.parametrize("m,n", [(1, 1), (2, 0), (0, 2)])
def test_trivial_band_counts(m, n):
    d = trivial_band_closure(m, n)
    for heap, q in ((Z2, 2), (Z3, 3)):
        assert count_colorings(d, heap) == q ** (m + n + 1)


def test_three_annuli_counts():
    d = three_annuli_chain()
    assert count_colorings(d, Z3) == 81


@pytest.mark.parametrize("m", [2, 3, 4])
def test_looped_band_counts(m):
    d = looped_band(m)
    for heap, q in ((Z2, 2), (Z3, 3), (Z4, 4)):
        assert count_colorings(d, heap) == q * gcd(m, q)


def test_multi_handle_count_is_product_not_sum():
    # brute force gives the product law q^(k+1) * prod gcd(m_j, q); the
    # additive law q * sum d_j disagrees and is rejected by enumeration
    d = punctured_disk([2, 3], 0)
    for heap, q in ((Z2, 2), (Z3, 3), (Z4, 4)):
        product = q * gcd(2, q) * gcd(3, q)
        total = count_colorings(d, heap)
        assert total == product
    q = 2
    additive = q * (gcd(2, q) + gcd(3, q))
    assert count_colorings(d, Z2) != additive


def test_enumeration_is_deterministic_and_valid():
    d = torus_t1(1)
    first = list(enumerate_colorings(d, Z3))
    second = list(enumerate_colorings(d, Z3))
    assert first == second
    from ribbonheap.diagram import boundary

    b = boundary(d)
    for col in first:
        for ev in b.events:
            t = Z3.t
            assert col[ev.out_p] == t(col[ev.in_p], col[ev.u_arc], col[ev.v_arc])
            assert col[ev.out_q] == t(col[ev.in_q], col[ev.u_arc], col[ev.v_arc])


def test_monochromatic_band_propagates():
    # equal colors on one arc pair of a band force the whole band equal
    d = looped_band(3)
    from ribbonheap.diagram import boundary

    b = boundary(d)
    for col in enumerate_colorings(d, Z3):
        ev = b.events[0]
        if col[ev.in_p] == col[ev.in_q]:
            assert col[ev.out_p] == col[ev.out_q]


def test_stabilized_count_is_free_power():
    d = stabilize_all_crossings(torus_t1(1))
    q = tietze_simplify(fundamental_presentation(d))
    assert q.relators == []
    rank = len(q.generators)
    assert count_colorings(d, Z2) == 2 ** rank


def test_cross_oracle_presentation_vs_enumeration():
    corpus = [
        annulus(),
        trivial_band_closure(1, 1),
        looped_band(3),
        torus_t1(1),
        torus_t1(2),
        three_annuli_chain(),
        hopf_annuli(),
        punctured_disk([2, 3], 1),
    ]
    pairs = [
        (Z2, cyclic_group(2)),
        (Z3, cyclic_group(3)),
        (Z4, cyclic_group(4)),
        (D2, dihedral_group(2)),
    ]
    for d in corpus:
        p = fundamental_presentation(d)
        for heap, group in pairs:
            assert count_colorings(d, heap) == count_presentation_homs(p, group)
