import pytest

from ribbonheap.builders import (
    add_twisted_band,
    annulus,
    boundary_connected_sum,
    builder_from_spec,
    disjoint_union,
    disk,
    hopf_annuli,
    looped_band,
    punctured_disk,
    realize_group,
    stabilize,
    stabilize_all_crossings,
    three_annuli_chain,
    torus_t1,
    trivial_band_closure,
)
from ribbonheap.diagram import DiagramError, boundary, validate
from ribbonheap.presentation import (
    abelianization,
    fundamental_presentation,
    tietze_simplify,
)


def summaries(d):
    return validate(d).as_tuples()


def test_disk_and_annulus():
    assert summaries(disk()) == ((1, 1, 0),)
    assert summaries(annulus()) == ((0, 2, 0),)


@pytest.mark.parametrize(
    "m,n", [(1, 0), (2, 0), (0, 1), (0, 2), (1, 1), (3, 2)]
)
def test_trivial_band_closure_topology(m, n):
    # genus n, m+1 boundary circles, chi = 1 - m - 2n
    assert summaries(trivial_band_closure(m, n)) == ((1 - m - 2 * n, m + 1, n),)


def test_looped_band_is_annulus():
    for m in (1, 2, 3, 4):
        assert summaries(looped_band(m)) == ((0, 2, 0),)


@pytest.mark.parametrize("ms,k,b", [([2], 0, 2), ([2, 3], 0, 3), ([2, 3], 1, 4)])
def test_punctured_disk_topology(ms, k, b):
    assert summaries(punctured_disk(ms, k)) == ((2 - b - 0, b, 0),)


def test_torus_topology():
    for k in (0, 1, 2, 3):
        assert summaries(torus_t1(k)) == ((-1, 1, 1),)


def test_three_annuli_and_hopf():
    assert summaries(three_annuli_chain()) == ((0, 2, 0),) * 3
    assert summaries(hopf_annuli()) == ((0, 2, 0),) * 2


def test_disjoint_union():
    d = disjoint_union(annulus(), torus_t1(1))
    assert summaries(d) == ((0, 2, 0), (-1, 1, 1))


def test_boundary_connected_sum_counts():
    d1, d2 = annulus(), annulus()
    out = boundary_connected_sum(d1, "e0", d2, "e0")
    (comp,) = summaries(out)
    # b drops by one across the union, genus stays 0
    assert comp == (-1, 3, 0)


def test_add_twisted_band_same_edge():
    d = annulus()
    out = add_twisted_band(d, "e0", "e0", sign=0)
    (comp,) = summaries(out)
    assert comp == (-1, 3, 0)  # same boundary circle: b goes up
    p = tietze_simplify(fundamental_presentation(out))
    ab = abelianization(p)
    assert (ab.free_rank, ab.torsion) == (2, ())  # heap unchanged: F_2


def test_add_twisted_band_across_circles():
    # both feet on one band but on opposite boundary circles: b drops,
    # genus rises, and the fundamental heap still does not change
    d = annulus()
    out = add_twisted_band(d, ("e0", 0), ("e0", 1), sign=0)
    (comp,) = summaries(out)
    assert comp == (-1, 1, 1)
    ab = abelianization(fundamental_presentation(out))
    assert (ab.free_rank, ab.torsion) == (2, ())


def test_add_twisted_band_distinct_edges_same_component():
    d = trivial_band_closure(2, 0)
    edges = sorted(d.edges)
    before = abelianization(fundamental_presentation(d))
    out = add_twisted_band(d, edges[0], edges[1], sign=1)
    after = abelianization(fundamental_presentation(out))
    assert (before.free_rank, before.torsion) == (after.free_rank, after.torsion)
    assert validate(out).nu == 1


def test_stabilize_effect_on_heap():
    d = annulus()
    out = stabilize(d, "e0")
    ab = abelianization(tietze_simplify(fundamental_presentation(out)))
    # sides equated (one relation) plus one fresh free generator
    assert (ab.free_rank, ab.torsion) == (2, ())
    nu = validate(out).nu
    assert nu == 1


def test_stabilize_all_crossings_frees_the_torus():
    d = torus_t1(1)
    out = stabilize_all_crossings(d)
    p = tietze_simplify(fundamental_presentation(out))
    assert p.relators == []


def test_realize_group_cyclic():
    d = realize_group(["a"], [(1, 1, 1)])
    ab = abelianization(fundamental_presentation(d))
    assert (ab.free_rank, ab.torsion) == (3, (3,))


def test_realize_group_commutator():
    d = realize_group(["a", "b"], [(1, 2, -1, -2)])
    ab = abelianization(fundamental_presentation(d))
    # Z^k + Ab(G) with k = 2 + 1 + 1 and Ab(G) = Z^2
    assert (ab.free_rank, ab.torsion) == (6, ())


def test_realize_group_trivial_presentation():
    d = realize_group([], [])
    ab = abelianization(fundamental_presentation(d))
    assert (ab.free_rank, ab.torsion) == (1, ())


def test_realize_group_mixed():
    # two generators, two relators: k = 2 + 2 + 1
    d = realize_group(["a", "b"], [(1, 1), (2, 2, 2)])
    ab = abelianization(fundamental_presentation(d))
    assert ab.free_rank == 5
    assert ab.torsion == (6,) or ab.torsion == (2, 3)


def test_builder_specs():
    assert summaries(builder_from_spec("bands:1,1")) == ((-2, 2, 1),)
    assert summaries(builder_from_spec("loops:2,3;1")) == ((-2, 4, 0),)
    assert summaries(builder_from_spec("torus:2")) == ((-1, 1, 1),)
    assert summaries(builder_from_spec("rings3")) == ((0, 2, 0),) * 3
    with pytest.raises(DiagramError):
        builder_from_spec("mystery:1")


def test_component_order_rings3():
    b = boundary(three_annuli_chain())
    assert b.component_count == 3
    # middle first: its circles carry two events each
    mids = b.component_circles(0)
    assert all(len(b.circle_events[ci]) == 2 for ci in mids)
