import pytest

from ribbonheap.builders import (
    annulus,
    hopf_annuli,
    looped_band,
    punctured_disk,
    three_annuli_chain,
    torus_t1,
    trivial_band_closure,
)
from ribbonheap.cochains import phi_vec, zero_cochain
from ribbonheap.coloring import count_colorings
from ribbonheap.diagram import RibbonDiagram, boundary, complete_side_dirs, validate
from ribbonheap.groups import cyclic_group
from ribbonheap.heaps import group_heap
from ribbonheap.invariant import cocycle_invariant, make_decoration
from ribbonheap.moves import MOVE_KINDS, MoveSite, apply_move, find_sites, fuzz

Z3 = group_heap(cyclic_group(3))
PHI3 = phi_vec(3, [0, 1, 2])
ZERO3 = zero_cochain(PHI3.heap, PHI3.coeffs)


def signature(d, decoration=None):
    sig = [validate(d).as_tuples(), count_colorings(d, Z3)]
    if decoration is not None:
        sig.append(cocycle_invariant(d, decoration).terms)
    return sig


def phi_dec(d):
    ncomp = boundary(d).component_count
    return make_decoration([PHI3] * ncomp, check=False)


def assert_move_invariant(d, site, decoration=None):
    before = signature(d, decoration)
    d2 = apply_move(d, site)
    after = signature(d2, decoration)
    assert before == after, "%s %s changed invariants" % (site.kind, site.payload)
    return d2


def triangle_fixture():
    d = RibbonDiagram()
    d.crossings["c1"] = 0
    d.crossings["c2"] = 0
    d.crossings["c3"] = 0
    d.edges["b0"] = (("c1", "uo"), ("c2", "ui"))
    d.edges["b1"] = (("c2", "uo"), ("c1", "ui"))
    d.edges["m0"] = (("c1", "oo"), ("c3", "ui"))
    d.edges["m1"] = (("c3", "uo"), ("c1", "oi"))
    d.edges["t0"] = (("c3", "oo"), ("c2", "oi"))
    d.edges["t1"] = (("c2", "oo"), ("c3", "oi"))
    complete_side_dirs(d)
    validate(d)
    return d


def ring_under_leg_fixture():
    base = trivial_band_closure(2, 0)
    d = base.copy()
    ends = d.edges.pop("e0")
    d.crossings["r1"] = 0
    d.edges["x0"] = (ends[0], ("r1", "oi"))
    d.edges["x1"] = (("r1", "oo"), ends[1])
    d.edges["x2"] = (("r1", "uo"), ("r1", "ui"))
    d.side_dirs = {}
    complete_side_dirs(d)
    validate(d)
    return d


def test_rii_insert_then_cancel_is_identity_shape():
    d = annulus()
    sites = find_sites(d, "RII+")
    assert len(sites) >= 1  # insertion applies on every edge
    d2 = assert_move_invariant(d, sites[0], phi_dec(d))
    back = find_sites(d2, "RII-")
    assert len(back) == 1
    d3 = assert_move_invariant(d2, back[0], phi_dec(d2))
    assert len(d3.crossings) == 0 and len(d3.edges) == 1


def test_rii_between_distinct_components():
    d = hopf_annuli()
    dec = make_decoration([PHI3, ZERO3], check=False)
    d2 = assert_move_invariant(d, MoveSite("RII+", ("a0", "b0", 0)), dec)
    for s in find_sites(d2, "RII-"):
        assert_move_invariant(d2, s, dec)


def test_cl_kink_pair():
    d = looped_band(2)
    dec = phi_dec(d)
    d2 = assert_move_invariant(d, MoveSite("CL+", ("e0", 1)), dec)
    sites = find_sites(d2, "CL-")
    assert sites
    for s in sites[:2]:
        assert_move_invariant(d2, s, dec)


def test_cl_cancels_opposite_kinks_on_looped_band():
    # a +1/-1 kink pair inserted on a band cancels back to the original
    d = looped_band(3)
    d2 = apply_move(d, MoveSite("CL+", ("e0", 0)))
    sites = find_sites(d2, "CL-")
    d3 = apply_move(d2, sites[0])
    assert len(d3.crossings) == len(d.crossings)
    assert count_colorings(d3, Z3) == count_colorings(d, Z3)


def test_ih_move():
    d = punctured_disk([2, 3], 1)
    dec = phi_dec(d)
    sites = find_sites(d, "IH")
    assert sites
    for s in sites:
        assert_move_invariant(d, s, dec)


def test_ih_no_sites_without_vertices():
    assert find_sites(looped_band(2), "IH") == []


def test_yi_roundtrip():
    d = ring_under_leg_fixture()
    dec = make_decoration([PHI3, ZERO3], check=False)
    sites = find_sites(d, "YI+")
    assert sites
    d2 = assert_move_invariant(d, sites[0], dec)
    back = find_sites(d2, "YI-")
    assert back
    d3 = assert_move_invariant(d2, back[0], dec)
    assert len(d3.crossings) == len(d.crossings)


def test_iy_roundtrip():
    d = trivial_band_closure(0, 1)
    dec = phi_dec(d)
    sites = find_sites(d, "IY+")
    assert sites
    d2 = assert_move_invariant(d, sites[0], dec)
    back = find_sites(d2, "IY-")
    assert back
    assert_move_invariant(d2, back[0], dec)


def test_riii_both_directions():
    d = triangle_fixture()
    for dec in (
        make_decoration([PHI3, PHI3, PHI3], check=False),
        make_decoration([ZERO3, PHI3, ZERO3], check=False),
    ):
        sites = find_sites(d, "RIII")
        assert sites
        d2 = assert_move_invariant(d, sites[0], dec)
        back = find_sites(d2, "RIII-")
        assert back
        assert_move_invariant(d2, back[0], dec)


def test_riii_requires_three_strands():
    # a two-strand braid has no slide triangle
    assert find_sites(torus_t1(1), "RIII") == []


def test_find_sites_empty_for_missing_patterns():
    d = annulus()
    for kind in ("RII-", "CL-", "IH", "RIII", "YI+", "IY+"):
        assert find_sites(d, kind) == []


def test_fuzz_deterministic():
    d = three_annuli_chain()
    d1, trace1 = fuzz(d, seed=42, steps=12)
    d2, trace2 = fuzz(d, seed=42, steps=12)
    assert trace1 == trace2
    assert validate(d1).as_tuples() == validate(d2).as_tuples()
    _d3, trace3 = fuzz(d, seed=43, steps=12)
    assert trace1 != trace3 or len(trace3) == 0


def test_fuzz_zero_steps_identity():
    d = torus_t1(1)
    d2, trace = fuzz(d, seed=1, steps=0)
    assert trace == []
    assert d2.edges == d.edges


@pytest.mark.parametrize("seed", [7, 11])
def test_fuzz_preserves_summary_and_colorings(seed):
    for d in (three_annuli_chain(), torus_t1(1), looped_band(2)):
        before = signature(d)
        d2, trace = fuzz(d, seed=seed, steps=25)
        assert len(trace) == 25
        assert signature(d2) == before


def test_fuzz_size_cap_biases_to_shrinkers():
    d = annulus()
    d2, _trace = fuzz(d, seed=3, steps=40, size_cap=16)
    assert len(d2.edges) <= 16 + 8  # slack: growers add at most a few edges
