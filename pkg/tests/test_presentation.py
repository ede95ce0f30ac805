import pytest

from ribbonheap.builders import (
    annulus,
    disjoint_union,
    disk,
    hopf_annuli,
    looped_band,
    punctured_disk,
    torus_t1,
    trivial_band_closure,
)
from ribbonheap.groups import cyclic_group, dihedral_group
from ribbonheap.presentation import (
    AbelianInvariants,
    GroupPresentation,
    PresentationError,
    abelian_invariants_of_factors,
    abelianization,
    count_presentation_homs,
    format_presentation,
    fundamental_presentation,
    parse_presentation,
    smith_normal_form,
    split_free_factor,
    tietze_simplify,
)


def simplified_ab(d):
    p = tietze_simplify(fundamental_presentation(d))
    ab = abelianization(p)
    return ab.free_rank, ab.torsion


def test_annulus_presentation_free_rank_two():
    p = fundamental_presentation(annulus())
    assert len(p.generators) == 2 and p.relators == []


def test_cascade_elimination():
    # <x,z,u,v | z = x u^-1 v, u = x, v = x> simplifies to <x>
    p = GroupPresentation(["x", "z", "u", "v"], [(2, -4, 3, -1), (3, -1), (4, -1)])
    q = tietze_simplify(p)
    assert len(q.generators) == 1 and q.relators == []


def test_trivial_bands_simplify_to_free():
    for m, n in ((1, 1), (2, 0), (0, 2), (2, 1)):
        q = tietze_simplify(fundamental_presentation(trivial_band_closure(m, n)))
        assert q.relators == []
        assert len(q.generators) == m + n + 1


def test_looped_band_presentation():
    for m in (2, 3, 4):
        q = tietze_simplify(fundamental_presentation(looped_band(m)))
        ab = abelianization(q)
        assert (ab.free_rank, ab.torsion) == (1, (m,))


def test_torus_abelianization_chain_form():
    for k in (1, 2, 3):
        expected = abelian_invariants_of_factors([k + 1, k])
        assert simplified_ab(torus_t1(k)) == (1, expected)


def test_punctured_disk_abelianization():
    assert simplified_ab(punctured_disk([2, 3], 1)) == (2, (6,))
    assert simplified_ab(punctured_disk([2, 4], 0)) == (1, (2, 4))


def test_abelianization_invariant_under_simplification():
    for d in (torus_t1(2), punctured_disk([3], 1), hopf_annuli()):
        p = fundamental_presentation(d)
        a1 = abelianization(p)
        a2 = abelianization(tietze_simplify(p))
        assert (a1.free_rank, a1.torsion) == (a2.free_rank, a2.torsion)


def test_split_free_factor():
    q = tietze_simplify(fundamental_presentation(annulus()))
    count, reduced = split_free_factor(q)
    assert count == 2 and reduced.generators == []

    q = tietze_simplify(fundamental_presentation(looped_band(3)))
    count, reduced = split_free_factor(q)
    assert count == 1
    ab = abelianization(reduced)
    assert (ab.free_rank, ab.torsion) == (0, (3,))

    d = disjoint_union(annulus(), annulus())
    count, reduced = split_free_factor(tietze_simplify(fundamental_presentation(d)))
    assert count == 4


def test_split_free_factor_at_least_component_count():
    from ribbonheap.diagram import validate

    for d in (hopf_annuli(), torus_t1(1), punctured_disk([2, 2], 1)):
        q = tietze_simplify(fundamental_presentation(d))
        count, _ = split_free_factor(q)
        assert count >= validate(d).nu


def test_disjoint_union_abelianization_is_direct_sum():
    d1, d2 = looped_band(2), looped_band(3)
    a = abelianization(fundamental_presentation(disjoint_union(d1, d2)))
    assert (a.free_rank, a.torsion) == (2, (6,))


def test_smith_normal_form_basics():
    assert smith_normal_form([[2, 4], [6, 8]]) == [2, 4]
    assert smith_normal_form([[1, 0], [0, 1]]) == [1, 1]
    assert smith_normal_form([[0, 0], [0, 0]]) == []
    # divisibility chain is enforced
    diag = smith_normal_form([[2, 0], [0, 3]])
    assert diag == [1, 6]
    assert abelian_invariants_of_factors([2, 3]) == (6,)
    assert abelian_invariants_of_factors([4, 6]) == (2, 12)


def test_smith_normal_form_large_entries():
    diag = smith_normal_form([[10**12, 1], [0, 10**12]])
    assert diag[0] == 1 and diag[1] == 10**24


def test_hom_count_against_formula():
    g = cyclic_group(3)
    p = fundamental_presentation(looped_band(3))
    assert count_presentation_homs(p, g) == 9
    p = fundamental_presentation(annulus())
    assert count_presentation_homs(p, dihedral_group(2)) == 16


def test_presentation_format_roundtrip():
    p = GroupPresentation(["a", "b"], [(1, 2, -1, -2), (1, 1, 1)])
    text = format_presentation(p)
    q = parse_presentation(text)
    assert q.generators == p.generators and q.relators == p.relators


def test_presentation_parse_errors():
    with pytest.raises(PresentationError):
        parse_presentation("rel: a\n")
    with pytest.raises(PresentationError):
        parse_presentation("gens: a\nrel: b\n")


def test_disk_presentation():
    p = fundamental_presentation(disk())
    assert len(p.generators) == 1 and p.relators == []
