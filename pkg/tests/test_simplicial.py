from hypothesis import given, settings, strategies as st

from picard_omega import corpus
from picard_omega.chain import ChainComplex, homology, is_chain_iso, zero_complex
from picard_omega.core import FgAbGroup, GroupHom, IntMatrix, group_iso_test
from picard_omega.pic import from_pic, p_of
from picard_omega.simplicial import (SimplicialAbGroup, dk_inverse, dk_unit, homotopy_groups, loop_matches_omega,
                                     loop_simplicial, nerve_dk_comparison, nerve_enumerate, nerve_pic,
                                     normalized_chains, validate_simplicial, wbar)

Z, Z2, Z4 = FgAbGroup.free(1), FgAbGroup.cyclic(2), FgAbGroup.cyclic(4)


def test_constant_group():
    g = corpus.constant_simplicial(Z2, 3)
    assert validate_simplicial(g) == []
    k = normalized_chains(g)
    assert k.group(0).invariants == ((2,), 0)
    assert all(k.group(n).is_trivial for n in range(1, 4))
    assert homotopy_groups(g, 0).invariants == ((2,), 0)
    assert all(homotopy_groups(g, n).is_trivial for n in (1, 2))


def test_corrupted_face_is_reported():
    g = corpus.constant_simplicial(Z4, 2)
    twice = GroupHom(Z4, Z4, IntMatrix.from_rows([[2]]))
    faces = list(g.faces)
    faces[1] = (twice, faces[1][1])
    bad = SimplicialAbGroup(g.levels, tuple(faces), g.degeneracies)
    assert validate_simplicial(bad)


def test_gamma_levels_of_z2_in_degree_one():
    g = dk_inverse(ChainComplex.concentrated(Z2, 1), 4)
    assert [lv.order for lv in g.levels] == [1, 2, 4, 8, 16]
    flat = dk_inverse(ChainComplex.concentrated(Z4, 0), 3)
    assert all(lv.order == 4 for lv in flat.levels)
    assert all(f.equals(GroupHom.identity(Z4)) for fs in flat.faces for f in fs)


def test_dk_examples():
    g = dk_inverse(ChainComplex.from_maps(0, [Z, Z], [IntMatrix.from_rows([[2]])]), 3)
    assert homotopy_groups(g, 0).invariants == ((2,), 0)
    assert homotopy_groups(g, 1).is_trivial
    z = dk_inverse(zero_complex(), 2)
    assert all(lv.is_trivial for lv in z.levels)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_dk_roundtrip(seed):
    c = corpus.random_complex(corpus.rng_for(seed), max_degree=3)
    g = dk_inverse(c)
    assert validate_simplicial(g) == []
    assert is_chain_iso(dk_unit(c))
    for n in range(g.T):
        assert group_iso_test(homotopy_groups(g, n), homology(c, n))


def test_nerve_pic_levels():
    c = ChainComplex.concentrated(Z2, 1)
    a = p_of(c)
    objects = sum(1 for x in a.elements() if a.s(0, x) == x)
    assert nerve_pic(a, 2).levels[0].order == objects
    assert nerve_pic(a, 2).levels[2].order == 4
    assert all(lv.is_trivial for lv in nerve_pic(p_of(zero_complex()), 2).levels)


def test_nerve_by_enumeration():
    tab = from_pic(p_of(ChainComplex.concentrated(Z2, 1)))
    assert len(nerve_enumerate(tab, 0)) == sum(tab.src(0, x) == x for x in range(tab.size))
    assert len(nerve_enumerate(tab, 1)) == sum(tab.src(1, x) == x for x in range(tab.size))
    assert len(nerve_enumerate(tab, 2)) == 4


def test_nerve_comparison_small():
    r = nerve_dk_comparison(ChainComplex.concentrated(Z2, 1), 2)
    assert r.ok and r.counts[2] == (4, 4)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_loop_shifts_homotopy(seed):
    g = corpus.random_simplicial(corpus.rng_for(seed), T=4)
    L = loop_simplicial(g)
    assert validate_simplicial(L) == []
    assert loop_matches_omega(g)
    for n in range(L.T):
        assert group_iso_test(homotopy_groups(g, n + 1), homotopy_groups(L, n))


def test_wbar_of_constant():
    w = wbar(corpus.constant_simplicial(Z2, 3))
    assert validate_simplicial(w) == []
    assert homotopy_groups(w, 0).is_trivial
    assert homotopy_groups(w, 1).invariants == ((2,), 0)
    assert all(lv.is_trivial for lv in wbar(corpus.constant_simplicial(FgAbGroup.trivial(), 2)).levels)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_wbar_shifts_chains(seed):
    g = corpus.random_simplicial(corpus.rng_for(seed), T=3)
    w = wbar(g)
    assert validate_simplicial(w) == []
    kw, kg = normalized_chains(w), normalized_chains(g)
    for n in range(g.T + 1):
        assert group_iso_test(homology(kw, n), homology(kg, n - 1))
