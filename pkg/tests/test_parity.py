import itertools

import pytest

from picard_omega.errors import NotComposable, TooLarge
from picard_omega.omega import functor_problems, validate_axioms
from picard_omega.parity import (CellPair, atom, cell_compose, cell_source, cell_target, degeneracy_map,
                                 enumerate_cells, face_map, induced_map, is_cell, monotone_maps, oriental,
                                 parity_problems, product_parity, simplex_parity)


def test_simplex_sizes():
    assert len(simplex_parity(0).elements) == 1
    c = simplex_parity(2)
    assert [sum(c.dim[x] == k for x in c.elements) for k in range(3)] == [3, 3, 1]
    for n in range(5):
        assert len(simplex_parity(n).elements) == 2 ** (n + 1) - 1
        assert parity_problems(simplex_parity(n)) == []


def test_triangle_faces():
    c = simplex_parity(2)
    assert c.minus[(0, 1, 2)] == {(0, 2)}
    assert c.plus[(0, 1, 2)] == {(0, 1), (1, 2)}


def test_products():
    point, edge = simplex_parity(0), simplex_parity(1)
    sq = product_parity(edge, edge)
    assert len(sq.elements) == 9
    top = ((0, 1), (0, 1))
    assert len(sq.minus[top]) == 2 and len(sq.plus[top]) == 2
    assert parity_problems(sq) == []
    tri = simplex_parity(2)
    left = product_parity(point, tri)
    assert len(left.elements) == len(tri.elements)
    for x in tri.elements:
        assert left.minus[((0,), x)] == {((0,), f) for f in tri.minus[x]}
        assert left.plus[((0,), x)] == {((0,), f) for f in tri.plus[x]}


def test_well_formed():
    c = simplex_parity(2)
    assert c.well_formed({(0, 1), (1, 2)})
    assert not c.well_formed({(0, 1), (0, 2)})
    assert not c.well_formed({(0,), (1,)})


def test_atoms():
    c = simplex_parity(2)
    assert atom(c, (1,)) == CellPair(frozenset({(1,)}), frozenset({(1,)}))
    a = atom(c, (0, 1, 2))
    assert a.M == {(0, 1, 2), (0, 2), (0,)}
    assert a.P == {(0, 1, 2), (0, 1), (1, 2), (2,)}
    for n in range(4):
        o = oriental(n)
        assert len(o.atoms) == len(set(o.atoms)) == 2 ** (n + 1) - 1
        assert all(is_cell(o.parity, atom(o.parity, x)) for x in o.parity.elements)


def test_cell_operations():
    c = simplex_parity(2)
    cells = enumerate_cells(c)
    for x in cells:
        for n in range(3):
            t = cell_target(c, n, x)
            assert cell_source(c, n, t) == t
            assert is_cell(c, cell_source(c, n, x))
    e01, e12 = atom(c, (0, 1)), atom(c, (1, 2))
    path = cell_compose(c, 0, e12, e01)
    assert path.M == {(0,), (0, 1), (1, 2)} and path.P == {(2,), (0, 1), (1, 2)}
    with pytest.raises(NotComposable):
        cell_compose(c, 0, e01, e12)


def test_small_orientals():
    assert oriental(0).cat.size == 1
    o1 = oriental(1).cat
    assert o1.size == 3 and sum(o1.src(0, x) == x for x in range(3)) == 2
    o2 = oriental(2).cat
    assert sum(o2.src(1, x) != x for x in range(o2.size)) == 1
    assert oriental(2).top_cell == next(x for x in range(o2.size) if o2.src(1, x) != x)
    for n in range(4):
        assert validate_axioms(oriental(n).cat) == []


def test_nmax_guard(monkeypatch):
    monkeypatch.setenv("OMEGA_DK_NMAX", "2")
    with pytest.raises(TooLarge):
        oriental(3)


def test_induced_examples():
    o1 = oriental(1)
    ident = induced_map((0, 1), 1)
    assert ident.mapping == tuple(range(o1.cat.size))
    sigma = induced_map((0, 0), 0)
    assert sigma.mapping[o1.atom_of[(0, 1)]] == oriental(0).atom_of[(0,)]
    delta = induced_map(face_map(2, 1), 2)
    assert delta.mapping[o1.atom_of[(0, 1)]] == oriental(2).atom_of[(0, 2)]


def test_simplicial_identities():
    def comp(alpha, beta):
        return tuple(alpha[b] for b in beta)

    for n in range(1, 4):
        for i, j in itertools.product(range(n + 1), repeat=2):
            if i < j:
                # δ_j δ_i = δ_i δ_{j-1}
                lhs = induced_map(face_map(n, j), n).compose(induced_map(face_map(n - 1, i), n - 1))
                assert lhs.mapping == induced_map(comp(face_map(n, i), face_map(n - 1, j - 1)), n).mapping
        for j in range(n):
            # σ_j δ_j = id
            f = comp(degeneracy_map(n - 1, j), face_map(n, j))
            assert f == tuple(range(n))


def test_every_induced_map_is_a_functor():
    for m, n in itertools.product(range(4), repeat=2):
        for alpha in monotone_maps(m, n):
            assert functor_problems(induced_map(alpha, n)) == []
