import itertools

import pytest
from hypothesis import given, settings, strategies as st

from picard_omega import corpus
from picard_omega.chain import ChainComplex, ChainHomotopy, ChainMap, homology, is_chain_iso, loop, zero_complex
from picard_omega.core import FgAbGroup, GroupHom, IntMatrix
from picard_omega.errors import InfiniteGroup, NotComposable
from picard_omega.omega import FiniteOmegaCat, functor_problems, terminal, validate_axioms
from picard_omega.pic import (SeqPair, SeqPairAlgebra, free_pic, from_pic, h_map, hom_sub,
                              homotopy_from_pic, homotopy_to_pic, p_of, phi_map, phi_problems, pic_homotopy_problems,
                              q_of, strict_picard_problems)

Z, Z2, Z3, Z4 = FgAbGroup.free(1), FgAbGroup.cyclic(2), FgAbGroup.cyclic(3), FgAbGroup.cyclic(4)


def cx(groups, mats=None):
    mats = mats or [IntMatrix.zeros(a.ngens, b.ngens) for a, b in zip(groups, groups[1:])]
    return ChainComplex.from_maps(0, groups, [IntMatrix.from_rows(m) if isinstance(m, list) else m for m in mats])


def test_seqpair_counts():
    assert len(list(SeqPairAlgebra(cx([Z2])).elements())) == 2
    assert len(list(SeqPairAlgebra(cx([Z2, Z2])).elements())) == 4
    assert len(list(SeqPairAlgebra(zero_complex()).elements())) == 1


def test_seqpair_count_matches_total_group():
    for c in corpus.finite_corpus().values():
        if c.max_degree <= 2:
            assert len(list(SeqPairAlgebra(c).elements())) == p_of(c).group.order


def test_q_of_p_of():
    c = cx([Z, Z], [[[2]]])
    assert is_chain_iso(h_map(c))
    assert all(homology(q_of(p_of(zero_complex())), n).is_trivial for n in range(2))
    q = q_of(p_of(ChainComplex.concentrated(Z4, 2)))
    assert q.group(2).invariants == ((4,), 0)
    assert q.group(0).is_trivial and q.group(1).is_trivial


def test_unit_law_and_mismatch():
    a = p_of(cx([direct := FgAbGroup.from_invariants((2, 2)), Z2], [[[1], [0]]]))
    assert direct.order == 4
    for x in a.elements():
        for n in (0, 1):
            assert a.compose(n, x, a.s(n, x)) == a.canonical(x)
            assert a.compose(n, a.t(n, x), x) == a.canonical(x)
    x = next(x for x in a.elements() if a.s(0, x) != a.t(0, x))
    with pytest.raises(NotComposable):
        a.compose(0, x, x)


def test_interchange_exhaustive():
    a = p_of(cx([Z2, Z2], [[[1]]]))
    els = list(a.elements())
    checked = 0
    for x, y, u, v in itertools.product(els, repeat=4):
        # x *1 y and u *1 v, then *0 of the two
        if a.s(1, x) != a.t(1, y) or a.s(1, u) != a.t(1, v):
            continue
        if a.s(0, x) != a.t(0, u) or a.s(0, y) != a.t(0, v):
            continue
        lhs = a.compose(0, a.compose(1, x, y), a.compose(1, u, v))
        rhs = a.compose(1, a.compose(0, x, u), a.compose(0, y, v))
        assert lhs == rhs
        checked += 1
    assert checked > 0


def test_graded_to_seqpair_formula():
    c = cx([Z4, Z4, Z4], [[[2]], [[0]]])
    alg = SeqPairAlgebra(c)
    x = alg.from_graded({0: (1,), 1: (1,)})
    assert x == SeqPair((((1,), (3,)), ((1,), (1,)), ((0,), (0,))))
    assert alg.is_valid(x)
    assert alg.from_graded({}) == alg.zero()


def test_phi_roundtrip_on_eight_elements():
    a = p_of(cx([Z2, Z2, Z2]))
    phi = phi_map(a)
    images = {phi(x) for x in a.elements()}
    assert len(images) == 8
    assert phi_problems(a) == []


def test_hom_sub_loops_at_zero():
    for c in corpus.finite_corpus().values():
        a = p_of(c)
        hs = hom_sub(a, 1, a.zero(), a.zero())
        assert hs.category.size == p_of(loop(q_of(a))).group.order
        assert validate_axioms(hs.category) == []


def test_hom_sub_examples():
    trivial = p_of(zero_complex())
    assert hom_sub(trivial, 1, trivial.zero(), trivial.zero()).category.size == 1
    a = p_of(cx([Z2, Z2], [[[1]]]))
    # the only cell from 0 to 1 is the arrow x_1 = 1
    hs = hom_sub(a, 1, (0, 0), (1, 0))
    assert hs.category.size == 1
    assert hs.category.size == hs.zero_category.size
    assert functor_problems(hs.translation) == []


def assert_unit_is_functor(a):
    fp = free_pic(a)

    def e(x):
        return fp.canonical(tuple(int(r == x) for r in range(a.size)))

    for i in a.levels:
        for x in range(a.size):
            assert fp.s(i, e(x)) == e(a.src(i, x)) and fp.t(i, e(x)) == e(a.tgt(i, x))
        for x, y, z in a.composable_pairs(i):
            assert fp.compose(i, e(x), e(y)) == e(z)


def test_free_pic():
    q = q_of(free_pic(terminal()))
    assert q.group(0).invariants == ((), 1)
    assert all(q.group(n).is_trivial for n in q.degrees if n)

    # x with an idempotent loop e
    a = FiniteOmegaCat(("x", "e"), 1, ((0, 0), (0, 1)), ((0, 0), (0, 1)),
                       ({(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 1}, {(0, 0): 0, (1, 1): 1}))
    assert validate_axioms(a) == []
    # e * e = e forces e = x in the free group
    assert free_pic(a).group.invariants == ((), 1)
    assert_unit_is_functor(a)
    # a single arrow f: x -> y
    arrow = FiniteOmegaCat(("x", "y", "f"), 1, ((0, 1, 0), (0, 1, 2)), ((0, 1, 1), (0, 1, 2)),
                           ({(0, 0): 0, (1, 1): 1, (2, 0): 2, (1, 2): 2}, {(0, 0): 0, (1, 1): 1, (2, 2): 2}))
    assert validate_axioms(arrow) == []
    q = q_of(free_pic(arrow))
    assert q.group(0).invariants == ((), 2) and q.group(1).invariants == ((), 1)
    assert homology(q, 0).invariants == ((), 1) and homology(q, 1).is_trivial
    assert_unit_is_functor(arrow)

    empty = FiniteOmegaCat((), 0, ((),), ((),), ({},))
    assert validate_axioms(empty) == []
    assert free_pic(empty).group.is_trivial


def test_zero_homotopy_between_equal_maps():
    c = cx([Z4, Z4], [[[2]]])
    f = ChainMap.identity(c)
    ph = homotopy_to_pic(ChainHomotopy(f, f, {}))
    assert ph.H.is_zero()
    assert pic_homotopy_problems(ph) == []


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_homotopy_roundtrip_over_z4(seed):
    rng = corpus.rng_for(seed)
    a = corpus.random_complex(rng, 2, (Z4,))
    b = corpus.random_complex(rng, 2, (Z4,))
    h = corpus.random_homotopy(rng, corpus.random_chain_map(rng, a, b))
    ph = homotopy_to_pic(h)
    back = homotopy_from_pic(ph, h.F, h.G)
    assert all(back.component(n).equals(h.component(n)) for n in range(-1, 4))
    for x in ph.source.elements():
        lhs = ph.target.add(ph.target.total_differential.apply(ph.H.apply(x)),
                            ph.H.apply(ph.source.total_differential.apply(x)))
        assert ph.target.group.equal(lhs, ph.target.sub(ph.G.apply(x), ph.F.apply(x)))


def test_strict_picard_identities():
    assert strict_picard_problems(p_of(cx([Z2, Z2]))) == []
    assert strict_picard_problems(p_of(zero_complex())) == []
    assert strict_picard_problems(p_of(ChainComplex.concentrated(Z3, 1))) == []


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_structure_and_roundtrip_random(seed):
    rng = corpus.rng_for(seed)
    c = corpus.random_complex(rng, max_degree=3)
    a = p_of(c)
    assert a.structure_problems() == []
    assert is_chain_iso(h_map(c))
    assert phi_problems(a, rng, samples=16) == []


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_tabulation_is_an_omega_category(seed):
    c = corpus.small_finite_complex(corpus.rng_for(seed), 2, 16)
    assert validate_axioms(from_pic(p_of(c))) == []


def test_from_pic_rejects_infinite():
    with pytest.raises(InfiniteGroup):
        from_pic(p_of(ChainComplex.concentrated(Z, 0)))


def test_total_map_is_functorial():
    c = cx([Z4, Z4], [[[2]]])
    g = GroupHom(Z4, Z4, IntMatrix.from_rows([[3]]))
    f = ChainMap(c, c, {0: g, 1: g})
    F = homotopy_to_pic(ChainHomotopy(f, f, {})).F
    for x in p_of(c).elements():
        assert F.apply(x) == p_of(c).canonical(tuple(3 * v for v in x))
