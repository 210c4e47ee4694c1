import pytest
from hypothesis import given, settings, strategies as st

from picard_omega import corpus
from picard_omega.acceptance import broken_unit_table
from picard_omega.chain import ChainComplex, is_quasi_iso
from picard_omega.core import FgAbGroup, IntMatrix
from picard_omega.errors import InfiniteGroup
from picard_omega.omega import (FiniteOmegaCat, OmegaFunctor, equivalence_check, equivalence_failures,
                                functor_problems, identity_functor, is_groupoid, product, terminal, validate_axioms)
from picard_omega.pic import from_pic, p_of, pic_functor

Z2 = FgAbGroup.cyclic(2)


def arrow():
    """x --f--> y, nothing else."""
    return FiniteOmegaCat(("x", "y", "f"), 1, ((0, 1, 0), (0, 1, 2)), ((0, 1, 1), (0, 1, 2)),
                          ({(0, 0): 0, (1, 1): 1, (2, 0): 2, (1, 2): 2}, {(0, 0): 0, (1, 1): 1, (2, 2): 2}))


def discrete(*labels):
    n = len(labels)
    ident = tuple(range(n))
    return FiniteOmegaCat(labels, 0, (ident,), (ident,), ({(i, i): i for i in ident},))


def tab(c):
    return from_pic(p_of(c))


def test_validate_examples():
    assert validate_axioms(tab(ChainComplex.concentrated(Z2, 1))) == []
    assert validate_axioms(terminal()) == []
    assert validate_axioms(arrow()) == []
    violations = validate_axioms(broken_unit_table())
    assert [(v.axiom, v.witness) for v in violations if v.axiom == "1b"] == [("1b", ("y",))]


def test_broken_globularity_is_caught():
    # s_0 of the arrow points at the arrow itself
    bad = FiniteOmegaCat(("x", "y", "f"), 1, ((0, 1, 2), (0, 1, 2)), ((0, 1, 1), (0, 1, 2)),
                         ({(0, 0): 0, (1, 1): 1}, {(0, 0): 0, (1, 1): 1, (2, 2): 2}))
    assert validate_axioms(bad)


def test_products():
    a = tab(ChainComplex.from_maps(0, [Z2, Z2], [IntMatrix.from_rows([[1]])]))
    at = product(a, terminal())
    assert at.size == a.size and validate_axioms(at) == []
    assert equivalence_check(OmegaFunctor(at, a, tuple(a.index[lab[0]] for lab in at.labels)))
    b = arrow()
    assert product(a, b).size == a.size * b.size
    g = tab(ChainComplex.concentrated(Z2, 1))
    assert validate_axioms(product(g, g)) == []
    assert validate_axioms(product(a, b)) == []


def test_groupoids():
    for c in corpus.finite_corpus().values():
        assert is_groupoid(tab(c))
    assert not is_groupoid(arrow())
    assert is_groupoid(discrete("a", "b"))


def test_equivalence_examples():
    a = tab(ChainComplex.concentrated(Z2, 1))
    assert equivalence_check(identity_functor(a))
    f = corpus.quotient_example()
    F = pic_functor(f, tab(f.source), tab(f.target))
    assert functor_problems(F) == []
    assert equivalence_check(F) == is_quasi_iso(f)

    two = discrete("a", "b")
    to_point = OmegaFunctor(two, terminal(), (0, 0))
    assert functor_problems(to_point) == []
    assert not equivalence_check(to_point)
    assert any(fail[0] == "b" for fail in equivalence_failures(to_point))


def test_from_pic_shapes():
    a = tab(ChainComplex.concentrated(Z2, 0))
    assert a.size == 2 and all(a.src(0, x) == x for x in range(2))
    b = tab(ChainComplex.from_maps(0, [Z2, Z2], [IntMatrix.zeros(1, 1)]))
    assert b.size == 4 and sum(b.src(0, x) == x for x in range(4)) == 2
    with pytest.raises(InfiniteGroup):
        tab(ChainComplex.concentrated(FgAbGroup.free(1), 0))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_condition_c_is_automatic_for_groupoids(seed):
    f = corpus.random_map_case(corpus.rng_for(seed))
    F = pic_functor(f, tab(f.source), tab(f.target))
    assert equivalence_check(F) == equivalence_check(F, condition_c=False) == is_quasi_iso(f)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_functors_compose(seed):
    rng = corpus.rng_for(seed)
    a = corpus.small_finite_complex(rng, 2, 16)
    b = corpus.small_finite_complex(rng, 2, 16)
    c = corpus.small_finite_complex(rng, 2, 16)
    f, g = corpus.random_chain_map(rng, a, b), corpus.random_chain_map(rng, b, c)
    F = pic_functor(f, tab(a), tab(b))
    G = pic_functor(g, tab(b), tab(c))
    GF = pic_functor(g.compose(f), tab(a), tab(c))
    assert functor_problems(F) == [] and G.compose(F).mapping == GF.mapping
