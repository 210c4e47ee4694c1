from fractions import Fraction

from hypothesis import given, settings, strategies as st

from picard_omega import corpus
from picard_omega.chain import (BigradedComplex, ChainComplex, ChainHomotopy, ChainMap, check_homotopy, homology,
                                induced_on_homology, is_quasi_iso, loop, mapping_cone, path, same_complex,
                                shift_up, total_complex, validate_complex, zero_complex)
from picard_omega.core import FgAbGroup, GroupHom, IntMatrix

Z, Z2, Z4 = FgAbGroup.free(1), FgAbGroup.cyclic(2), FgAbGroup.cyclic(4)


def times(k):
    return IntMatrix.from_rows([[k]])


def two_step(k=2):
    """Z --k--> Z in degrees 1, 0."""
    return ChainComplex.from_maps(0, [Z, Z], [times(k)])


def inv(g):
    return g.invariants


def test_validate_examples():
    assert validate_complex(two_step()) == []
    assert validate_complex(zero_complex()) == []
    bad = ChainComplex(0, [Z, Z, Z], [GroupHom.identity(Z), GroupHom.identity(Z)])
    problems = validate_complex(bad)
    assert problems and "2" in problems[0]


def test_homology_examples():
    assert inv(homology(two_step(), 0)) == ((2,), 0)
    assert homology(two_step(), 1).is_trivial
    assert all(homology(zero_complex(), n).is_trivial for n in range(-2, 4))
    assert inv(homology(ChainComplex.concentrated(Z2, 0), 0)) == ((2,), 0)


def quotient_map():
    src, tgt = two_step(), ChainComplex.concentrated(Z2, 0)
    return ChainMap(src, tgt, {0: GroupHom(Z, Z2, IntMatrix.from_rows([[1]]))})


def test_quasi_iso_examples():
    assert is_quasi_iso(quotient_map())
    c = ChainComplex.concentrated(Z2, 0)
    assert is_quasi_iso(ChainMap.identity(c))
    assert not is_quasi_iso(ChainMap.zero(c, zero_complex()))


def test_translations():
    up = shift_up(ChainComplex.concentrated(Z, 0))
    assert up.max_degree == 1 and inv(up.group(1)) == ((), 1) and up.group(0).is_trivial
    assert all(homology(loop(two_step()), n).is_trivial for n in range(3))
    assert loop(two_step()).max_degree == 0
    for c in list(corpus.finite_corpus().values()) + list(corpus.integer_corpus().values()):
        assert same_complex(loop(shift_up(c)), c)
        p = path(c)
        assert validate_complex(p) == []
        assert all(inv(homology(p, n)) == inv(homology(c, n + 1)) for n in range(1, p.max_degree + 1))


def test_cone_examples():
    a = ChainComplex.concentrated(Z4, 0)
    cone = mapping_cone(ChainMap.identity(a))
    assert all(homology(cone, n).is_trivial for n in range(cone.min_degree, cone.max_degree + 1))

    zero_to_a = mapping_cone(ChainMap.zero(zero_complex(), a))
    assert all(inv(homology(zero_to_a, n)) == inv(homology(a, n)) for n in range(-1, 2))

    z0 = ChainComplex.concentrated(Z, 0)
    double = mapping_cone(ChainMap(z0, z0, {0: GroupHom(Z, Z, times(2))}))
    assert inv(homology(double, 0)) == ((2,), 0)
    assert homology(double, 1).is_trivial


def test_homotopy_examples():
    c = ChainComplex.concentrated(Z2, 0)
    ident, zero = ChainMap.identity(c), ChainMap.zero(c, c)
    assert check_homotopy(ChainHomotopy(ident, ident, {}))
    assert not check_homotopy(ChainHomotopy(ident, zero, {}))

    flat = ChainComplex.from_maps(0, [Z, Z], [times(0)])
    z = ChainMap.zero(flat, flat)
    assert check_homotopy(ChainHomotopy(z, z, {0: GroupHom.identity(Z)}))


def test_total_complex_examples():
    assert total_complex(BigradedComplex({}, {}, {})).complex.max_degree == 0
    col = two_step()
    b = BigradedComplex({(0, q): col.group(q) for q in col.degrees}, {}, {(0, 1): col.d(1)})
    tot = total_complex(b).complex
    assert all(inv(homology(tot, n)) == inv(homology(col, n)) for n in range(-1, 3))
    # one row Z -> Z + Z -> Z, exact except for a Z/2 cokernel at the end
    row = {(0, 0): Z, (1, 0): FgAbGroup.free(2), (2, 0): Z}
    delta = {(0, 0): GroupHom(Z, row[(1, 0)], IntMatrix.from_rows([[1], [1]])),
             (1, 0): GroupHom(row[(1, 0)], Z, IntMatrix.from_rows([[2, -2]]))}
    b = BigradedComplex(row, delta, {})
    assert b.validate() == []
    tot = total_complex(b).complex
    assert [inv(homology(tot, n)) for n in (-2, -1, 0)] == [((2,), 0), ((), 0), ((), 0)]


def euler_order(c):
    out = Fraction(1)
    for n in c.degrees:
        out *= Fraction(c.group(n).order) ** (-1 if n % 2 else 1)
    return out


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_multiplicative_euler_characteristic(seed):
    c = corpus.random_finite_complex(corpus.rng_for(seed))
    hom = ChainComplex(c.min_degree, [homology(c, n) for n in c.degrees],
                       [GroupHom.zero(homology(c, n), homology(c, n - 1)) for n in c.degrees[1:]])
    assert euler_order(c) == euler_order(hom)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_quasi_iso_iff_cone_acyclic(seed):
    f = corpus.random_map_case(corpus.rng_for(seed))
    cone = mapping_cone(f)
    acyclic = all(homology(cone, n).is_trivial for n in range(cone.min_degree, cone.max_degree + 1))
    assert is_quasi_iso(f) == acyclic


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_homotopic_maps_agree_on_homology(seed):
    rng = corpus.rng_for(seed)
    a = corpus.small_finite_complex(rng, 3, 32)
    b = corpus.small_finite_complex(rng, 3, 32)
    h = corpus.random_homotopy(rng, corpus.random_chain_map(rng, a, b))
    assert check_homotopy(h)
    for n in a.degrees:
        assert induced_on_homology(h.F, n).equals(induced_on_homology(h.G, n))
