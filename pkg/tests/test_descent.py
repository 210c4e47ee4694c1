import pytest
from hypothesis import given, settings, strategies as st

from picard_omega import corpus
from picard_omega.chain import ChainComplex, ChainMap, homology, zero_complex
from picard_omega.core import FgAbGroup, GroupHom, IntMatrix, group_iso_test
from picard_omega.descent import (FiniteSite, Presheaf, cech_cohomology, cech_descent_check, cech_total,
                                  delooping, delooping_check, is_levelwise_sheaf, k_glueing_check,
                                  levelwise_sheaf_failures, omega_descent_check, shift_up_presheaf, torsor_tower,
                                  validate_presheaf, zero_glueing_check)
from picard_omega.errors import MissingMeet, PreconditionViolated

Z, Z2, Z4 = FgAbGroup.free(1), FgAbGroup.cyclic(2), FgAbGroup.cyclic(4)
Z0 = ChainComplex.concentrated(Z, 0)
CIRCLE = ("X", corpus.CIRCLE_COVER)
TWO = ("X", ("U", "W"))


def const(site, c=Z0):
    return corpus.constant_presheaf(site, c)


def test_site_construction():
    site = corpus.circle_site()
    assert site.leq("U12", "X") and not site.leq("U1", "U2")
    assert site.meet("U1", "U2") == "U12"
    assert site.meet_all(["U1", "U2", "U3"]) == "E"
    no_meet = FiniteSite.build(["X", "U", "W"], [("U", "X"), ("W", "X")], {"X": [["U", "W"]]})
    with pytest.raises(MissingMeet):
        no_meet.meet("U", "W")
    with pytest.raises(PreconditionViolated):
        FiniteSite.build(["X", "U"], [("U", "X")], {"X": [["Q"]]})


def test_validate_presheaf():
    f = const(corpus.circle_site())
    assert validate_presheaf(f) == []
    # make U12 <= U1 multiply by 2 while everything else stays the identity
    c = ChainComplex.concentrated(Z4, 0)
    g = const(corpus.two_open_site(), c)
    res = dict(g.restrictions)
    res[("UW", "U")] = ChainMap(c, c, {0: GroupHom(Z4, Z4, IntMatrix.from_rows([[2]]))})
    problems = validate_presheaf(Presheaf(g.site, g.complexes, res))
    assert problems and any("UW≤U" in p for p in problems)


def test_levelwise_sheaf():
    assert is_levelwise_sheaf(const(corpus.circle_site()))
    ex1 = corpus.counterexample_identity()
    assert not is_levelwise_sheaf(ex1)
    assert levelwise_sheaf_failures(ex1)


def test_single_open_cover():
    f = const(corpus.trivial_cover_site(), ChainComplex.from_maps(0, [Z, Z], [IntMatrix.from_rows([[2]])]))
    cd = cech_total(f, "X", ("X",))
    tot = cd.total.complex
    for n in range(-1, 3):
        assert group_iso_test(homology(tot, n), homology(f.complexes["X"], n))
    assert cech_descent_check(f).ok
    assert zero_glueing_check(f, "X", ("X",)).ok
    assert all(cech_cohomology(f, "X", ("X",), n).is_trivial for n in (1, 2))


def test_two_open_constant():
    f = const(corpus.two_open_site())
    tot = cech_total(f, *TWO).total.complex
    assert homology(tot, 0).invariants == ((), 1)
    assert homology(tot, -1).is_trivial
    assert zero_glueing_check(f, *TWO).ok


def test_circle():
    f = const(corpus.circle_site())
    tot = cech_total(f, *CIRCLE).total.complex
    assert homology(tot, -1).invariants == ((), 1)
    assert [cech_cohomology(f, *CIRCLE, n).invariants for n in range(3)] == [((), 1), ((), 1), ((), 0)]
    tower = torsor_tower(f, *CIRCLE, 2)
    assert all(t.consistent for t in tower)
    assert tower[0].cech.invariants == ((), 1) and tower[1].cech.invariants == ((), 1)


def test_counterexamples():
    ex1, ex2 = corpus.counterexample_identity(), corpus.counterexample_shifted()
    assert cech_descent_check(ex1).ok and omega_descent_check(ex1).ok
    assert not is_levelwise_sheaf(ex1)
    assert is_levelwise_sheaf(ex2)
    assert not cech_descent_check(ex2).ok and not omega_descent_check(ex2).ok
    assert not zero_glueing_check(ex2, *CIRCLE).exists


def test_trivial_covers_pass():
    f = const(corpus.trivial_cover_site(), ChainComplex.concentrated(Z2, 2))
    assert cech_descent_check(f).ok and omega_descent_check(f).ok


def test_higher_glueing_of_degree_zero_is_vacuous():
    f = const(corpus.circle_site())
    for k in (1, 2):
        r = k_glueing_check(f, k, *CIRCLE)
        assert r.result.ok
        # distinct global sections have no arrow between them
        assert r.vacuous_endpoints == (k == 1)


def test_shift_moves_glueing_up_one_level():
    for f in (const(corpus.circle_site()), corpus.counterexample_shifted(), corpus.counterexample_identity()):
        V, cover = next((V, u) for V, us in f.site.covers.items() for u in us)
        lower = zero_glueing_check(f, V, cover)
        upper = k_glueing_check(shift_up_presheaf(f), 1, V, cover).result
        assert (lower.exists, lower.unique) == (upper.exists, upper.unique)


def test_kmax_precondition():
    with pytest.raises(PreconditionViolated):
        omega_descent_check(corpus.counterexample_shifted(), kmax=0)


def test_delooping_examples():
    for c in (ChainComplex.concentrated(Z2, 0), ChainComplex.from_maps(0, [Z, Z], [IntMatrix.from_rows([[2]])])):
        assert all(delooping_check(c).values())
    B, _ = delooping(zero_complex())
    assert all(g.is_trivial for g in B.groups)


def test_tower_of_trivial_presheaf():
    f = const(corpus.circle_site(), ChainComplex.concentrated(FgAbGroup.trivial(), 0))
    assert all(t.cech.is_trivial and t.consistent for t in torsor_tower(f, *CIRCLE, 2))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_checkers_agree_on_random_presheaves(seed):
    f = corpus.random_presheaf(corpus.rng_for(seed))
    assert validate_presheaf(f) == []
    # raises InternalInconsistency on disagreement
    r = omega_descent_check(f)
    assert r.ok == cech_descent_check(f).ok


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_alternating_matches_full(seed):
    rng = corpus.rng_for(seed)
    f = corpus.random_presheaf(rng, site=corpus.circle_site(), max_degree=2)
    alt = cech_total(f, *CIRCLE).total.complex
    full = cech_total(f, *CIRCLE, full=True).total.complex
    for n in range(-1, 3):
        assert group_iso_test(homology(alt, n), homology(full, n))
