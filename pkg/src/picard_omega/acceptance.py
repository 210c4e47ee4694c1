"""The acceptance suite: eleven exact checks, each returning a pass/fail verdict."""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

from . import corpus
from .chain import ChainComplex, homology, is_chain_iso, is_quasi_iso, loop, same_complex, shift_up
from .core import FgAbGroup, group_iso_test
from .descent import (cech_cohomology, cech_descent_check, cech_total, delooping_check, is_levelwise_sheaf,
                      omega_descent_check, torsor_tower, validate_presheaf)
from .errors import InternalInconsistency
from .omega import FiniteOmegaCat, equivalence_check, functor_problems, validate_axioms
from .parity import induced_map, monotone_maps, oriental
from .pic import (from_pic, h_map, homotopy_from_pic, homotopy_to_pic, p_of, phi_problems, pic_functor,
                  pic_homotopy_problems)
from .simplicial import homotopy_groups, loop_simplicial, nerve_dk_comparison, normalized_chains, wbar


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"criterion {self.number:2d} [{verdict}] {self.name} (tolerance: exact): {self.detail}"


# ---------------------------------------------------------------- 1


def roundtrip(seed: int = 0, count: int = 100) -> tuple:
    bad = []
    finite = 0
    for k in range(count):
        rng = corpus.rng_for(seed * 1000 + k)
        c = corpus.random_complex(rng)
        finite += c.is_finite
        if not is_chain_iso(h_map(c)):
            bad.append((k, "h is not an isomorphism"))
        probs = phi_problems(p_of(c), rng, samples=64)
        if probs:
            bad.append((k, probs[0]))
    detail = f"{count} complexes ({finite} finite, exhaustive), {len(bad)} failures"
    return not bad, detail + (f"; first: {bad[0]}" if bad else "")


# ---------------------------------------------------------------- 2


def broken_unit_table() -> FiniteOmegaCat:
    """Two 0-cells x, y with y *_0 y = x: the unit law fails at y."""
    return FiniteOmegaCat(("x", "y"), 0, ((0, 1),), ((0, 1),), ({(0, 0): 0, (1, 1): 0},))


def axiom_battery() -> tuple:
    bad = []
    checked = 0
    for name, c in corpus.finite_corpus().items():
        v = validate_axioms(from_pic(p_of(c)))
        checked += 1
        if v:
            bad.append((name, str(v[0])))
    for n in range(4):
        v = validate_axioms(oriental(n).cat)
        checked += 1
        if v:
            bad.append((f"oriental({n})", str(v[0])))
    broken = validate_axioms(broken_unit_table())
    rejected = any(v.axiom == "1b" and v.witness == ("y",) for v in broken)
    ok = not bad and rejected
    detail = f"{checked} tables valid={checked - len(bad)}; broken unit table rejected with witness y: {rejected}"
    return ok, detail + (f"; first failure: {bad[0]}" if bad else "")


# ---------------------------------------------------------------- 3


def quasi_iso_vs_equivalence(seed: int = 0, count: int = 50) -> tuple:
    mismatches, tally = [], {True: 0, False: 0}
    for k in range(count):
        f = corpus.random_map_case(corpus.rng_for(seed * 1000 + k))
        A, B = from_pic(p_of(f.source)), from_pic(p_of(f.target))
        F = pic_functor(f, A, B)
        q = is_quasi_iso(f)
        tally[q] += 1
        if functor_problems(F) or q != equivalence_check(F):
            mismatches.append(k)
    f = corpus.quotient_example()
    F = pic_functor(f, from_pic(p_of(f.source)), from_pic(p_of(f.target)))
    if is_quasi_iso(f) != equivalence_check(F):
        mismatches.append("quotient example")
    detail = f"{count} maps ({tally[True]} quasi-isos, {tally[False]} not) plus the mod 2 quotient; " \
             f"{len(mismatches)} disagreements"
    return not mismatches, detail


# ---------------------------------------------------------------- 4


def dold_kan_triangle(n: int = 3) -> tuple:
    bad, sizes = [], []
    for name, c in corpus.finite_corpus().items():
        r = nerve_dk_comparison(c, n)
        sizes.append(r.counts[n][0])
        if not r.ok:
            bad.append((name, r.problems[0]))
    detail = f"{len(sizes)} complexes up to level {n}, largest level has {max(sizes)} simplices, " \
             f"{len(bad)} failures"
    return not bad, detail + (f"; first: {bad[0]}" if bad else "")


# ---------------------------------------------------------------- 5


def oriental_combinatorics() -> tuple:
    atoms_ok = all(len(oriental(n).atoms) == 2 ** (n + 1) - 1 for n in range(4))
    o2 = oriental(2).cat
    nonthin = [x for x in range(o2.size) if o2.src(1, x) != x]
    composites = 0
    comp_ok = True
    for l in range(4):
        for m in range(4):
            for n in range(4):
                for beta in monotone_maps(l, m):
                    fb = induced_map(beta, m)
                    for alpha in monotone_maps(m, n):
                        ab = tuple(alpha[v] for v in beta)
                        composites += 1
                        if induced_map(ab, n).mapping != induced_map(alpha, n).compose(fb).mapping:
                            comp_ok = False
    ident_ok = all(induced_map(tuple(range(n + 1)), n).mapping == tuple(range(oriental(n).cat.size))
                   for n in range(4))
    functor_ok = all(not functor_problems(induced_map(alpha, n))
                     for m in range(4) for n in range(4) for alpha in monotone_maps(m, n))
    ok = atoms_ok and len(nonthin) == 1 and comp_ok and ident_ok and functor_ok
    detail = f"atom counts 1,3,7,15: {atoms_ok}; non-thin 2-cells in oriental(2): {len(nonthin)}; " \
             f"{composites} composites checked: {comp_ok}; identities: {ident_ok}; all functors: {functor_ok}"
    return ok, detail


# ---------------------------------------------------------------- 6


def descent_equivalence(seed: int = 0, count: int = 200) -> tuple:
    inconsistent, invalid, passed = 0, 0, 0
    for k in range(count):
        f = corpus.random_presheaf(corpus.rng_for(seed * 1000 + k), max_degree=3)
        if validate_presheaf(f):
            invalid += 1
            continue
        try:
            passed += omega_descent_check(f).ok
        except InternalInconsistency:
            inconsistent += 1
    ex1, ex2 = corpus.counterexample_identity(), corpus.counterexample_shifted()
    ex1_ok = cech_descent_check(ex1).ok and not is_levelwise_sheaf(ex1) and omega_descent_check(ex1).ok
    ex2_ok = is_levelwise_sheaf(ex2) and not cech_descent_check(ex2).ok and not omega_descent_check(ex2).ok
    ok = inconsistent == 0 and invalid == 0 and ex1_ok and ex2_ok
    detail = f"{count} presheaves ({passed} satisfy descent), {inconsistent} disagreements, {invalid} invalid; " \
             f"identity-complex example passes descent and fails the sheaf test: {ex1_ok}; " \
             f"shifted example is a sheaf and fails descent: {ex2_ok}"
    return ok, detail


# ---------------------------------------------------------------- 7


def loop_shift_ladder(seed: int = 0, count: int = 50) -> tuple:
    bad = 0
    for k in range(count):
        g = corpus.random_simplicial(corpus.rng_for(seed * 1000 + k), T=4)
        L = loop_simplicial(g)
        for n in range(L.T):
            if not group_iso_test(homotopy_groups(g, n + 1), homotopy_groups(L, n)):
                bad += 1
                break
    pres = list(corpus.finite_corpus().values()) + list(corpus.integer_corpus().values())
    for k in range(50):
        pres.append(corpus.random_complex(corpus.rng_for(seed * 1000 + k)))
    roundtrip_bad = sum(not same_complex(loop(shift_up(c)), c) for c in pres)
    ok = bad == 0 and roundtrip_bad == 0
    return ok, f"{count} simplicial groups, {bad} with a mismatch; loop(shift_up(c)) = c on {len(pres)} " \
               f"complexes with {roundtrip_bad} failures"


# ---------------------------------------------------------------- 8


def delooping_and_wbar(seed: int = 0, count: int = 20) -> tuple:
    pres = list(corpus.finite_corpus().values()) + list(corpus.integer_corpus().values())
    bad_b = [k for k, c in enumerate(pres) if not all(delooping_check(c).values())]
    bad_w = 0
    for k in range(count):
        g = corpus.random_simplicial(corpus.rng_for(seed * 1000 + k), T=3)
        kw, kg = normalized_chains(wbar(g)), normalized_chains(g)
        for n in range(0, g.T + 1):
            if not group_iso_test(homology(kw, n), homology(kg, n - 1)):
                bad_w += 1
                break
    ok = not bad_b and bad_w == 0
    return ok, f"delooping checks on {len(pres)} complexes with {len(bad_b)} failures; " \
               f"W-bar shift on {count} simplicial groups with {bad_w} failures"


# ---------------------------------------------------------------- 9


def tower_corpus() -> list:
    out = []
    for g in (corpus.Z, corpus.Z2, corpus.Z3):
        c = ChainComplex.concentrated(g, 0)
        out.append((corpus.constant_presheaf(corpus.circle_site(), c), "X", corpus.CIRCLE_COVER))
        out.append((corpus.constant_presheaf(corpus.two_open_site(), c), "X", ("U", "W")))
        out.append((corpus.constant_presheaf(corpus.two_open_site(False), c), "X", ("U", "W")))
    for k in range(5):
        f = corpus.random_presheaf(corpus.rng_for(k), site=corpus.circle_site(), max_degree=0)
        out.append((f, "X", corpus.CIRCLE_COVER))
    return out


def gerbe_classification() -> tuple:
    f = corpus.constant_presheaf(corpus.circle_site(), ChainComplex.concentrated(corpus.Z, 0))
    h = [cech_cohomology(f, "X", corpus.CIRCLE_COVER, n) for n in range(3)]
    Z, O = FgAbGroup.free(1), FgAbGroup.trivial()
    circle_ok = group_iso_test(h[0], Z) and group_iso_test(h[1], Z) and group_iso_test(h[2], O)
    towers = tower_corpus()
    bad = sum(not all(lv.consistent for lv in torsor_tower(p, V, u, 2)) for p, V, u in towers)
    ok = circle_ok and bad == 0
    return ok, f"circle cover with constant Z: H^0, H^1, H^2 = {[x.invariants for x in h]}; " \
               f"tower level shift on {len(towers)} presheaves with {bad} failures"


# ---------------------------------------------------------------- 10


def homotopy_correspondence(seed: int = 0, count: int = 50) -> tuple:
    bad = []
    for k in range(count):
        rng = corpus.rng_for(seed * 1000 + k)
        a = corpus.small_finite_complex(rng, 3, 64)
        b = corpus.small_finite_complex(rng, 3, 64)
        h = corpus.random_homotopy(rng, corpus.random_chain_map(rng, a, b))
        ph = homotopy_to_pic(h)
        if pic_homotopy_problems(ph):
            bad.append((k, "conditions on H"))
            continue
        back = homotopy_from_pic(ph, h.F, h.G)
        degs = range(a.min_degree - 1, a.max_degree + 2)
        if not all(back.component(n).equals(h.component(n)) for n in degs):
            bad.append((k, "roundtrip"))
            continue
        A, B = ph.source, ph.target
        DB, DA, H = B.total_differential, A.total_differential, ph.H
        for x in A.elements():
            lhs = B.add(DB.apply(H.apply(x)), H.apply(DA.apply(x)))
            if not B.group.equal(lhs, B.sub(ph.G.apply(x), ph.F.apply(x))):
                bad.append((k, f"DH + HD at {x}"))
                break
    return not bad, f"{count} homotopies, {len(bad)} failures" + (f"; first: {bad[0]}" if bad else "")


# ---------------------------------------------------------------- 11


def alternating_vs_full() -> tuple:
    site = corpus.two_open_site()
    f = corpus.random_presheaf(corpus.rng_for(11), site=site, max_degree=2, pieces=3)
    alt = cech_total(f, "X", ("U", "W")).total.complex
    full = cech_total(f, "X", ("U", "W"), full=True).total.complex
    same = all(group_iso_test(homology(alt, n), homology(full, n)) for n in (0, 1))
    hs = [(homology(alt, n).invariants, homology(full, n).invariants) for n in (0, 1)]
    return same, f"H_0 and H_1 (alternating, full) = {hs}"


CRITERIA: list = [
    (1, "P/Q round trip with explicit h and φ", roundtrip),
    (2, "omega-category axiom battery", axiom_battery),
    (3, "quasi-isomorphism iff equivalence", quasi_iso_vs_equivalence),
    (4, "nerve by orientals equals Dold-Kan inverse", dold_kan_triangle),
    (5, "oriental combinatorics", oriental_combinatorics),
    (6, "Čech descent iff omega-descent, counterexamples", descent_equivalence),
    (7, "loop-shift ladder", loop_shift_ladder),
    (8, "delooping and W-bar", delooping_and_wbar),
    (9, "gerbe classification by Čech cohomology", gerbe_classification),
    (10, "homotopy correspondence", homotopy_correspondence),
    (11, "alternating vs full Čech complex", alternating_vs_full),
]


def run_criterion(number: int) -> CriterionResult:
    for k, name, fn in CRITERIA:
        if k == number:
            t = time.perf_counter()
            ok, detail = fn()
            return CriterionResult(k, name, ok, detail, time.perf_counter() - t)
    raise KeyError(number)


def run_all(progress: Callable | None = None) -> list:
    out = []
    for k, _, _ in CRITERIA:
        r = run_criterion(k)
        if progress:
            progress(r)
        out.append(r)
    return out
