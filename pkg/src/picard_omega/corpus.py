"""Seeded generators and named instances used by the tests and the acceptance suite."""
from __future__ import annotations

import random

from .chain import ChainComplex, ChainHomotopy, ChainMap, direct_sum_complex, zero_complex
from .core import FgAbGroup, GroupHom, IntMatrix, block_diag, direct_sum, enumerate_homs, random_hom
from .descent import FiniteSite, Presheaf
from .simplicial import SimplicialAbGroup, dk_inverse

Z = FgAbGroup.free(1)
Z2, Z3, Z4 = FgAbGroup.cyclic(2), FgAbGroup.cyclic(3), FgAbGroup.cyclic(4)
Z2Z2 = direct_sum([Z2, Z2])

ALL_GROUPS = (Z, Z2, Z3, Z4, Z2Z2)
FINITE_GROUPS = (Z2, Z3, Z4, Z2Z2)


def rng_for(seed: int) -> random.Random:
    return random.Random(seed)


# ---------------------------------------------------------------- complexes


def random_complex(rng, max_degree: int = 4, groups=ALL_GROUPS, p_trivial: float = 0.15) -> ChainComplex:
    """Random groups in degrees 0..top with random differentials satisfying d∘d = 0."""
    top = rng.randint(0, max_degree)
    gs = [FgAbGroup.trivial() if rng.random() < p_trivial else rng.choice(groups) for _ in range(top + 1)]
    ds = []
    for n in range(1, top + 1):
        if n == 1:
            ds.append(random_hom(rng, gs[1], gs[0]))
            continue
        z = ds[-1].kernel()
        ds.append(z.inclusion().compose(random_hom(rng, gs[n], z.group)))
    return ChainComplex(0, gs, ds)


def random_finite_complex(rng, max_degree: int = 4) -> ChainComplex:
    return random_complex(rng, max_degree, FINITE_GROUPS)


def complex_order(c: ChainComplex) -> int:
    out = 1
    for g in c.groups:
        out *= g.order
    return out


def small_finite_complex(rng, max_degree: int = 3, max_order: int = 64) -> ChainComplex:
    while True:
        c = random_finite_complex(rng, max_degree)
        if complex_order(c) <= max_order:
            return c


# ---------------------------------------------------------------- maps and homotopies


def random_chain_map(rng, a: ChainComplex, b: ChainComplex, tries: int = 20) -> ChainMap:
    """Degree by degree, pick uniformly among homs commuting with what was already chosen."""
    lo, hi = 0, max(a.max_degree, b.max_degree)
    for _ in range(tries):
        comps = {}
        for n in range(lo, hi + 1):
            ok = [f for f in enumerate_homs(a.group(n), b.group(n))
                  if n == lo or b.d(n).compose(f).equals(comps[n - 1].compose(a.d(n)))]
            if not ok:
                break
            comps[n] = rng.choice(ok)
        else:
            return ChainMap(a, b, comps)
    return ChainMap.zero(a, b)


def random_homotopy(rng, f: ChainMap) -> ChainHomotopy:
    """G = F + dh + hd for random h."""
    A, B = f.source, f.target
    h = {n: random_hom(rng, A.group(n), B.group(n + 1)) for n in range(A.min_degree, A.max_degree + 1)
         if not B.group(n + 1).is_trivial}
    hs = lambda n: h.get(n) or GroupHom.zero(A.group(n), B.group(n + 1))
    g = {n: f.component(n) + B.d(n + 1).compose(hs(n)) + hs(n - 1).compose(A.d(n))
         for n in range(min(A.min_degree, B.min_degree), max(A.max_degree, B.max_degree) + 1)}
    return ChainHomotopy(f, ChainMap(A, B, g), h)


def quotient_example() -> ChainMap:
    """(Z/4 --2--> Z/4) -> (Z/2 --0--> Z/2), reduction mod 2 in both degrees."""
    a = ChainComplex.from_maps(0, [Z4, Z4], [IntMatrix.from_rows([[2]])])
    b = ChainComplex.from_maps(0, [Z2, Z2], [IntMatrix.from_rows([[0]])])
    red = lambda: GroupHom(Z4, Z2, IntMatrix.from_rows([[1]]))
    return ChainMap(a, b, {0: red(), 1: red()})


def contractible(g: FgAbGroup, degree: int = 0) -> ChainComplex:
    """g --id--> g sitting in degrees degree + 1 and degree."""
    groups = [FgAbGroup.trivial()] * degree + [g, g]
    ds = [GroupHom.zero(groups[k + 1], groups[k]) for k in range(degree)] + [GroupHom.identity(g)]
    return ChainComplex(0, groups, ds)


def summand_maps(a: ChainComplex, k: ChainComplex) -> tuple:
    """Inclusion a -> a + k and projection a + k -> a."""
    s = direct_sum_complex(a, k)
    inc, proj = {}, {}
    for n in s.degrees:
        ga = a.group(n)
        m = IntMatrix.from_columns([tuple(int(i == j) for i in range(s.group(n).ngens)) for j in range(ga.ngens)],
                                   s.group(n).ngens)
        inc[n] = GroupHom(ga, s.group(n), m, check=False)
        proj[n] = GroupHom(s.group(n), ga, m.transpose(), check=False)
    return ChainMap(a, s, inc), ChainMap(s, a, proj)


def random_map_case(rng, max_order: int = 32) -> ChainMap:
    """A chain map between small finite complexes, quasi-isomorphic or not with
    comparable frequency."""
    kind = rng.randrange(5)
    a = small_finite_complex(rng, 2, max_order)
    if kind == 0:
        return random_chain_map(rng, a, small_finite_complex(rng, 2, max_order))
    if kind == 1:
        return random_homotopy(rng, ChainMap.identity(a)).G
    if kind == 2:
        return random_chain_map(rng, a, a)
    k = contractible(rng.choice([Z2, Z3]), rng.randint(0, 1))
    inc, proj = summand_maps(a, k)
    f = inc if kind == 3 else proj
    return random_homotopy(rng, f).G if rng.random() < 0.5 else f


def finite_corpus() -> dict:
    """Small named finite complexes; every one is cheap enough to tabulate."""
    one = IntMatrix.from_rows([[1]])
    return {
        "Z2[0]": ChainComplex.concentrated(Z2, 0),
        "Z2[1]": ChainComplex.concentrated(Z2, 1),
        "Z3[1]": ChainComplex.concentrated(Z3, 1),
        "Z4[2]": ChainComplex.concentrated(Z4, 2),
        "Z2-0->Z2": ChainComplex.from_maps(0, [Z2, Z2], [IntMatrix.from_rows([[0]])]),
        "Z2-id->Z2": ChainComplex.from_maps(0, [Z2, Z2], [one]),
        "Z3-id->Z3": ChainComplex.from_maps(0, [Z3, Z3], [one]),
        "Z4-2->Z4": ChainComplex.from_maps(0, [Z4, Z4], [IntMatrix.from_rows([[2]])]),
        "Z2+Z2[0]": ChainComplex.concentrated(Z2Z2, 0),
        "Z2,Z2,Z2 d=0": ChainComplex.from_maps(0, [Z2, Z2, Z2], [IntMatrix.from_rows([[0]])] * 2),
        "Z3-id->Z3-0->Z3": ChainComplex.from_maps(0, [Z3, Z3, Z3], [one, IntMatrix.from_rows([[0]])]),
        "0": zero_complex(),
    }


def integer_corpus() -> dict:
    return {
        "Z[0]": ChainComplex.concentrated(Z, 0),
        "Z-2->Z": ChainComplex.from_maps(0, [Z, Z], [IntMatrix.from_rows([[2]])]),
        "Z+Z2[1]": ChainComplex.concentrated(direct_sum([Z, Z2]), 1),
    }


# ---------------------------------------------------------------- simplicial groups


def random_unimodular(rng, n: int, steps: int = 6) -> tuple:
    """A random U with determinant ±1, together with its inverse."""
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    v = [row[:] for row in u]
    for _ in range(steps if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        k = rng.choice([-2, -1, 1, 2])
        # row_i += k row_j on U, column_j -= k column_i on U^{-1}
        u[i] = [a + k * b for a, b in zip(u[i], u[j])]
        for row in v:
            row[j] -= k * row[i]
    return IntMatrix.from_rows(u, n), IntMatrix.from_rows(v, n)


def scramble_simplicial(rng, g: SimplicialAbGroup) -> SimplicialAbGroup:
    """Same simplicial group, presented in randomly changed coordinates on every level."""
    us = [random_unimodular(rng, lv.ngens) for lv in g.levels]
    levels = tuple(FgAbGroup(u @ lv.relations) for (u, _), lv in zip(us, g.levels))

    def conj(f: GroupHom, src: int, dst: int) -> GroupHom:
        return GroupHom(levels[src], levels[dst], us[dst][0] @ f.matrix @ us[src][1], check=False)

    faces = tuple(tuple(conj(f, n, n - 1) for f in fs) for n, fs in enumerate(g.faces))
    degs = tuple(tuple(conj(f, n, n + 1) for f in ss) for n, ss in enumerate(g.degeneracies))
    return SimplicialAbGroup(levels, faces, degs)


def constant_simplicial(g: FgAbGroup, T: int) -> SimplicialAbGroup:
    one = GroupHom.identity(g)
    return SimplicialAbGroup(tuple([g] * (T + 1)), tuple(tuple([one] * (n + 1)) if n else () for n in range(T + 1)),
                             tuple(tuple([one] * (n + 1)) for n in range(T)))


def random_simplicial(rng, T: int = 4, max_degree: int = 3) -> SimplicialAbGroup:
    c = random_finite_complex(rng, max_degree)
    return scramble_simplicial(rng, dk_inverse(c, T))


# ---------------------------------------------------------------- sites and presheaves


def circle_site() -> FiniteSite:
    """Three opens covering X with pairwise overlaps and empty triple overlap."""
    opens = ["X", "U1", "U2", "U3", "U12", "U13", "U23", "E"]
    leq = [("U1", "X"), ("U2", "X"), ("U3", "X"),
           ("U12", "U1"), ("U12", "U2"), ("U13", "U1"), ("U13", "U3"), ("U23", "U2"), ("U23", "U3")]
    leq += [("E", u) for u in opens if u != "E"]
    return FiniteSite.build(opens, leq, {"X": [["U1", "U2", "U3"]]}, empty="E")


CIRCLE_COVER = ("U1", "U2", "U3")


def two_open_site(overlap: bool = True) -> FiniteSite:
    if overlap:
        opens = ["X", "U", "W", "UW"]
        leq = [("U", "X"), ("W", "X"), ("UW", "U"), ("UW", "W")]
        return FiniteSite.build(opens, leq, {"X": [["U", "W"]]})
    opens = ["X", "U", "W", "E"]
    leq = [("U", "X"), ("W", "X"), ("E", "U"), ("E", "W")]
    return FiniteSite.build(opens, leq, {"X": [["U", "W"]]}, empty="E")


def trivial_cover_site() -> FiniteSite:
    opens = ["X", "U"]
    return FiniteSite.build(opens, [("U", "X")], {"X": [["X"]], "U": [["U"]]})


def constant_presheaf(site: FiniteSite, c: ChainComplex) -> Presheaf:
    """c on every open except the empty one, identities as restrictions."""
    cx = {u: zero_complex() if u == site.empty else c for u in site.opens}
    res = {(a, b): ChainMap.identity(c) for (a, b) in site.leq_pairs if a != b and a != site.empty}
    return Presheaf(site, cx, res)


def counterexample_identity() -> Presheaf:
    """A --id--> A (A = Z/2) on every nonempty open: acyclic, so Čech descent holds,
    but the empty-overlap cover breaks the equalizer condition in each degree."""
    a = ChainComplex.from_maps(0, [Z2, Z2], [IntMatrix.from_rows([[1]])])
    return constant_presheaf(two_open_site(overlap=False), a)


def counterexample_shifted() -> Presheaf:
    """Z in degree 1 on the circle site: a sheaf in every degree, yet the
    degree-0 Čech class of the cover is not matched by H_0 = 0."""
    return constant_presheaf(circle_site(), ChainComplex.concentrated(Z, 1))


# Random presheaves are built as sums of pieces.  Each piece is a complex on an
# upward-closed set of opens ("support"), extended by zero; restrictions inside the
# support are identities.  A two-level piece uses C on an upper set and C' on the rest of
# the support, joined by a chain map C -> C'.


def random_site(rng) -> FiniteSite:
    shapes = [
        (["X", "U", "W", "UW"], [("U", "X"), ("W", "X"), ("UW", "U"), ("UW", "W")], {"X": [["U", "W"]]}, None),
        (["X", "U", "W", "E"], [("U", "X"), ("W", "X"), ("E", "U"), ("E", "W")], {"X": [["U", "W"]]}, "E"),
        (["X", "U", "V"], [("V", "U"), ("U", "X")], {"X": [["U"]], "U": [["V"]]}, None),
        (["X", "U", "V", "W"], [("U", "X"), ("V", "X"), ("W", "U"), ("W", "V")], {"X": [["U", "V"], ["X"]]}, None),
        (["X", "U", "V"], [("U", "X"), ("V", "X"), ("V", "U")], {"X": [["U", "V"]]}, None),
    ]
    opens, leq, covers, empty = rng.choice(shapes)
    return FiniteSite.build(opens, leq, covers, empty)


def _upsets(site: FiniteSite) -> list:
    nonempty = [u for u in site.opens if u != site.empty]
    out = []
    for mask in range(1, 1 << len(nonempty)):
        s = {u for k, u in enumerate(nonempty) if mask >> k & 1}
        if all(b in s for a in s for b in nonempty if site.leq(a, b)):
            out.append(frozenset(s))
    return out


def _piece(site, support, upper, c_up, c_low, g):
    cx, res = {}, {}
    for u in site.opens:
        cx[u] = c_up if u in upper else c_low if u in support else zero_complex()
    for (a, b) in site.leq_pairs:
        if a == b or a not in support:
            continue
        if a in upper or b not in upper:
            res[(a, b)] = ChainMap.identity(cx[a])
        else:
            res[(a, b)] = g
    return cx, res


def _sum_presheaves(site, parts) -> Presheaf:
    cx = {}
    for u in site.opens:
        acc = None
        for pcx, _ in parts:
            acc = pcx[u] if acc is None else direct_sum_complex(acc, pcx[u])
        cx[u] = acc.with_range(0, max(acc.max_degree, 0))
    res = {}
    for (a, b) in site.leq_pairs:
        if a == b:
            continue
        blocks = {}
        for n in range(cx[b].max_degree + 1):
            mats = []
            for pcx, pres in parts:
                f = pres.get((a, b)) or ChainMap.zero(pcx[b], pcx[a])
                mats.append(f.component(n).matrix)
            blocks[n] = GroupHom(cx[b].group(n), cx[a].group(n), block_diag(mats), check=False)
        res[(a, b)] = ChainMap(cx[b], cx[a], blocks)
    return Presheaf(site, cx, res)


def random_presheaf(rng, site: FiniteSite | None = None, groups=(Z2, Z3, Z4), max_degree: int = 3,
                    pieces: int = 2) -> Presheaf:
    site = site or random_site(rng)
    ups = _upsets(site)
    parts = []
    for _ in range(rng.randint(1, pieces)):
        support = rng.choice(ups)
        c_up = random_complex(rng, max_degree, groups, p_trivial=0.2)
        inner = [s for s in ups if s < support]
        if inner and rng.random() < 0.5:
            upper = rng.choice(inner)
            c_low = random_complex(rng, max_degree, groups, p_trivial=0.2)
            g = random_chain_map(rng, c_up, c_low)
            parts.append(_piece(site, support, upper, c_up, c_low, g))
        else:
            parts.append(_piece(site, support, support, c_up, c_up, None))
    return _sum_presheaves(site, parts)
