"""Picard omega-categories: strict omega-categories internal to abelian groups.

A PicOmegaCat is an abelian group with idempotent linear source and target
maps s_n, t_n.  Composition is forced: x *_n y = x + y - s_n x.  p_of builds
the graded form from a chain complex, q_of recovers a complex.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import cached_property

from .chain import ChainComplex, ChainHomotopy, ChainMap
from .core import FgAbGroup, GroupHom, IntMatrix, direct_sum, hstack, subquotient, vstack
from .errors import InfiniteGroup, NotAHomotopy, NotComposable, PreconditionViolated
from .omega import FiniteOmegaCat, OmegaFunctor, hom_category, omega_cat_from_functions


@dataclass(frozen=True, eq=False)
class PicOmegaCat:
    group: FgAbGroup
    lo: int  # lowest level; below it s = t = 0
    s_maps: tuple  # GroupHom group -> group, levels lo..N
    t_maps: tuple
    complex: ChainComplex | None = None  # set when built in graded form
    integer_levels: bool = False

    @property
    def top(self) -> int:
        return self.lo + len(self.s_maps) - 1

    @property
    def levels(self) -> range:
        return range(self.lo, self.top + 1)

    def s_hom(self, n: int) -> GroupHom:
        if n > self.top:
            return GroupHom.identity(self.group)
        if n < self.lo:
            return GroupHom.zero(self.group, self.group)
        return self.s_maps[n - self.lo]

    def t_hom(self, n: int) -> GroupHom:
        if n > self.top:
            return GroupHom.identity(self.group)
        if n < self.lo:
            return GroupHom.zero(self.group, self.group)
        return self.t_maps[n - self.lo]

    def s(self, n: int, x) -> tuple:
        return self.s_hom(n).apply(x)

    def t(self, n: int, x) -> tuple:
        return self.t_hom(n).apply(x)

    def canonical(self, x) -> tuple:
        return self.group.canonical(x)

    def zero(self) -> tuple:
        return self.group.zero()

    def add(self, x, y) -> tuple:
        return self.group.add(x, y)

    def neg(self, x) -> tuple:
        return self.group.neg(x)

    def sub(self, x, y) -> tuple:
        return self.group.sub(x, y)

    def compose(self, n: int, x, y) -> tuple:
        sx = self.s(n, x)
        if sx != self.t(n, y):
            raise NotComposable(f"s_{n} x != t_{n} y")
        return self.canonical(tuple(a + b - c for a, b, c in zip(x, y, sx)))

    def is_cell(self, n: int, x) -> bool:
        return self.s(n, x) == self.canonical(x)

    def mu(self, x):
        """Least level m with s_m x = x; None for 0 when levels are unbounded below."""
        x = self.canonical(x)
        if self.integer_levels and self.group.is_zero(x):
            return None
        for m in range(self.lo, self.top + 1):
            if self.s(m, x) == x:
                return m
        return self.top + 1

    def elements(self):
        return self.group.iter_coords()

    @cached_property
    def total_differential(self) -> GroupHom:
        """D = sum over levels of (t_n - s_n)."""
        out = GroupHom.zero(self.group, self.group)
        for n in self.levels:
            out = out + (self.t_hom(n) - self.s_hom(n))
        return out

    def structure_problems(self) -> list:
        """Linear identities that make (group, s, t) a Picard omega-category."""
        out = []
        L = list(self.levels)
        for m in self.s_maps + self.t_maps:
            if not m.is_well_defined():
                out.append("a source or target map is not a homomorphism")
        for i in L:
            for rho, rn in ((self.s_hom, "s"), (self.t_hom, "t")):
                for sig, sn in ((self.s_hom, "s"), (self.t_hom, "t")):
                    if not rho(i).compose(sig(i)).equals(sig(i)):
                        out.append(f"{rn}_{i} {sn}_{i} != {sn}_{i}")
            for j in L:
                if i < j:
                    for rho, rn in ((self.s_hom, "s"), (self.t_hom, "t")):
                        for sig, sn in ((self.s_hom, "s"), (self.t_hom, "t")):
                            if not rho(j).compose(sig(i)).equals(sig(i)):
                                out.append(f"{rn}_{j} {sn}_{i} != {sn}_{i}")
                            if not sig(i).compose(rho(j)).equals(sig(i)):
                                out.append(f"{sn}_{i} {rn}_{j} != {sn}_{i}")
        return out

    def random_element(self, rng, spread: int = 3) -> tuple:
        return self.canonical(tuple(rng.randint(-spread, spread) for _ in range(self.group.ngens)))

    def random_composable(self, rng, n: int, x) -> tuple:
        """Some y with t_n y = s_n x."""
        z = self.random_element(rng)
        return self.canonical(tuple(a + b - c for a, b, c in zip(self.s(n, x), z, self.t(n, z))))


# ---------------------------------------------------------------- graded form


def _blocks(c: ChainComplex) -> dict:
    out, off = {}, 0
    for n in c.degrees:
        k = c.group(n).ngens
        out[n] = slice(off, off + k)
        off += k
    return out


def p_of(c: ChainComplex) -> PicOmegaCat:
    """Graded form: s_n x = (x_0..x_n, 0..), t_n x = (x_0..x_{n-1}, x_n + d x_{n+1}, 0..)."""
    if c.min_degree > 0:
        c = c.with_range(0, c.max_degree)
    total = direct_sum(list(c.groups))
    degs = list(c.degrees)
    s_maps, t_maps = [], []
    for n in degs:
        sb, tb = [], []
        for p in degs:
            srow, trow = [], []
            for q in degs:
                gp, gq = c.group(p), c.group(q)
                ident = IntMatrix.identity(gp.ngens) if p == q else None
                zero = IntMatrix.zeros(gp.ngens, gq.ngens)
                srow.append(ident if (p == q and p <= n) else zero)
                if p == q and p <= n:
                    trow.append(ident)
                elif p == n and q == n + 1:
                    trow.append(c.d(q).matrix)
                else:
                    trow.append(zero)
            sb.append(hstack(srow))
            tb.append(hstack(trow))
        s_maps.append(GroupHom(total, total, vstack(sb), check=False))
        t_maps.append(GroupHom(total, total, vstack(tb), check=False))
    return PicOmegaCat(total, c.min_degree, tuple(s_maps), tuple(t_maps), c, c.min_degree < 0)


def graded_components(a: PicOmegaCat, x) -> dict:
    bl = _blocks(a.complex)
    return {n: tuple(x[sl]) for n, sl in bl.items()}


def from_components(a: PicOmegaCat, comps: dict) -> tuple:
    c = a.complex
    out = []
    for n in c.degrees:
        out.extend(comps.get(n, c.group(n).zero()))
    return a.canonical(tuple(out))


def degree_embedding(c: ChainComplex, n: int, total: FgAbGroup) -> GroupHom:
    """c_n placed in degree n of the total group."""
    g = c.group(n)
    rows = []
    for m in c.degrees:
        gm = c.group(m)
        rows.append(IntMatrix.identity(g.ngens) if m == n else IntMatrix.zeros(gm.ngens, g.ngens))
    return GroupHom(g, total, vstack(rows, g.ngens), check=False)


# ---------------------------------------------------------------- sequence pairs


@dataclass(frozen=True)
class SeqPair:
    pairs: tuple  # ((minus, plus), ...) for degrees min..max


class SeqPairAlgebra:
    """Elements are sequences of pairs (x_i^-, x_i^+) of x_i in c_i with
    d x_i^- = d x_i^+ = x_{i-1}^+ - x_{i-1}^-, and the top pair equal."""

    def __init__(self, c: ChainComplex):
        self.c = c
        self.degs = list(c.degrees)
        self._groups = {n: c.group(n) for n in range(c.min_degree - 1, c.max_degree + 2)}

    def _g(self, n):
        return self._groups[n]

    def canonical(self, x: SeqPair) -> SeqPair:
        return SeqPair(tuple((self._g(n).canonical(m), self._g(n).canonical(p))
                             for n, (m, p) in zip(self.degs, x.pairs)))

    def problems(self, x: SeqPair) -> list:
        c, out = self.c, []
        if len(x.pairs) != len(self.degs):
            return ["wrong number of pairs"]
        for k, n in enumerate(self.degs):
            m, p = x.pairs[k]
            below = x.pairs[k - 1] if k > 0 else None
            for v in (m, p):
                dv = c.d(n).apply(v)
                want = self._g(n - 1).sub(below[1], below[0]) if below else self._g(n - 1).zero()
                if dv != want:
                    out.append(f"boundary condition fails in degree {n}")
        m, p = x.pairs[-1]
        if not self._g(self.degs[-1]).equal(m, p):
            out.append("top pair is not constant")
        return out

    def is_valid(self, x: SeqPair) -> bool:
        return not self.problems(x)

    def zero(self) -> SeqPair:
        return SeqPair(tuple((self._g(n).zero(), self._g(n).zero()) for n in self.degs))

    def add(self, x, y) -> SeqPair:
        return SeqPair(tuple((self._g(n).add(a[0], b[0]), self._g(n).add(a[1], b[1]))
                             for n, a, b in zip(self.degs, x.pairs, y.pairs)))

    def neg(self, x) -> SeqPair:
        return SeqPair(tuple((self._g(n).neg(a[0]), self._g(n).neg(a[1])) for n, a in zip(self.degs, x.pairs)))

    def _boundary(self, n, x, which) -> SeqPair:
        out = []
        for k, deg in enumerate(self.degs):
            g = self._g(deg)
            if deg < n:
                out.append(x.pairs[k])
            elif deg == n:
                v = x.pairs[k][which]
                out.append((g.canonical(v), g.canonical(v)))
            else:
                out.append((g.zero(), g.zero()))
        return self.canonical(SeqPair(tuple(out)))

    def s(self, n, x) -> SeqPair:
        return self._boundary(n, x, 0)

    def t(self, n, x) -> SeqPair:
        return self._boundary(n, x, 1)

    def compose(self, n, x, y) -> SeqPair:
        if self.s(n, x) != self.t(n, y):
            raise NotComposable(f"s_{n} x != t_{n} y")
        out = []
        for k, deg in enumerate(self.degs):
            g = self._g(deg)
            if deg < n:
                out.append(x.pairs[k])
            elif deg == n:
                out.append((y.pairs[k][0], x.pairs[k][1]))
            else:
                out.append((g.add(x.pairs[k][0], y.pairs[k][0]), g.add(x.pairs[k][1], y.pairs[k][1])))
        return self.canonical(SeqPair(tuple(out)))

    def from_graded(self, comps: dict) -> SeqPair:
        """(x_0, x_1, ..) -> ((x_i, x_i + d x_{i+1}))."""
        out = []
        for n in self.degs:
            g = self._g(n)
            xn = comps.get(n, g.zero())
            up = self.c.d(n + 1).raw(comps.get(n + 1, self._g(n + 1).zero()))
            out.append((g.canonical(xn), g.add(xn, up)))
        return SeqPair(tuple(out))

    def to_graded(self, x: SeqPair) -> dict:
        return {n: p[0] for n, p in zip(self.degs, x.pairs)}

    def elements(self):
        """Brute-force enumeration of every valid sequence (small complexes only)."""
        per = [list(self._g(n).iter_coords()) for n in self.degs]
        choices = [list(itertools.product(els, els)) for els in per]
        for combo in itertools.product(*choices):
            x = SeqPair(tuple(combo))
            if self.is_valid(x):
                yield x


# ---------------------------------------------------------------- Q and the comparison maps


@dataclass(frozen=True, eq=False)
class QData:
    complex: ChainComplex
    pieces: dict  # degree -> Subquotient of the total group


def q_data(a: PicOmegaCat) -> QData:
    """Q^i = A_i / A_{i-1} with d induced by t_{i-1} - s_{i-1}."""
    T = a.group
    ident = GroupHom.identity(T)
    pieces = {}
    for i in a.levels:
        pieces[i] = subquotient(ident - a.s_hom(i), a.s_hom(i - 1))
    degs = list(a.levels)
    groups = [pieces[i].group for i in degs]
    ds = []
    for i in degs[1:]:
        f = a.t_hom(i - 1) - a.s_hom(i - 1)
        src, tgt = pieces[i], pieces[i - 1]
        cols = [tgt.coords(f.raw(b)) for b in src.basis.columns()]
        ds.append(GroupHom(src.group, tgt.group, IntMatrix.from_columns(cols, tgt.group.ngens)))
    return QData(ChainComplex(a.lo, groups, ds), pieces)


def q_of(a: PicOmegaCat) -> ChainComplex:
    return q_data(a).complex


def h_map(c: ChainComplex) -> ChainMap:
    """The comparison c -> Q(P(c)): an element of c_i goes to its class in degree i."""
    a = p_of(c)
    qd = q_data(a)
    comps = {}
    for n in c.degrees:
        emb = degree_embedding(a.complex, n, a.group)
        comps[n] = qd.pieces[n].factor(emb)
    src = a.complex
    return ChainMap(src, qd.complex, comps)


@dataclass(frozen=True, eq=False)
class PhiMap:
    """φ: A -> PQ(A), x -> ([s_i x], [t_i x])_i, in sequence-pair form."""

    pic: PicOmegaCat
    q: QData
    pq: SeqPairAlgebra
    s_parts: dict  # level -> GroupHom A -> Q^i
    t_parts: dict

    def __call__(self, x) -> SeqPair:
        return SeqPair(tuple((self.s_parts[i].apply(x), self.t_parts[i].apply(x)) for i in self.pq.degs))

    def graded_hom(self) -> GroupHom:
        """x -> ([s_i x])_i into the direct sum of the Q^i (the graded form of φ)."""
        tgt = direct_sum([self.q.complex.group(i) for i in self.pq.degs])
        m = vstack([self.s_parts[i].matrix for i in self.pq.degs], self.pic.group.ngens)
        return GroupHom(self.pic.group, tgt, m, check=False)


def phi_map(a: PicOmegaCat) -> PhiMap:
    qd = q_data(a)
    s_parts = {i: qd.pieces[i].factor(a.s_hom(i)) for i in a.levels}
    t_parts = {i: qd.pieces[i].factor(a.t_hom(i)) for i in a.levels}
    return PhiMap(a, qd, SeqPairAlgebra(qd.complex), s_parts, t_parts)


def phi_problems(a: PicOmegaCat, rng=None, pair_limit: int = 20000, samples: int = 200) -> list:
    """Check that φ: A -> PQ(A) is a bijection commuting with s_n, t_n, + and *_n.

    Finite groups are checked element by element (composable pairs are sampled
    once there are more than pair_limit of them); otherwise φ is checked to be
    an isomorphism of groups and compatibility is tested on generators and
    random combinations."""
    rng = rng or random.Random(0)
    phi = phi_map(a)
    pq = phi.pq
    out = []
    levels = list(range(a.lo, a.top + 1))
    if a.group.is_finite:
        els = [a.canonical(x) for x in a.elements()]
        images = {}
        for x in els:
            fx = pq.canonical(phi(x))
            if not pq.is_valid(fx):
                out.append(f"φ({x}) is not a valid sequence of pairs")
            images[fx] = x
        target_size = 1
        for n in pq.degs:
            target_size *= pq.c.group(n).order
        if len(images) != len(els) or target_size != len(els):
            out.append(f"φ is not bijective: {len(els)} elements, {len(images)} images, {target_size} targets")
        probe = els
    else:
        if not phi.graded_hom().is_iso():
            out.append("φ is not an isomorphism on the underlying groups")
        n = a.group.ngens
        probe = [a.canonical(tuple(int(i == j) for i in range(n))) for j in range(n)]
        probe += [a.random_element(rng) for _ in range(samples)]
    for x in probe:
        fx = pq.canonical(phi(x))
        for n in levels:
            if pq.canonical(phi(a.s(n, x))) != pq.s(n, fx) or pq.canonical(phi(a.t(n, x))) != pq.t(n, fx):
                out.append(f"φ does not commute with s_{n} or t_{n} at {x}")
                return out
    for _ in range(samples):
        x, y = rng.choice(probe), rng.choice(probe)
        if pq.canonical(phi(a.add(x, y))) != pq.canonical(pq.add(phi(x), phi(y))):
            out.append(f"φ is not additive at {x}, {y}")
            return out
    for n in levels:
        if a.group.is_finite:
            by_t = {}
            for y in probe:
                by_t.setdefault(a.t(n, y), []).append(y)
            total = sum(len(by_t.get(a.s(n, x), ())) for x in probe)
            if total <= pair_limit:
                pairs = [(x, y) for x in probe for y in by_t.get(a.s(n, x), ())]
            else:
                pairs = []
                for _ in range(samples):
                    x = rng.choice(probe)
                    pairs.append((x, rng.choice(by_t[a.s(n, x)])))
        else:
            pairs = [(x, a.random_composable(rng, n, x)) for x in probe]
        for x, y in pairs:
            lhs = pq.canonical(phi(a.compose(n, x, y)))
            if lhs != pq.compose(n, pq.canonical(phi(x)), pq.canonical(phi(y))):
                out.append(f"φ does not preserve *_{n} at {x}, {y}")
                return out
    return out


# ---------------------------------------------------------------- finite realisation


def from_pic(a: PicOmegaCat) -> FiniteOmegaCat:
    """Tabulate a finite Picard omega-category."""
    if not a.group.is_finite:
        raise InfiniteGroup("only finite Picard omega-categories can be tabulated")
    els = list(a.elements())
    min_level = a.lo - 1 if a.integer_levels else 0
    top = max(a.top, min_level)
    return omega_cat_from_functions(els, top, a.s, a.t,
                                    lambda i, x, y: a.canonical(tuple(p + q - r for p, q, r in zip(x, y, a.s(i, x)))),
                                    min_level)


def pic_functor(f: ChainMap, source: FiniteOmegaCat, target: FiniteOmegaCat) -> OmegaFunctor:
    """P(f) between tabulated graded forms of f.source and f.target."""
    A, B = f.source, f.target
    A2, B2 = A.with_range(0, A.max_degree), B.with_range(0, B.max_degree)
    ba = _blocks(A2)
    total = direct_sum(list(B2.groups))
    out = []
    for lab in source.labels:
        comps = []
        for n in B2.degrees:
            if n in ba:
                comps.extend(f.component(n).apply(lab[ba[n]]))
            else:
                comps.extend(B2.group(n).zero())
        out.append(target.index[total.canonical(comps)])
    return OmegaFunctor(source, target, tuple(out))


# ---------------------------------------------------------------- hom omega-categories


@dataclass(frozen=True, eq=False)
class HomSub:
    category: FiniteOmegaCat  # A[k]^{x,y}
    zero_category: FiniteOmegaCat  # A[k]^{0,0}
    witness: tuple | None
    translation: OmegaFunctor | None  # z -> z - w


def hom_sub(a: PicOmegaCat, k: int, x, y) -> HomSub:
    fa = from_pic(a)
    xi, yi = fa.index[a.canonical(x)], fa.index[a.canonical(y)]
    z0 = fa.index[a.zero()]
    cat = hom_category(fa, k, xi, yi)
    zero_cat = hom_category(fa, k, z0, z0)
    if cat.size == 0:
        return HomSub(cat, zero_cat, None, None)
    w = a.s(k, cat.labels[0])  # a witness of dimension at most k
    mapping = tuple(zero_cat.index[a.sub(z, w)] for z in cat.labels)
    return HomSub(cat, zero_cat, w, OmegaFunctor(cat, zero_cat, mapping))


# ---------------------------------------------------------------- free construction


def free_pic(a: FiniteOmegaCat) -> PicOmegaCat:
    """Free Picard omega-category: Z[a] modulo x *_n y = x + y - s_n x."""
    if a.min_level != 0:
        raise PreconditionViolated("free construction needs levels starting at 0")
    n = a.size
    rels = []
    for i in a.levels:
        for (x, y, z) in a.composable_pairs(i):
            v = [0] * n
            v[z] += 1
            v[x] -= 1
            v[y] -= 1
            v[a.src(i, x)] += 1
            if any(v):
                rels.append(tuple(v))
    group = FgAbGroup(IntMatrix.from_columns(rels, n))
    s_maps, t_maps = [], []
    for i in a.levels:
        s_maps.append(GroupHom(group, group, IntMatrix.from_columns(
            [tuple(int(r == a.src(i, x)) for r in range(n)) for x in range(n)], n)))
        t_maps.append(GroupHom(group, group, IntMatrix.from_columns(
            [tuple(int(r == a.tgt(i, x)) for r in range(n)) for x in range(n)], n)))
    return PicOmegaCat(group, 0, tuple(s_maps), tuple(t_maps))


# ---------------------------------------------------------------- homotopies


@dataclass(frozen=True, eq=False)
class PicHomotopy:
    """A linear H: A -> B between Picard omega-categories realising G - F."""

    F: GroupHom  # total-group maps P(F), P(G)
    G: GroupHom
    H: GroupHom
    source: PicOmegaCat
    target: PicOmegaCat


def total_map(f: ChainMap, a: PicOmegaCat, b: PicOmegaCat) -> GroupHom:
    """P(f) as a map of total groups."""
    rows = []
    for p in b.complex.degrees:
        rows.append(hstack([f.component(p).matrix if p == q else
                            IntMatrix.zeros(b.complex.group(p).ngens, a.complex.group(q).ngens)
                            for q in a.complex.degrees], b.complex.group(p).ngens))
    return GroupHom(a.group, b.group, vstack(rows, a.group.ngens), check=False)


def homotopy_to_pic(h: ChainHomotopy) -> PicHomotopy:
    """Place h_n one degree up: H x = (0, h_0 x_0, h_1 x_1, ..)."""
    a, b = p_of(h.F.source), p_of(h.F.target)
    rows = []
    for p in b.complex.degrees:
        row = []
        for q in a.complex.degrees:
            gp, gq = b.complex.group(p), a.complex.group(q)
            row.append(h.component(q).matrix if p == q + 1 else IntMatrix.zeros(gp.ngens, gq.ngens))
        rows.append(hstack(row, gp.ngens))
    H = GroupHom(a.group, b.group, vstack(rows, a.group.ngens), check=False)
    out = PicHomotopy(total_map(h.F, a, b), total_map(h.G, a, b), H, a, b)
    problems = pic_homotopy_problems(out)
    if problems:
        raise NotAHomotopy("; ".join(problems))
    return out


def pic_homotopy_problems(ph: PicHomotopy) -> list:
    a, b, H = ph.source, ph.target, ph.H
    out = []
    if not H.is_well_defined():
        out.append("H is not a homomorphism")
    for n in range(a.lo - 1, max(a.top, b.top) + 1):
        # H(A_n) lies in B_{n+1}
        if not b.s_hom(n + 1).compose(H).compose(a.s_hom(n)).equals(H.compose(a.s_hom(n))):
            out.append(f"H does not raise dimension by one at level {n}")
        if not b.s_hom(n).compose(H).compose(a.s_hom(n) - a.s_hom(n - 1)).is_zero():
            out.append(f"s_{n} H (s_{n} - s_{n - 1}) is not zero")
    lhs = b.total_differential.compose(H) + H.compose(a.total_differential)
    if not lhs.equals(ph.G - ph.F):
        out.append("D H + H D != G - F")
    return out


def homotopy_from_pic(ph: PicHomotopy, F: ChainMap, G: ChainMap) -> ChainHomotopy:
    """Read h_n back off as the degree n+1 part of H restricted to degree n."""
    problems = pic_homotopy_problems(ph)
    if problems:
        raise NotAHomotopy("; ".join(problems))
    a, b = ph.source, ph.target
    ba, bb = _blocks(a.complex), _blocks(b.complex)
    comps = {}
    for q in a.complex.degrees:
        if q + 1 not in bb:
            continue
        sub = IntMatrix(bb[q + 1].stop - bb[q + 1].start, ba[q].stop - ba[q].start,
                        tuple(r[ba[q]] for r in ph.H.matrix.data[bb[q + 1]]))
        comps[q] = GroupHom(a.complex.group(q), b.complex.group(q + 1), sub)
    return ChainHomotopy(F, G, comps)


# ---------------------------------------------------------------- strict Picard 1-categories


def strict_picard_problems(a: PicOmegaCat) -> list:
    """Checks on a finite Picard category (levels at most 1)."""
    if a.top > 1:
        raise PreconditionViolated("expected a Picard 1-category")
    out = []
    els = list(a.elements())
    zero = a.zero()
    for f in els:
        x, y = a.s(0, f), a.t(0, f)
        inv = a.canonical(tuple(-p + q + r for p, q, r in zip(f, x, y)))
        if a.add(f, inv) != a.add(x, y):
            out.append(("f + f^-1 = id_(x+y)", f))
        if a.compose(0, f, inv) != y or a.compose(0, inv, f) != x:
            out.append(("f^-1 inverts f", f))
        if sum(1 for g in els if a.add(f, g) == zero) != 1:
            out.append(("unique additive inverse", f))
    by_src = {}
    for f in els:
        by_src.setdefault(a.s(0, f), []).append(f)
    for f in els:
        b = a.t(0, f)
        for g in by_src.get(b, ()):
            if a.add(b, a.compose(0, g, f)) != a.add(g, f):
                out.append(("id_b + g f = g + f", f, g))
    return out
