"""Truncated simplicial abelian groups, Dold-Kan, loops, W-bar and nerves."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .chain import ChainComplex, ChainMap, homology
from .core import (FgAbGroup, GroupHom, IntMatrix, Subquotient, block_diag, direct_sum, hstack, in_span,
                   vstack)
from .errors import PreconditionViolated, TruncationTooLow
from .omega import FiniteOmegaCat
from .parity import degeneracy_map, face_map, induced_map, oriental
from .pic import from_pic, graded_components, p_of, q_of

TRIVIAL = FgAbGroup.trivial()


@dataclass(frozen=True, eq=False)
class SimplicialAbGroup:
    """Levels 0..T; faces[n][i]: G_n -> G_{n-1}; degeneracies[n][j]: G_n -> G_{n+1} for n < T."""

    levels: tuple
    faces: tuple
    degeneracies: tuple
    ambient: dict | None = None  # for loops: level n as a kernel inside a level of the original

    @property
    def T(self) -> int:
        return len(self.levels) - 1

    def d(self, n: int, i: int) -> GroupHom:
        return self.faces[n][i]

    def s(self, n: int, j: int) -> GroupHom:
        return self.degeneracies[n][j]

    def structure_map(self, theta: Sequence[int], n: int) -> GroupHom:
        """θ^*: G_n -> G_m for a monotone θ: [m] -> [n]."""
        theta = tuple(theta)
        img = sorted(set(theta))
        # epi-mono factorisation θ = δ ∘ σ
        sigma = tuple(img.index(v) for v in theta)
        k = len(img) - 1
        out = GroupHom.identity(self.levels[n])
        # δ: [k] -> [n] with image img; peel off missing vertices from the top
        cur = list(img)
        top = n
        while top > k:
            missing = next(v for v in range(top + 1) if v not in cur)
            out = self.d(top, missing).compose(out)
            cur = [v if v < missing else v - 1 for v in cur]
            top -= 1
        # σ: [m] -> [k]; peel off repeats
        cur = list(sigma)
        lvl = k
        ops = []
        while len(cur) - 1 > lvl:
            j = max(i for i in range(len(cur) - 1) if cur[i] == cur[i + 1])
            ops.append((len(cur) - 2, j))
            cur = cur[:j] + cur[j + 1:]
        for (src_level, j) in reversed(ops):
            out = self.s(src_level, j).compose(out)
        return out


def simplicial_problems(g: SimplicialAbGroup) -> list:
    out = []
    T = g.T
    for n in range(1, T + 1):
        for i in range(n + 1):
            if not g.d(n, i).is_well_defined():
                out.append(f"d_{i} on level {n} is not a homomorphism")
    for n in range(T):
        for j in range(n + 1):
            if not g.s(n, j).is_well_defined():
                out.append(f"s_{j} on level {n} is not a homomorphism")
    for n in range(2, T + 1):
        for j in range(n + 1):
            for i in range(j):
                if not g.d(n - 1, i).compose(g.d(n, j)).equals(g.d(n - 1, j - 1).compose(g.d(n, i))):
                    out.append(f"d_{i} d_{j} != d_{j - 1} d_{i} on level {n}")
    for n in range(T - 1):
        for j in range(n + 1):
            for i in range(j + 1):
                if not g.s(n + 1, i).compose(g.s(n, j)).equals(g.s(n + 1, j + 1).compose(g.s(n, i))):
                    out.append(f"s_{i} s_{j} != s_{j + 1} s_{i} on level {n}")
    for n in range(T):
        for j in range(n + 1):
            for i in range(n + 2):
                lhs = g.d(n + 1, i).compose(g.s(n, j))
                if i < j:
                    rhs = g.s(n - 1, j - 1).compose(g.d(n, i))
                elif i in (j, j + 1):
                    rhs = GroupHom.identity(g.levels[n])
                else:
                    rhs = g.s(n - 1, j).compose(g.d(n, i - 1))
                if not lhs.equals(rhs):
                    out.append(f"d_{i} s_{j} identity fails on level {n}")
    return out


def validate_simplicial(g: SimplicialAbGroup) -> list:
    return simplicial_problems(g)


# ---------------------------------------------------------------- normalized chains


@dataclass(frozen=True, eq=False)
class NormalizedData:
    complex: ChainComplex
    pieces: dict  # n -> Subquotient (a kernel inside G_n)


def normalized_data(g: SimplicialAbGroup) -> NormalizedData:
    """K_n = intersection of ker d_i for i < n, with d = (-1)^n d_n."""
    pieces = {}
    for n in range(g.T + 1):
        gn = g.levels[n]
        if n == 0:
            stacked = GroupHom.zero(gn, TRIVIAL)
        else:
            tgt = direct_sum([g.levels[n - 1]] * n)
            stacked = GroupHom(gn, tgt, vstack([g.d(n, i).matrix for i in range(n)], gn.ngens), check=False)
        pieces[n] = stacked.kernel()
    ds = []
    for n in range(1, g.T + 1):
        f = g.d(n, n).scale(-1 if n % 2 else 1).compose(pieces[n].inclusion())
        ds.append(pieces[n - 1].factor(f))
    return NormalizedData(ChainComplex(0, [pieces[n].group for n in range(g.T + 1)], ds), pieces)


def normalized_chains(g: SimplicialAbGroup) -> ChainComplex:
    return normalized_data(g).complex


def homotopy_groups(g: SimplicialAbGroup, n: int) -> FgAbGroup:
    """π_n = H_n of the normalized complex; needs level n + 1 to be present."""
    if n >= g.T:
        raise TruncationTooLow(f"π_{n} needs truncation at least {n + 1}, have {g.T}")
    return homology(normalized_chains(g), n)


# ---------------------------------------------------------------- Γ


def surjections(n: int, k: int) -> list:
    """Monotone surjections [n] -> [k], as value tuples."""
    out = []
    for ups in itertools.combinations(range(1, n + 1), k):
        v, cur = [], 0
        for i in range(n + 1):
            if i in ups:
                cur += 1
            v.append(cur)
        out.append(tuple(v))
    return out


@dataclass(frozen=True, eq=False)
class Gamma:
    """Γ(c): level n is the direct sum over surjections σ: [n] -> [k] of c_k."""

    complex: ChainComplex
    T: int

    @cached_property
    def summands(self) -> dict:
        c = self.complex
        return {n: [(k, s) for k in range(0, min(n, c.max_degree) + 1) for s in surjections(n, k)]
                for n in range(self.T + 1)}

    def offsets(self, n: int) -> dict:
        out, off = {}, 0
        for (k, s) in self.summands[n]:
            size = self.complex.group(k).ngens
            out[s] = slice(off, off + size)
            off += size
        return out

    def level(self, n: int) -> FgAbGroup:
        return direct_sum([self.complex.group(k) for (k, _) in self.summands[n]]) if self.summands[n] else TRIVIAL

    def theta_star(self, theta: Sequence[int], n: int) -> GroupHom:
        """θ^*: Γ_n -> Γ_m via the epi-mono factorisation of σθ."""
        c = self.complex
        theta = tuple(theta)
        m = len(theta) - 1
        src, tgt = self.level(n), self.level(m)
        so, to = self.offsets(n), self.offsets(m)
        rows = [[0] * src.ngens for _ in range(tgt.ngens)]
        for (k, sigma) in self.summands[n]:
            comp = tuple(sigma[v] for v in theta)
            img = sorted(set(comp))
            eta = tuple(img.index(v) for v in comp)
            if img == list(range(k + 1)):
                block, dst = IntMatrix.identity(c.group(k).ngens), eta
            elif img == list(range(k)):
                block, dst = c.d(k).matrix.scale(-1 if k % 2 else 1), eta
            else:
                continue
            r0, c0 = to[dst].start, so[sigma].start
            for i, row in enumerate(block.data):
                for j, v in enumerate(row):
                    rows[r0 + i][c0 + j] += v
        return GroupHom(src, tgt, IntMatrix(tgt.ngens, src.ngens, tuple(tuple(r) for r in rows)), check=False)

    @cached_property
    def simplicial(self) -> SimplicialAbGroup:
        levels = tuple(self.level(n) for n in range(self.T + 1))
        faces = tuple(tuple(self.theta_star(face_map(n, i), n) for i in range(n + 1)) if n else ()
                      for n in range(self.T + 1))
        degs = tuple(tuple(self.theta_star(degeneracy_map(n, j), n) for j in range(n + 1))
                     for n in range(self.T))
        return SimplicialAbGroup(levels, faces, degs)


def dk_inverse(c: ChainComplex, T: int | None = None) -> SimplicialAbGroup:
    if c.min_degree != 0:
        raise PreconditionViolated("Dold-Kan inverse expects a complex starting in degree 0")
    return Gamma(c, c.max_degree + 1 if T is None else T).simplicial


def dk_unit(c: ChainComplex, T: int | None = None) -> ChainMap:
    """c -> K(Γ c): an element of c_k goes to the identity summand of Γ_k."""
    gm = Gamma(c, c.max_degree + 1 if T is None else T)
    nd = normalized_data(gm.simplicial)
    comps = {}
    for k in range(0, min(c.max_degree, gm.T) + 1):
        lvl = gm.level(k)
        sl = gm.offsets(k)[tuple(range(k + 1))]
        cols = []
        for j in range(c.group(k).ngens):
            v = [0] * lvl.ngens
            v[sl.start + j] = 1
            cols.append(tuple(v))
        inc = GroupHom(c.group(k), lvl, IntMatrix.from_columns(cols, lvl.ngens), check=False)
        comps[k] = nd.pieces[k].factor(inc)
    return ChainMap(c.with_range(0, gm.T) if c.max_degree > gm.T else c, nd.complex, comps)


def dk_counit(g: SimplicialAbGroup) -> list:
    """Γ(K g)_n -> G_n: a summand (σ, z) goes to σ^*(z); one hom per level."""
    nd = normalized_data(g)
    gm = Gamma(nd.complex, g.T)
    out = []
    for n in range(g.T + 1):
        blocks = []
        for (k, sigma) in gm.summands[n]:
            blocks.append(g.structure_map(sigma, k).compose(nd.pieces[k].inclusion()).matrix)
        m = hstack(blocks, g.levels[n].ngens) if blocks else IntMatrix.zeros(g.levels[n].ngens, 0)
        out.append(GroupHom(gm.level(n), g.levels[n], m, check=False))
    return out


def nerve_pic(a, T: int) -> SimplicialAbGroup:
    """Nerve of a Picard omega-category, through Q and Γ."""
    return dk_inverse(q_of(a), T)


# ---------------------------------------------------------------- loops, paths, W-bar


def _sub_hom(g: SimplicialAbGroup, sub: dict, n: int, f: GroupHom, m: int) -> GroupHom:
    return sub[m].factor(f.compose(sub[n].inclusion()))


def loop_simplicial(g: SimplicialAbGroup) -> SimplicialAbGroup:
    """L_n = {x in G_{n+1} : d_0 x = 0, vertex_0 x = 0}, d_i = -d_{i+1}, s_i = -s_{i+1}."""
    T = g.T - 1
    if T < 0:
        raise TruncationTooLow("loop needs truncation at least 1")
    sub = {}
    for n in range(T + 1):
        G = g.levels[n + 1]
        vert = g.structure_map((0,), n + 1)
        tgt = direct_sum([g.levels[n], g.levels[0]])
        stacked = GroupHom(G, tgt, vstack([g.d(n + 1, 0).matrix, vert.matrix], G.ngens), check=False)
        sub[n] = stacked.kernel()
    levels = tuple(sub[n].group for n in range(T + 1))
    faces = tuple(tuple(_sub_hom(g, sub, n, -g.d(n + 1, i + 1), n - 1) for i in range(n + 1)) if n else ()
                  for n in range(T + 1))
    degs = tuple(tuple(_sub_hom(g, sub, n, -g.s(n + 1, j + 1), n + 1) for j in range(n + 1))
                 for n in range(T))
    return SimplicialAbGroup(levels, faces, degs, sub)


def path_simplicial(g: SimplicialAbGroup) -> SimplicialAbGroup:
    """Ŝ(g) + the discrete group on G_0, where Ŝ_n = ker(d_0: G_{n+1} -> G_n)."""
    T = g.T - 1
    if T < 0:
        raise TruncationTooLow("path needs truncation at least 1")
    sub = {n: g.d(n + 1, 0).kernel() for n in range(T + 1)}
    g0 = g.levels[0]
    ident = GroupHom.identity(g0)
    levels = tuple(direct_sum([sub[n].group, g0]) for n in range(T + 1))

    def both(f: GroupHom, src: int, dst: int) -> GroupHom:
        return GroupHom(levels[src], levels[dst], block_diag([f.matrix, ident.matrix]), check=False)

    faces = tuple(tuple(both(_sub_hom(g, sub, n, -g.d(n + 1, i + 1), n - 1), n, n - 1) for i in range(n + 1))
                  if n else () for n in range(T + 1))
    degs = tuple(tuple(both(_sub_hom(g, sub, n, -g.s(n + 1, j + 1), n + 1), n, n + 1) for j in range(n + 1))
                 for n in range(T))
    return SimplicialAbGroup(levels, faces, degs)


def wbar(g: SimplicialAbGroup) -> SimplicialAbGroup:
    """W-bar: level n is G_{n-1} + ... + G_0, truncated at T + 1."""
    T = g.T + 1
    levels = [TRIVIAL] + [direct_sum([g.levels[n - 1 - p] for p in range(n)]) for n in range(1, T + 1)]

    def part(n):  # sizes of the blocks of level n, position p holds G_{n-1-p}
        return [g.levels[n - 1 - p].ngens for p in range(n)]

    def assemble(n_src, n_dst, entries):
        """entries: dict (dst_pos, src_pos) -> matrix."""
        rows = []
        ps, pd = part(n_src), part(n_dst)
        for q, hq in enumerate(pd):
            row = []
            for p, wp in enumerate(ps):
                row.append(entries.get((q, p), IntMatrix.zeros(hq, wp)))
            rows.append(hstack(row, hq))
        m = vstack(rows, levels[n_src].ngens) if rows else IntMatrix.zeros(0, levels[n_src].ngens)
        return GroupHom(levels[n_src], levels[n_dst], m, check=False)

    def ident(k):
        return IntMatrix.identity(g.levels[k].ngens)

    faces = [()]
    for n in range(1, T + 1):
        fs = []
        for i in range(n + 1):
            e = {}
            if i == 0:
                for q in range(n - 1):
                    e[(q, q + 1)] = ident(n - 2 - q)
            elif i < n:
                for q in range(i - 1):
                    e[(q, q)] = g.d(n - 1 - q, i - 1 - q).matrix
                e[(i - 1, i - 1)] = g.d(n - i, 0).matrix
                e[(i - 1, i)] = ident(n - i - 1)
                for q in range(i, n - 1):
                    e[(q, q + 1)] = ident(n - 2 - q)
            else:
                for q in range(n - 1):
                    e[(q, q)] = g.d(n - 1 - q, n - 1 - q).matrix
            fs.append(assemble(n, n - 1, e))
        faces.append(tuple(fs))
    degs = []
    for n in range(T):
        ss = []
        for j in range(n + 1):
            e = {}
            for q in range(j):
                e[(q, q)] = g.s(n - 1 - q, j - 1 - q).matrix
            for q in range(j + 1, n + 1):
                e[(q, q - 1)] = ident(n - q)
            ss.append(assemble(n, n + 1, e))
        degs.append(tuple(ss))
    return SimplicialAbGroup(tuple(levels), tuple(faces), tuple(degs))


# ---------------------------------------------------------------- comparisons of subcomplexes


def ambient_lattice(pieces: Sequence[Subquotient]) -> IntMatrix:
    """Columns of the innermost basis pushed out through a chain of inclusions
    (innermost first)."""
    m = pieces[0].basis
    for sq in pieces[1:]:
        m = sq.basis @ m
    return m


def same_sublattice(ambient: FgAbGroup, a: IntMatrix, b: IntMatrix) -> bool:
    """The subgroups generated by the columns of a and b coincide in ambient."""
    rel = ambient.relations
    A = a.columns() + rel.columns()
    B = b.columns() + rel.columns()
    n = ambient.ngens
    return all(in_span(B, n, v) for v in a.columns()) and all(in_span(A, n, v) for v in b.columns())


def loop_matches_omega(g: SimplicialAbGroup) -> bool:
    """K(L g) and Ω K(g) are the same subgroups of the levels of g, with the
    same differentials."""
    L = loop_simplicial(g)
    kl = normalized_data(L)
    kg = normalized_data(g)
    z1 = kg.complex.d(1).kernel()
    for n in range(L.T + 1):
        amb = g.levels[n + 1]
        left = ambient_lattice([kl.pieces[n], L.ambient[n]])
        if n == 0:
            right = ambient_lattice([z1, kg.pieces[1]])
        else:
            right = kg.pieces[n + 1].basis
        if not same_sublattice(amb, left, right):
            return False
    # differentials: compare on generators, pushed into the ambient level
    for n in range(1, L.T + 1):
        left_gen = ambient_lattice([kl.pieces[n], L.ambient[n]])
        d_left = ambient_lattice([kl.pieces[n - 1], L.ambient[n - 1]]) @ kl.complex.d(n).matrix
        sign = -1 if (n + 1) % 2 else 1
        d_right = g.d(n + 1, n + 1).matrix.scale(sign) @ left_gen
        amb = g.levels[n]
        if not all(amb.is_zero(tuple(x - y for x, y in zip(u, v)))
                   for u, v in zip(d_left.columns(), d_right.columns())):
            return False
    return True


# ---------------------------------------------------------------- nerves by enumeration


class Nerve:
    """Simplices of the nerve of a finite omega-category: omega-functors
    O(Δ^n) -> a, listed as tuples over the cells of the oriental."""

    def __init__(self, a: FiniteOmegaCat):
        self.a = a
        self._cache = {}

    def simplices(self, n: int) -> list:
        if n not in self._cache:
            self._cache[n] = list(self._enumerate(n))
        return self._cache[n]

    def _enumerate(self, n: int):
        a = self.a
        o = oriental(n)
        cat, par = o.cat, o.parity
        der = o.derivations
        by_dim = {}
        for x in par.elements:
            by_dim.setdefault(par.dim[x], []).append(x)
        cand_index = {}

        def candidates(k, s_val, t_val):
            key = (k, s_val, t_val)
            if key not in cand_index:
                if k == 0:
                    cand_index[key] = [g for g in range(a.size) if a.src(0, g) == g]
                else:
                    cand_index[key] = [g for g in range(a.size) if a.src(k, g) == g
                                       and a.src(k - 1, g) == s_val and a.tgt(k - 1, g) == t_val]
            return cand_index[key]

        order_by_dim = {}
        for x in der.order:
            order_by_dim.setdefault(cat.dim(x), []).append(x)

        def fill(values, k):
            for x in order_by_dim.get(k, ()):
                r = der.rule[x]
                if r[0] == "comp":
                    v = a.comp(r[1], values[r[2]], values[r[3]])
                    if v is None:
                        return False
                    values[x] = v
            return True

        def rec(k, values):
            if k > n:
                yield tuple(values[x] for x in range(cat.size))
                return
            atoms = by_dim.get(k, [])
            lists = []
            for x in atoms:
                cid = o.atom_of[x]
                if k == 0:
                    lists.append(candidates(0, None, None))
                else:
                    lists.append(candidates(k, values[cat.src(k - 1, cid)], values[cat.tgt(k - 1, cid)]))
            for combo in itertools.product(*lists):
                vals = dict(values)
                for x, v in zip(atoms, combo):
                    vals[o.atom_of[x]] = v
                if fill(vals, k):
                    yield from rec(k + 1, vals)

        yield from rec(0, {})

    def face(self, n: int, i: int, x: tuple) -> tuple:
        f = induced_map(face_map(n, i), n)
        return tuple(x[f.mapping[c]] for c in range(f.source.size))

    def degeneracy(self, n: int, j: int, x: tuple) -> tuple:
        f = induced_map(degeneracy_map(n, j), n)
        return tuple(x[f.mapping[c]] for c in range(f.source.size))

    def pullback(self, alpha: Sequence[int], n: int, x: tuple) -> tuple:
        """α^* x for α: [m] -> [n]."""
        f = induced_map(alpha, n)
        return tuple(x[f.mapping[c]] for c in range(f.source.size))

    def is_thin(self, n: int, x: tuple) -> bool:
        if n == 0:
            return True
        v = x[oriental(n).top_cell]
        return self.a.src(n - 1, v) == v


def nerve_enumerate(a: FiniteOmegaCat, n: int) -> list:
    return Nerve(a).simplices(n)


@dataclass(frozen=True)
class NerveComparison:
    counts: dict  # m -> (enumerated, via Γ)
    problems: tuple

    @property
    def ok(self) -> bool:
        return not self.problems


def nerve_dk_comparison(c: ChainComplex, n: int) -> NerveComparison:
    """Match the nerve of P(c) by oriental enumeration against Γ(c) up to level n.

    A normalized k-simplex is determined by the degree-k part of the image of
    the top cell; a general element of Γ_m, a family (c_σ) over surjections
    σ: [m] -> [k], goes to the cellwise sum of the pullbacks σ^* of those
    normalized simplices."""
    a = p_of(c)
    tab = from_pic(a)
    nerve = Nerve(tab)
    gm = Gamma(c, n)
    g = gm.simplicial
    zero = tab.index[a.zero()]
    problems, counts = [], {}

    def add(x, y):
        return tuple(tab.index[a.add(tab.labels[u], tab.labels[v])] for u, v in zip(x, y))

    theta_inv = {}
    for k in range(0, min(n, c.max_degree) + 1):
        table = {}
        for x in nerve.simplices(k):
            if k and any(set(nerve.face(k, i, x)) != {zero} for i in range(k)):
                continue
            top = x[oriental(k).top_cell]
            key = c.group(k).canonical(graded_components(a, tab.labels[top])[k])
            if key in table:
                problems.append(f"two normalized {k}-simplices share top component {key}")
            table[key] = x
        if len(table) != c.group(k).order:
            problems.append(f"{len(table)} normalized {k}-simplices for a group of order {c.group(k).order}")
        theta_inv[k] = table

    phi = {}
    for m in range(n + 1):
        size = oriental(m).cat.size
        offs = gm.offsets(m)
        phi[m] = {}
        for v in g.levels[m].iter_coords():
            acc = (zero,) * size
            for (k, sigma) in gm.summands[m]:
                key = c.group(k).canonical(v[offs[sigma]])
                acc = add(acc, nerve.pullback(sigma, k, theta_inv[k][key]))
            phi[m][v] = acc
        enumerated = nerve.simplices(m)
        counts[m] = (len(enumerated), len(phi[m]))
        if set(phi[m].values()) != set(enumerated) or len(set(phi[m].values())) != len(phi[m]):
            problems.append(f"level {m}: Γ does not map bijectively onto the nerve")
        top_id = tuple(range(m + 1))
        for v, x in (phi[m].items() if m else ()):
            thin = c.group(m).is_zero(v[offs[top_id]]) if top_id in offs else True
            if nerve.is_thin(m, x) != thin:
                problems.append(f"level {m}: thin marking disagrees at {v}")
                break

    def lookup(m, v):
        return phi[m][g.levels[m].canonical(tuple(v))]

    for m in range(1, n + 1):
        for i in range(m + 1):
            if any(lookup(m - 1, g.d(m, i).raw(v)) != nerve.face(m, i, x) for v, x in phi[m].items()):
                problems.append(f"face {i} at level {m} is not preserved")
    for m in range(n):
        for j in range(m + 1):
            if any(lookup(m + 1, g.s(m, j).raw(v)) != nerve.degeneracy(m, j, x) for v, x in phi[m].items()):
                problems.append(f"degeneracy {j} at level {m} is not preserved")
    return NerveComparison(counts, tuple(problems))
