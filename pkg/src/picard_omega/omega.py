"""Finite strict omega-categories stored as lookup tables.

Elements are ids 0..size-1 with arbitrary hashable labels.  Levels run from
min_level to the stabilization level N; above N every source, target and
composite is the identity, so nothing is stored there.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Sequence

from .errors import PreconditionViolated


@dataclass(frozen=True, eq=False)
class FiniteOmegaCat:
    labels: tuple
    stabilization: int
    s: tuple  # s[i - min_level][x]
    t: tuple
    compose: tuple  # compose[i - min_level][(x, y)] for s_i x == t_i y
    min_level: int = 0

    def __post_init__(self):
        n = len(self.levels)
        if len(self.s) != n or len(self.t) != n or len(self.compose) != n:
            raise PreconditionViolated("need one s, t and composition table per level")

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def levels(self) -> range:
        return range(self.min_level, self.stabilization + 1)

    @cached_property
    def index(self) -> dict:
        return {lab: i for i, lab in enumerate(self.labels)}

    def src(self, i: int, x: int) -> int:
        if i > self.stabilization:
            return x
        return self.s[i - self.min_level][x]

    def tgt(self, i: int, x: int) -> int:
        if i > self.stabilization:
            return x
        return self.t[i - self.min_level][x]

    def comp(self, i: int, x: int, y: int):
        """x *_i y, or None when s_i x != t_i y."""
        if i > self.stabilization:
            return x if x == y else None
        return self.compose[i - self.min_level].get((x, y))

    def cells(self, i: int) -> list:
        return [x for x in range(self.size) if self.src(i, x) == x]

    def dim(self, x: int) -> int:
        for i in self.levels:
            if self.src(i, x) == x:
                return i
        return self.stabilization

    def composable_pairs(self, i: int) -> list:
        if i > self.stabilization:
            return [(x, x, x) for x in range(self.size)]
        return [(x, y, z) for (x, y), z in self.compose[i - self.min_level].items()]

    @cached_property
    def _cache(self) -> dict:
        return {}

    def iso_pairs(self, i: int) -> frozenset:
        """Pairs (a, b) of i-cells joined by an invertible (i+1)-cell."""
        cache = self._cache
        if ("iso", i) in cache:
            return cache[("iso", i)]
        out = set()
        if i >= self.stabilization:
            out = {(x, x) for x in range(self.size)}
        else:
            top = self.cells(i + 1)
            by_ends = defaultdict(list)
            for u in top:
                by_ends[(self.src(i, u), self.tgt(i, u))].append(u)
            for u in top:
                a, b = self.src(i, u), self.tgt(i, u)
                if (a, b) in out:
                    continue
                for v in by_ends.get((b, a), ()):
                    if self.comp(i, u, v) == b and self.comp(i, v, u) == a:
                        out.add((a, b))
                        out.add((b, a))
                        break
        cache[("iso", i)] = frozenset(out)
        return cache[("iso", i)]


def omega_cat_from_functions(labels: Sequence, stabilization: int,
                             s: Callable, t: Callable, compose: Callable,
                             min_level: int = 0) -> FiniteOmegaCat:
    """Tabulate an omega-category given by functions on labels.

    compose(i, x, y) is only called on pairs with s(i, x) == t(i, y)."""
    labels = tuple(labels)
    idx = {lab: k for k, lab in enumerate(labels)}
    levels = range(min_level, stabilization + 1)
    s_tab, t_tab, c_tab = [], [], []
    for i in levels:
        si = tuple(idx[s(i, lab)] for lab in labels)
        ti = tuple(idx[t(i, lab)] for lab in labels)
        by_t = defaultdict(list)
        for y, ty in enumerate(ti):
            by_t[ty].append(y)
        table = {}
        for x, sx in enumerate(si):
            for y in by_t.get(sx, ()):
                table[(x, y)] = idx[compose(i, labels[x], labels[y])]
        s_tab.append(si)
        t_tab.append(ti)
        c_tab.append(table)
    return FiniteOmegaCat(labels, stabilization, tuple(s_tab), tuple(t_tab), tuple(c_tab), min_level)


def terminal() -> FiniteOmegaCat:
    return FiniteOmegaCat(("*",), 0, ((0,),), ((0,),), ({(0, 0): 0},))


# ---------------------------------------------------------------- axioms


@dataclass(frozen=True)
class Violation:
    axiom: str
    levels: tuple
    witness: tuple  # labels

    def __str__(self):
        return f"axiom {self.axiom} at levels {self.levels}: witness {self.witness}"


def validate_axioms(a: FiniteOmegaCat, limit: int = 5) -> list:
    """Check every strict omega-category axiom exhaustively.

    At most `limit` witnesses are reported per axiom."""
    out = []
    counts = defaultdict(int)
    lab = a.labels

    def bad(axiom, levels, *els):
        if counts[axiom] < limit:
            out.append(Violation(axiom, tuple(levels), tuple(lab[e] if isinstance(e, int) and 0 <= e < a.size
                                                                else e for e in els)))
        counts[axiom] += 1

    L = list(a.levels)
    rng = range(a.size)
    # table shape
    for i in L:
        for tab, name in ((a.s, "s"), (a.t, "t")):
            for x in rng:
                v = tab[i - a.min_level][x]
                if not (isinstance(v, int) and 0 <= v < a.size):
                    bad("0", (i,), x, f"{name}-value out of range")
        table = a.compose[i - a.min_level]
        for (x, y), z in table.items():
            if not (0 <= z < a.size):
                bad("0", (i,), x, y, "composite out of range")
            if a.src(i, x) != a.tgt(i, y):
                bad("0", (i,), x, y, "composite defined on a non-composable pair")
        by_t = defaultdict(list)
        for y in rng:
            by_t[a.tgt(i, y)].append(y)
        for x in rng:
            for y in by_t[a.src(i, x)]:
                if (x, y) not in table:
                    bad("0", (i,), x, y, "composite missing")
    if out:
        return out

    for i in L:
        s, t = (lambda x, i=i: a.src(i, x)), (lambda x, i=i: a.tgt(i, x))
        for x in rng:
            for rho in (s, t):
                for sig in (s, t):
                    if rho(sig(x)) != sig(x):
                        bad("1a", (i,), x)
            if a.comp(i, x, s(x)) != x or a.comp(i, t(x), x) != x:
                bad("1b", (i,), x)
        pairs = a.composable_pairs(i)
        by_t = defaultdict(list)
        for (x, y, xy) in pairs:
            by_t[t(x)].append((x, xy))
            if s(xy) != s(y) or t(xy) != t(x):
                bad("1d", (i,), x, y)
        # associativity: (x y) z = x (y z)
        for (x, y, xy) in pairs:
            for z in _with_target(a, i, s(y)):
                yz = a.comp(i, y, z)
                lhs = a.comp(i, xy, z)
                rhs = a.comp(i, x, yz) if yz is not None else None
                if lhs is None or rhs is None or lhs != rhs:
                    bad("1c", (i,), x, y, z)

    for i in L:
        for j in L:
            if not i < j:
                continue
            for x in rng:
                for rj in (a.src, a.tgt):
                    for si in (a.src, a.tgt):
                        if rj(j, si(i, x)) != si(i, x):
                            bad("2a", (i, j), x)
                        if si(i, rj(j, x)) != si(i, x):
                            bad("2b", (i, j), x)
            for (x, y, xy) in a.composable_pairs(i):
                for rj in (a.src, a.tgt):
                    rhs = a.comp(i, rj(j, x), rj(j, y))
                    if rhs is None or rhs != rj(j, xy):
                        bad("2c", (i, j), x, y)
            _check_interchange(a, i, j, bad)

    N = a.stabilization
    for x in rng:
        if a.src(N, x) != x or a.tgt(N, x) != x:
            bad("3", (N,), x)
    return out


def _with_target(a, i, v):
    key = ("by_t", i)
    if key not in a._cache:
        table = defaultdict(list)
        for z in range(a.size):
            table[a.tgt(i, z)].append(z)
        a._cache[key] = table
    return a._cache[key].get(v, ())


def _check_interchange(a, i, j, bad):
    """(a *_j b) *_i (c *_j d) = (a *_i c) *_j (b *_i d), whenever the left side is defined."""
    pj = a.composable_pairs(j)
    by_src, by_tgt = defaultdict(list), defaultdict(list)
    for rec in pj:
        by_src[a.src(i, rec[2])].append(rec)
        by_tgt[a.tgt(i, rec[2])].append(rec)
    for key, lefts in by_src.items():
        for (x, y, xy) in lefts:
            for (u, v, uv) in by_tgt.get(key, ()):
                lhs = a.comp(i, xy, uv)
                xu, yv = a.comp(i, x, u), a.comp(i, y, v)
                rhs = a.comp(j, xu, yv) if xu is not None and yv is not None else None
                if lhs is None or rhs is None or lhs != rhs:
                    bad("2d", (i, j), x, y, u, v)


def product(a: FiniteOmegaCat, b: FiniteOmegaCat) -> FiniteOmegaCat:
    if a.min_level != b.min_level:
        raise PreconditionViolated("product needs equal lowest levels")
    N = max(a.stabilization, b.stabilization)
    nb = b.size
    labels = tuple((x, y) for x in a.labels for y in b.labels)
    s_tab, t_tab, c_tab = [], [], []
    for i in range(a.min_level, N + 1):
        s_tab.append(tuple(a.src(i, p // nb) * nb + b.src(i, p % nb) for p in range(len(labels))))
        t_tab.append(tuple(a.tgt(i, p // nb) * nb + b.tgt(i, p % nb) for p in range(len(labels))))
        table = {}
        for (x1, y1, z1) in a.composable_pairs(i):
            for (x2, y2, z2) in b.composable_pairs(i):
                table[(x1 * nb + x2, y1 * nb + y2)] = z1 * nb + z2
        c_tab.append(table)
    return FiniteOmegaCat(labels, N, tuple(s_tab), tuple(t_tab), tuple(c_tab), a.min_level)


def is_groupoid(a: FiniteOmegaCat) -> bool:
    """Every n-cell is invertible for every *_j with j < n."""
    for x in range(a.size):
        n = a.dim(x)
        for j in range(a.min_level, n):
            sx, tx = a.src(j, x), a.tgt(j, x)
            if not any(a.comp(j, x, y) == tx and a.comp(j, y, x) == sx for y in _with_target(a, j, sx)):
                return False
    return True


# ---------------------------------------------------------------- functors


@dataclass(frozen=True, eq=False)
class OmegaFunctor:
    source: FiniteOmegaCat
    target: FiniteOmegaCat
    mapping: tuple  # ids

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def compose(self, other: "OmegaFunctor") -> "OmegaFunctor":
        """self after other."""
        return OmegaFunctor(other.source, self.target, tuple(self.mapping[v] for v in other.mapping))


def functor_problems(f: OmegaFunctor, limit: int = 5) -> list:
    a, b, F = f.source, f.target, f.mapping
    out = []
    if len(F) != a.size or any(not (0 <= v < b.size) for v in F):
        return ["mapping has the wrong length or values out of range"]
    top = max(a.stabilization, b.stabilization) + 1
    for i in range(min(a.min_level, b.min_level), top + 1):
        for x in range(a.size):
            if F[a.src(i, x)] != b.src(i, F[x]) or F[a.tgt(i, x)] != b.tgt(i, F[x]):
                out.append(f"level {i}: boundary of {a.labels[x]} not preserved")
                if len(out) >= limit:
                    return out
        for (x, y, z) in a.composable_pairs(i):
            if b.comp(i, F[x], F[y]) != F[z]:
                out.append(f"level {i}: composite of {a.labels[x]} and {a.labels[y]} not preserved")
                if len(out) >= limit:
                    return out
    return out


def identity_functor(a: FiniteOmegaCat) -> OmegaFunctor:
    return OmegaFunctor(a, a, tuple(range(a.size)))


# ---------------------------------------------------------------- equivalences


def equivalence_failures(f: OmegaFunctor, condition_c: bool = True) -> list:
    """Reasons why f fails to be an equivalence; empty when it is one.

    (a) essential surjectivity on objects, (b) local essential surjectivity on
    parallel pairs at every level, (c) reflection of isomorphism."""
    a, b, F = f.source, f.target, f.mapping
    if a.min_level != 0 or b.min_level != 0:
        raise PreconditionViolated("equivalences are checked for omega-categories starting at level 0")
    out = []
    iso_b0 = b.iso_pairs(0)
    images = {F[x] for x in a.cells(0)}
    for y in b.cells(0):
        if not any((v, y) in iso_b0 for v in images):
            out.append(("a", 0, b.labels[y]))
            break
    top = max(a.stabilization, b.stabilization) + 1
    for i in range(0, top + 1):
        cells_a = a.cells(i)
        groups = defaultdict(list)
        for x in cells_a:
            key = (a.src(i - 1, x), a.tgt(i - 1, x)) if i > 0 else None
            groups[key].append(x)
        b_up = b.cells(i + 1)
        b_by_ends = defaultdict(list)
        for psi in b_up:
            b_by_ends[(b.src(i, psi), b.tgt(i, psi))].append(psi)
        a_up = a.cells(i + 1)
        a_by_ends = defaultdict(list)
        for phi in a_up:
            a_by_ends[(a.src(i, phi), a.tgt(i, phi))].append(phi)
        iso_b1 = b.iso_pairs(i + 1)
        failed = False
        for members in groups.values():
            for x in members:
                for y in members:
                    psis = b_by_ends.get((F[x], F[y]), ())
                    if not psis:
                        continue
                    lifts = {F[phi] for phi in a_by_ends.get((x, y), ())}
                    for psi in psis:
                        if not any((v, psi) in iso_b1 for v in lifts):
                            out.append(("b", i, a.labels[x], a.labels[y], b.labels[psi]))
                            failed = True
                            break
                    if failed:
                        break
                if failed:
                    break
            if failed:
                break
        if condition_c:
            # only parallel pairs can be isomorphic, so (c) is read on those
            iso_a, iso_b = a.iso_pairs(i), b.iso_pairs(i)
            hit = next(((x, y) for members in groups.values() for x in members for y in members
                        if (F[x], F[y]) in iso_b and (x, y) not in iso_a), None)
            if hit:
                out.append(("c", i, a.labels[hit[0]], a.labels[hit[1]]))
    return out


def equivalence_check(f: OmegaFunctor, condition_c: bool = True) -> bool:
    return not equivalence_failures(f, condition_c)


# ---------------------------------------------------------------- hom omega-categories


def hom_elements(a: FiniteOmegaCat, k: int, x: int, y: int) -> list:
    """{z : s_{k-1} z = x, t_{k-1} z = y}."""
    return [z for z in range(a.size) if a.src(k - 1, z) == x and a.tgt(k - 1, z) == y]


def hom_elements_recursive(a: FiniteOmegaCat, k: int, x: int, y: int) -> list:
    """Same set, computed as a hom of a hom down to level one."""
    if k == 1:
        return hom_elements(a, 1, x, y)
    outer = hom_elements_recursive(a, k - 1, a.src(k - 2, x), a.tgt(k - 2, x))
    return [z for z in outer if a.src(k - 1, z) == x and a.tgt(k - 1, z) == y]


def hom_category(a: FiniteOmegaCat, k: int, x: int, y: int) -> FiniteOmegaCat:
    """A[k]^{x,y} with the shifted structure s[k]_j = s_{k+j}."""
    if k < 1:
        raise PreconditionViolated("k must be at least 1")
    els = hom_elements(a, k, x, y)
    pos = {z: n for n, z in enumerate(els)}
    N = max(a.stabilization - k, 0)
    s_tab, t_tab, c_tab = [], [], []
    for j in range(0, N + 1):
        lvl = k + j
        try:
            s_tab.append(tuple(pos[a.src(lvl, z)] for z in els))
            t_tab.append(tuple(pos[a.tgt(lvl, z)] for z in els))
        except KeyError:
            raise PreconditionViolated("hom set is not closed under the shifted boundaries") from None
        table = {}
        for z in els:
            for w in els:
                c = a.comp(lvl, z, w)
                if c is not None:
                    table[(pos[z], pos[w])] = pos[c]
        c_tab.append(table)
    return FiniteOmegaCat(tuple(a.labels[z] for z in els), N, tuple(s_tab), tuple(t_tab), tuple(c_tab))
