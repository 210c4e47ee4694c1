"""Parity complexes, their omega-categories of cells, and the orientals."""
from __future__ import annotations

import itertools
import os
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Sequence

from .errors import NotComposable, PreconditionViolated, TooLarge
from .omega import FiniteOmegaCat, OmegaFunctor, omega_cat_from_functions

DEFAULT_NMAX = 3


def nmax_limit() -> int:
    return int(os.environ.get("OMEGA_DK_NMAX", DEFAULT_NMAX))


@dataclass(frozen=True, eq=False)
class ParityComplex:
    elements: tuple  # labels in a fixed order
    dim: dict
    minus: dict  # label -> frozenset of faces
    plus: dict

    @cached_property
    def order(self) -> dict:
        return {x: k for k, x in enumerate(self.elements)}

    def faces(self, x, sign: str) -> frozenset:
        return self.minus[x] if sign == "-" else self.plus[x]

    def set_minus(self, S) -> frozenset:
        return frozenset().union(*(self.minus[x] for x in S)) if S else frozenset()

    def set_plus(self, S) -> frozenset:
        return frozenset().union(*(self.plus[x] for x in S)) if S else frozenset()

    def mp(self, S) -> frozenset:
        """S^∓ = S^- minus S^+."""
        return self.set_minus(S) - self.set_plus(S)

    def pm(self, S) -> frozenset:
        """S^± = S^+ minus S^-."""
        return self.set_plus(S) - self.set_minus(S)

    def perp(self, x, y) -> bool:
        return not (self.minus[x] & self.minus[y]) and not (self.plus[x] & self.plus[y])

    def well_formed(self, S) -> bool:
        S = list(S)
        if sum(1 for x in S if self.dim[x] == 0) > 1:
            return False
        return all(self.perp(x, y) for x, y in itertools.combinations(S, 2))

    def sorted(self, S) -> tuple:
        return tuple(sorted(S, key=self.order.__getitem__))


def parity_problems(c: ParityComplex) -> list:
    out = []
    for x in c.elements:
        n = c.dim[x]
        m, p = c.minus[x], c.plus[x]
        if n == 0 and (m or p):
            out.append(f"{x}: a 0-element has faces")
        if n > 0:
            if not m or not p:
                out.append(f"{x}: empty face set")
            if m & p:
                out.append(f"{x}: a face is both negative and positive")
            if any(c.dim[y] != n - 1 for y in m | p):
                out.append(f"{x}: face of the wrong dimension")
            if n > 1 and c.mp(m) | c.pm(p) != c.pm(m) | c.mp(p):
                out.append(f"{x}: x^-∓ ∪ x^+± differs from x^-± ∪ x^+∓")
    return out


def simplex_parity(n: int) -> ParityComplex:
    """Nonempty subsets of [n]; omitting vertex i gives a + face for even i, a - face for odd i."""
    els = [v for r in range(1, n + 2) for v in itertools.combinations(range(n + 1), r)]
    dim, minus, plus = {}, {}, {}
    for v in els:
        dim[v] = len(v) - 1
        mi, pl = set(), set()
        if len(v) > 1:
            for i in range(len(v)):
                f = v[:i] + v[i + 1:]
                (pl if i % 2 == 0 else mi).add(f)
        minus[v], plus[v] = frozenset(mi), frozenset(pl)
    return ParityComplex(tuple(els), dim, minus, plus)


def product_parity(c: ParityComplex, d: ParityComplex) -> ParityComplex:
    """(x, y)^ξ = x^ξ × {y} ∪ {x} × y^ξ', with ξ' flipped exactly when dim x is odd."""
    els = sorted(((x, y) for x in c.elements for y in d.elements),
                 key=lambda p: (c.dim[p[0]] + d.dim[p[1]], c.order[p[0]], d.order[p[1]]))
    dim, minus, plus = {}, {}, {}
    for (x, y) in els:
        dim[(x, y)] = c.dim[x] + d.dim[y]
        flip = c.dim[x] % 2 == 1
        for sign, table in (("-", minus), ("+", plus)):
            other = ("+" if sign == "-" else "-") if flip else sign
            table[(x, y)] = frozenset({(f, y) for f in c.faces(x, sign)} | {(x, g) for g in d.faces(y, other)})
    return ParityComplex(tuple(els), dim, minus, plus)


# ---------------------------------------------------------------- cells


@dataclass(frozen=True)
class CellPair:
    M: frozenset
    P: frozenset


def _upto(c, S, n):
    return frozenset(x for x in S if c.dim[x] <= n)


def _exactly(c, S, n):
    return frozenset(x for x in S if c.dim[x] == n)


def cell_source(c: ParityComplex, n: int, x: CellPair) -> CellPair:
    return CellPair(_upto(c, x.M, n), _exactly(c, x.M, n) | _upto(c, x.P, n - 1))


def cell_target(c: ParityComplex, n: int, x: CellPair) -> CellPair:
    return CellPair(_upto(c, x.M, n - 1) | _exactly(c, x.P, n), _upto(c, x.P, n))


def cell_compose(c: ParityComplex, n: int, x: CellPair, y: CellPair) -> CellPair:
    """x *_n y with x = (N, Q), y = (M, P): (M ∪ (N - N_n), Q ∪ (P - P_n))."""
    if cell_source(c, n, x) != cell_target(c, n, y):
        raise NotComposable("cells are not composable")
    return CellPair(y.M | (x.M - _exactly(c, x.M, n)), x.P | (y.P - _exactly(c, y.P, n)))


def cell_dim(c: ParityComplex, x: CellPair) -> int:
    return max(c.dim[e] for e in x.M | x.P)


def is_cell(c: ParityComplex, x: CellPair) -> bool:
    M, P = x.M, x.P
    if not M or not P or not c.well_formed(M) or not c.well_formed(P):
        return False
    return (P == (M | c.set_plus(M)) - c.set_minus(M) == (M | c.set_plus(P)) - c.set_minus(P)
            and M == (P | c.set_minus(M)) - c.set_plus(M) == (P | c.set_minus(P)) - c.set_plus(P))


def well_formed_subsets(c: ParityComplex):
    """Nonempty well-formed subsets, by backtracking in element order."""
    els = list(c.elements)

    def rec(k, chosen, zeros):
        if k == len(els):
            if chosen:
                yield frozenset(chosen)
            return
        yield from rec(k + 1, chosen, zeros)
        x = els[k]
        if c.dim[x] == 0 and zeros:
            return
        if all(c.perp(x, y) for y in chosen):
            chosen.append(x)
            yield from rec(k + 1, chosen, zeros + (c.dim[x] == 0))
            chosen.pop()

    yield from rec(0, [], 0)


def enumerate_cells(c: ParityComplex) -> list:
    out = []
    for M in well_formed_subsets(c):
        P = (M | c.set_plus(M)) - c.set_minus(M)
        x = CellPair(M, frozenset(P))
        if is_cell(c, x):
            out.append(x)
    return sorted(out, key=lambda x: cell_key(c, x))


def cell_key(c: ParityComplex, x: CellPair):
    return (cell_dim(c, x), tuple(sorted(c.order[e] for e in x.M)), tuple(sorted(c.order[e] for e in x.P)))


def _mu_pi(c: ParityComplex, x):
    n = c.dim[x]
    mu, pi = {n: frozenset([x])}, {n: frozenset([x])}
    for m in range(n - 1, -1, -1):
        mu[m] = c.mp(mu[m + 1])
        pi[m] = c.pm(pi[m + 1])
    return mu, pi


def atom(c: ParityComplex, x) -> CellPair:
    """<x> = (μ(x), π(x))."""
    mu, pi = _mu_pi(c, x)
    return CellPair(frozenset().union(*mu.values()), frozenset().union(*pi.values()))


def cells_category(c: ParityComplex, cells: Sequence[CellPair]) -> FiniteOmegaCat:
    top = max((cell_dim(c, x) for x in cells), default=0)
    return omega_cat_from_functions(cells, top,
                                    lambda i, x: cell_source(c, i, x),
                                    lambda i, x: cell_target(c, i, x),
                                    lambda i, x, y: cell_compose(c, i, x, y))


# ---------------------------------------------------------------- orientals


@dataclass(frozen=True, eq=False)
class Oriental:
    n: int
    parity: ParityComplex
    cat: FiniteOmegaCat

    @cached_property
    def atoms(self) -> tuple:
        """Ids of the atoms, ordered by dimension then element."""
        return tuple(self.cat.index[atom(self.parity, x)] for x in self.parity.elements)

    @cached_property
    def atom_of(self) -> dict:
        return {x: self.cat.index[atom(self.parity, x)] for x in self.parity.elements}

    @property
    def top_cell(self) -> int:
        return self.atom_of[tuple(range(self.n + 1))]

    @cached_property
    def derivations(self) -> "Derivations":
        return derive_from_atoms(self)


def check_nmax(n: int):
    limit = nmax_limit()
    if n > limit:
        raise TooLarge(f"oriental({n}) exceeds the limit n <= {limit} (set OMEGA_DK_NMAX to raise it)")


@lru_cache(maxsize=None)
def _oriental(n: int) -> Oriental:
    c = simplex_parity(n)
    return Oriental(n, c, cells_category(c, enumerate_cells(c)))


def oriental(n: int) -> Oriental:
    if n < 0:
        raise PreconditionViolated("n must be nonnegative")
    check_nmax(n)
    return _oriental(n)


@lru_cache(maxsize=None)
def _induced(alpha: tuple, m: int, n: int) -> tuple:
    src, tgt = _oriental(m), _oriental(n)

    def f(S):
        out = set()
        for v in S:
            img = tuple(alpha[i] for i in v)
            if len(set(img)) == len(img):
                out.add(img)
        return frozenset(out)

    mapping = []
    for x in src.cat.labels:
        y = CellPair(f(x.M), f(x.P))
        if y not in tgt.cat.index:
            raise PreconditionViolated(f"image of a cell under {alpha} is not a cell")
        mapping.append(tgt.cat.index[y])
    return tuple(mapping)


def induced_map(alpha: Sequence[int], n: int) -> OmegaFunctor:
    """O(α): O(Δ^m) -> O(Δ^n) for a monotone α: [m] -> [n]."""
    alpha = tuple(alpha)
    m = len(alpha) - 1
    if any(alpha[i] > alpha[i + 1] for i in range(m)) or (alpha and (alpha[0] < 0 or alpha[-1] > n)):
        raise PreconditionViolated(f"{alpha} is not a monotone map into [{n}]")
    check_nmax(max(m, n))
    return OmegaFunctor(_oriental(m).cat, _oriental(n).cat, _induced(alpha, m, n))


def monotone_maps(m: int, n: int) -> list:
    return [tuple(a) for a in itertools.combinations_with_replacement(range(n + 1), m + 1)]


def face_map(n: int, i: int) -> tuple:
    """δ_i: [n-1] -> [n] skipping i."""
    return tuple(k if k < i else k + 1 for k in range(n))


def degeneracy_map(n: int, j: int) -> tuple:
    """σ_j: [n+1] -> [n] hitting j twice."""
    return tuple(k if k <= j else k - 1 for k in range(n + 2))


# ---------------------------------------------------------------- generation by atoms


@dataclass(frozen=True, eq=False)
class Derivations:
    order: tuple  # cell ids, each derivable from earlier ones
    rule: dict  # id -> ("atom", element) | ("comp", i, x, y)
    complete: bool


def derive_from_atoms(o: Oriental) -> Derivations:
    """Close the atoms under composition one dimension at a time, recording
    how each cell arises.  complete says every cell was reached, and that
    cells of dimension at most k only need atoms of dimension at most k."""
    cat, c = o.cat, o.parity
    rule, order = {}, []
    reached = set()
    ok = True
    for k in range(o.n + 1):
        frontier = []
        for x in c.elements:
            if c.dim[x] == k:
                a = o.atom_of[x]
                if a not in reached:
                    rule[a] = ("atom", x)
                    order.append(a)
                    reached.add(a)
                    frontier.append(a)
        by_s = defaultdict(set)
        by_t = defaultdict(set)
        for y in reached:
            for i in range(k):
                by_s[(i, cat.src(i, y))].add(y)
                by_t[(i, cat.tgt(i, y))].add(y)
        while frontier:
            new = []
            for e in frontier:
                for i in range(k):
                    cands = [(e, y) for y in sorted(by_t[(i, cat.src(i, e))])] + \
                            [(y, e) for y in sorted(by_s[(i, cat.tgt(i, e))])]
                    for (x, y) in cands:
                        z = cat.comp(i, x, y)
                        if z is not None and z not in reached:
                            rule[z] = ("comp", i, x, y)
                            order.append(z)
                            reached.add(z)
                            new.append(z)
                            for j in range(k):
                                by_s[(j, cat.src(j, z))].add(z)
                                by_t[(j, cat.tgt(j, z))].add(z)
            frontier = new
        want = {x for x in range(cat.size) if cat.dim(x) <= k}
        if reached != want:
            ok = False
    return Derivations(tuple(order), rule, ok)


def evaluate(o: Oriental, atom_values: dict, combine) -> dict:
    """Extend values on atoms to every cell along the recorded derivations."""
    der = o.derivations
    out = {}
    for x in der.order:
        r = der.rule[x]
        if r[0] == "atom":
            out[x] = atom_values[r[1]]
        else:
            out[x] = combine(r[1], out[r[2]], out[r[3]])
    return out
