"""Chain complexes of finitely generated abelian groups."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .core import (FgAbGroup, GroupHom, IntMatrix, Subquotient, block_diag, direct_sum,
                   hom_from_blocks, induced_map, subquotient)
from .errors import PreconditionViolated

TRIVIAL = FgAbGroup.trivial()


@dataclass(frozen=True)
class ChainComplex:
    """groups[k] sits in degree min_degree + k; differentials[k] maps
    degree min_degree + k + 1 down to degree min_degree + k."""

    min_degree: int
    groups: tuple
    differentials: tuple

    def __post_init__(self):
        object.__setattr__(self, "groups", tuple(self.groups))
        object.__setattr__(self, "differentials", tuple(self.differentials))
        if not self.groups:
            raise PreconditionViolated("a complex needs at least one group")
        if len(self.differentials) != len(self.groups) - 1:
            raise PreconditionViolated("need exactly one differential between consecutive groups")
        for k, d in enumerate(self.differentials):
            if d.source != self.groups[k + 1] or d.target != self.groups[k]:
                raise PreconditionViolated(f"differential out of degree {self.min_degree + k + 1} has wrong ends")

    @property
    def max_degree(self) -> int:
        return self.min_degree + len(self.groups) - 1

    @property
    def degrees(self) -> range:
        return range(self.min_degree, self.max_degree + 1)

    def group(self, n: int) -> FgAbGroup:
        if self.min_degree <= n <= self.max_degree:
            return self.groups[n - self.min_degree]
        return TRIVIAL

    def d(self, n: int) -> GroupHom:
        """Differential out of degree n."""
        if self.min_degree < n <= self.max_degree:
            return self.differentials[n - self.min_degree - 1]
        return GroupHom.zero(self.group(n), self.group(n - 1))

    @property
    def is_finite(self) -> bool:
        return all(g.is_finite for g in self.groups)

    def with_range(self, lo: int, hi: int) -> "ChainComplex":
        """Same complex padded (or cut, if only zero groups are dropped) to lo..hi."""
        return ChainComplex(lo, [self.group(n) for n in range(lo, hi + 1)],
                            [self.d(n) for n in range(lo + 1, hi + 1)])

    @classmethod
    def from_maps(cls, min_degree: int, groups: Sequence[FgAbGroup], matrices: Sequence[IntMatrix],
                  check: bool = True) -> "ChainComplex":
        ds = [GroupHom(groups[k + 1], groups[k], m, check=check) for k, m in enumerate(matrices)]
        return cls(min_degree, tuple(groups), tuple(ds))

    @classmethod
    def concentrated(cls, g: FgAbGroup, degree: int = 0) -> "ChainComplex":
        """g alone in one degree; complexes with degree >= 0 start at 0."""
        if degree < 0:
            return cls(degree, [g], [])
        groups = [TRIVIAL] * degree + [g]
        return cls(0, groups, [GroupHom.zero(groups[k + 1], groups[k]) for k in range(degree)])


def zero_complex() -> ChainComplex:
    return ChainComplex(0, [TRIVIAL], [])


def same_complex(a: ChainComplex, b: ChainComplex) -> bool:
    """Identical presentations, with differentials equal as maps."""
    if a.min_degree != b.min_degree or a.max_degree != b.max_degree:
        return False
    if any(g.relations != h.relations for g, h in zip(a.groups, b.groups)):
        return False
    return all(f.equals(g) for f, g in zip(a.differentials, b.differentials))


def validate_complex(c: ChainComplex) -> list:
    problems = []
    for n in range(c.min_degree + 1, c.max_degree + 1):
        if not c.d(n).is_well_defined():
            problems.append(f"differential out of degree {n} does not respect relations")
    for n in range(c.min_degree + 2, c.max_degree + 1):
        if not c.d(n - 1).compose(c.d(n)).is_zero():
            problems.append(f"d∘d is nonzero out of degree {n}")
    return problems


def homology_subquotient(c: ChainComplex, n: int) -> Subquotient:
    return subquotient(c.d(n), c.d(n + 1))


def homology(c: ChainComplex, n: int) -> FgAbGroup:
    return homology_subquotient(c, n).group


# ---------------------------------------------------------------- maps


@dataclass(frozen=True)
class ChainMap:
    source: ChainComplex
    target: ChainComplex
    components: dict = field(hash=False)  # degree -> GroupHom

    def component(self, n: int) -> GroupHom:
        f = self.components.get(n)
        return f if f is not None else GroupHom.zero(self.source.group(n), self.target.group(n))

    @property
    def degrees(self) -> range:
        lo = min(self.source.min_degree, self.target.min_degree)
        hi = max(self.source.max_degree, self.target.max_degree)
        return range(lo, hi + 1)

    def compose(self, other: "ChainMap") -> "ChainMap":
        """self after other."""
        return ChainMap(other.source, self.target,
                        {n: self.component(n).compose(other.component(n)) for n in other.degrees})

    def __add__(self, other):
        return ChainMap(self.source, self.target, {n: self.component(n) + other.component(n) for n in self.degrees})

    def __sub__(self, other):
        return ChainMap(self.source, self.target, {n: self.component(n) - other.component(n) for n in self.degrees})

    def __neg__(self):
        return ChainMap(self.source, self.target, {n: -self.component(n) for n in self.degrees})

    def equals(self, other: "ChainMap") -> bool:
        return all(self.component(n).equals(other.component(n)) for n in self.degrees)

    @classmethod
    def identity(cls, c: ChainComplex) -> "ChainMap":
        return cls(c, c, {n: GroupHom.identity(c.group(n)) for n in c.degrees})

    @classmethod
    def zero(cls, a: ChainComplex, b: ChainComplex) -> "ChainMap":
        return cls(a, b, {})


def chain_map_problems(f: ChainMap) -> list:
    out = []
    for n in f.degrees:
        if not f.component(n).is_well_defined():
            out.append(f"component in degree {n} is not a homomorphism")
    for n in range(f.degrees.start, f.degrees.stop + 1):
        lhs = f.target.d(n).compose(f.component(n))
        rhs = f.component(n - 1).compose(f.source.d(n))
        if not lhs.equals(rhs):
            out.append(f"square out of degree {n} does not commute")
    return out


def is_chain_map(f: ChainMap) -> bool:
    return not chain_map_problems(f)


def induced_on_homology(f: ChainMap, n: int) -> GroupHom:
    return induced_map(f.component(n), homology_subquotient(f.source, n), homology_subquotient(f.target, n))


def is_quasi_iso(f: ChainMap) -> bool:
    """Every induced map on homology is an isomorphism."""
    return all(induced_on_homology(f, n).is_iso() for n in f.degrees)


def is_chain_iso(f: ChainMap) -> bool:
    return is_chain_map(f) and all(f.component(n).is_iso() for n in f.degrees)


# ---------------------------------------------------------------- homotopies


@dataclass(frozen=True)
class ChainHomotopy:
    """h_n : A_n -> B_{n+1} with d h + h d = G - F."""

    F: ChainMap
    G: ChainMap
    components: dict = field(hash=False)

    def component(self, n: int) -> GroupHom:
        h = self.components.get(n)
        if h is not None:
            return h
        return GroupHom.zero(self.F.source.group(n), self.F.target.group(n + 1))


def check_homotopy(h: ChainHomotopy) -> bool:
    A, B = h.F.source, h.F.target
    for n in range(min(A.min_degree, B.min_degree) - 1, max(A.max_degree, B.max_degree) + 2):
        lhs = B.d(n + 1).compose(h.component(n)) + h.component(n - 1).compose(A.d(n))
        if not lhs.equals(h.G.component(n) - h.F.component(n)):
            return False
    return True


# ---------------------------------------------------------------- translations


def shift_up(c: ChainComplex) -> ChainComplex:
    """Degree n holds c_{n-1}; for complexes starting at 0 a zero group is put in degree 0."""
    groups = list(c.groups)
    ds = list(c.differentials)
    if c.min_degree == 0:
        return ChainComplex(0, [TRIVIAL] + groups, [GroupHom.zero(groups[0], TRIVIAL)] + ds)
    return ChainComplex(c.min_degree + 1, groups, ds)


def loop(c: ChainComplex) -> ChainComplex:
    """Ω: degree 0 is the kernel of d_1, degree i >= 1 is c_{i+1}."""
    if c.min_degree != 0:
        raise PreconditionViolated("loop is defined on complexes starting in degree 0")
    z = c.d(1).kernel()
    if c.max_degree <= 1:
        return ChainComplex(0, [z.group], [])
    groups = [z.group] + [c.group(n) for n in range(2, c.max_degree + 1)]
    ds = [z.factor(c.d(2))] + [c.d(n) for n in range(3, c.max_degree + 1)]
    return ChainComplex(0, groups, ds)


def loop_kernel(c: ChainComplex) -> Subquotient:
    return c.d(1).kernel()


def path(c: ChainComplex) -> ChainComplex:
    """Π: degree 0 is c_1 + c_0, degree i >= 1 is c_{i+1}."""
    if c.min_degree != 0:
        raise PreconditionViolated("path is defined on complexes starting in degree 0")
    g0 = direct_sum([c.group(1), c.group(0)])
    if c.max_degree <= 1:
        return ChainComplex(0, [g0], [])
    d2 = c.d(2)
    top = hom_from_blocks(c.group(2), g0, [[d2.matrix], [IntMatrix.zeros(c.group(0).ngens, c.group(2).ngens)]])
    groups = [g0] + [c.group(n) for n in range(2, c.max_degree + 1)]
    ds = [top] + [c.d(n) for n in range(3, c.max_degree + 1)]
    return ChainComplex(0, groups, ds)


def shift_down(c: ChainComplex) -> ChainComplex:
    """Reindex so that c_{n+1} sits in degree n (no truncation)."""
    return ChainComplex(c.min_degree - 1, c.groups, c.differentials)


def direct_sum_complex(a: ChainComplex, b: ChainComplex) -> ChainComplex:
    lo, hi = min(a.min_degree, b.min_degree), max(a.max_degree, b.max_degree)
    groups = [direct_sum([a.group(n), b.group(n)]) for n in range(lo, hi + 1)]
    ds = []
    for n in range(lo + 1, hi + 1):
        m = block_diag([a.d(n).matrix, b.d(n).matrix])
        ds.append(GroupHom(groups[n - lo], groups[n - 1 - lo], m, check=False))
    return ChainComplex(lo, groups, ds)


def mapping_cone(f: ChainMap) -> ChainComplex:
    """cone_n = A_{n-1} + B_n with d(a, b) = (-d a, f(a) + d b)."""
    A, B = f.source, f.target
    lo = min(A.min_degree + 1, B.min_degree)
    hi = max(A.max_degree + 1, B.max_degree)
    groups = [direct_sum([A.group(n - 1), B.group(n)]) for n in range(lo, hi + 1)]
    ds = []
    for n in range(lo + 1, hi + 1):
        blocks = [[(-A.d(n - 1)).matrix, IntMatrix.zeros(A.group(n - 2).ngens, B.group(n).ngens)],
                  [f.component(n - 1).matrix, B.d(n).matrix]]
        ds.append(hom_from_blocks(groups[n - lo], groups[n - 1 - lo], blocks))
    return ChainComplex(lo, groups, ds)


# ---------------------------------------------------------------- double complexes


@dataclass(frozen=True)
class BigradedComplex:
    """groups[(p, q)], horizontal δ: (p, q) -> (p+1, q), vertical d: (p, q) -> (p, q-1)."""

    groups: dict = field(hash=False)
    horizontal: dict = field(hash=False)
    vertical: dict = field(hash=False)

    def group(self, p, q):
        return self.groups.get((p, q), TRIVIAL)

    def delta(self, p, q) -> GroupHom:
        h = self.horizontal.get((p, q))
        return h if h is not None else GroupHom.zero(self.group(p, q), self.group(p + 1, q))

    def d(self, p, q) -> GroupHom:
        h = self.vertical.get((p, q))
        return h if h is not None else GroupHom.zero(self.group(p, q), self.group(p, q - 1))

    def validate(self) -> list:
        out = []
        for (p, q) in self.groups:
            if not self.delta(p + 1, q).compose(self.delta(p, q)).is_zero():
                out.append(f"δ∘δ nonzero at {(p, q)}")
            if not self.d(p, q - 1).compose(self.d(p, q)).is_zero():
                out.append(f"d∘d nonzero at {(p, q)}")
            if not self.delta(p, q - 1).compose(self.d(p, q)).equals(self.d(p + 1, q).compose(self.delta(p, q))):
                out.append(f"δ and d do not commute at {(p, q)}")
        return out


@dataclass(frozen=True)
class TotalComplex:
    complex: ChainComplex
    summands: dict = field(hash=False)  # degree -> sorted list of (p, q)
    bigraded: BigradedComplex = field(hash=False, default=None)

    def block(self, n: int, p: int) -> slice:
        """Coordinates of the summand with first index p inside Tot_n."""
        off = 0
        for (pp, qq) in self.summands.get(n, []):
            size = self.bigraded.group(pp, qq).ngens
            if pp == p:
                return slice(off, off + size)
            off += size
        raise KeyError((n, p))


def total_complex(b: BigradedComplex) -> TotalComplex:
    """Tot_n = sum over q - p = n, with D = d + (-1)^q δ."""
    if not b.groups:
        return TotalComplex(zero_complex(), {0: []}, b)
    degs = {q - p for (p, q) in b.groups}
    lo, hi = min(degs), max(degs)
    summands = {n: sorted([(p, q) for (p, q) in b.groups if q - p == n]) for n in range(lo, hi + 1)}
    groups = {n: direct_sum([b.group(p, q) for (p, q) in summands[n]]) for n in summands}
    ds = []
    for n in range(lo + 1, hi + 1):
        rows = []
        for (p2, q2) in summands[n - 1]:
            row = []
            for (p, q) in summands[n]:
                tgt, src = b.group(p2, q2), b.group(p, q)
                if (p2, q2) == (p, q - 1):
                    row.append(b.d(p, q).matrix)
                elif (p2, q2) == (p + 1, q):
                    row.append(b.delta(p, q).matrix.scale(-1 if q % 2 else 1))
                else:
                    row.append(IntMatrix.zeros(tgt.ngens, src.ngens))
            rows.append(row)
        src_g, tgt_g = groups[n], groups[n - 1]
        if not rows or not summands[n]:
            ds.append(GroupHom.zero(src_g, tgt_g))
        else:
            ds.append(hom_from_blocks(src_g, tgt_g, rows))
    cx = ChainComplex(lo, [groups[n] for n in range(lo, hi + 1)], ds)
    return TotalComplex(cx, summands, b)


def shift_up_map(f: ChainMap) -> ChainMap:
    return ChainMap(shift_up(f.source), shift_up(f.target), {n + 1: h for n, h in f.components.items()})


def loop_map(f: ChainMap) -> ChainMap:
    """Ω f: cycles in degree 1 go to cycles, higher degrees shift down by one."""
    A, B = f.source, f.target
    za, zb = A.d(1).kernel(), B.d(1).kernel()
    comps = {0: zb.factor(f.component(1).compose(za.inclusion()))}
    for n in range(2, max(A.max_degree, B.max_degree) + 1):
        comps[n - 1] = f.component(n)
    return ChainMap(loop(A), loop(B), comps)
