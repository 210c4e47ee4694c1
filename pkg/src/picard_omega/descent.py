"""Finite sites, presheaves of chain complexes and descent.

Two independent decision procedures are provided.  The Čech one compares
homology of F(V) with homology of the Čech total complex through induced
maps on subquotients.  The glueing one solves integer linear systems for
glueing data of Ω^k F in total degree 0.  omega_descent_check runs both
and refuses to answer when they disagree.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .chain import (BigradedComplex, ChainComplex, ChainMap, TotalComplex, chain_map_problems, homology,
                    induced_on_homology, loop, loop_map, shift_up, shift_up_map,
                    total_complex, validate_complex)
from .core import (FgAbGroup, GroupHom, IntMatrix, block_diag, direct_sum, group_iso_test, hstack,
                   nullspace, preimage_lattice, span_solve, subquotient, vstack)
from .errors import InternalInconsistency, MissingMeet, PreconditionViolated


@dataclass(frozen=True, eq=False)
class FiniteSite:
    opens: tuple
    leq_pairs: frozenset  # reflexive and transitive
    covers: dict  # open -> tuple of covers, each a tuple of opens
    empty: str | None = None  # the empty open, if the site has one

    @classmethod
    def build(cls, opens: Sequence, leq: Sequence, covers: dict, empty=None) -> "FiniteSite":
        opens = tuple(opens)
        rel = {(a, a) for a in opens} | {tuple(p) for p in leq}
        for p in rel:
            if p[0] not in opens or p[1] not in opens:
                raise PreconditionViolated(f"unknown open in {p}")
        changed = True
        while changed:
            new = {(a, d) for (a, b) in rel for (c, d) in rel if b == c} - rel
            changed = bool(new)
            rel |= new
        if any((b, a) in rel and a != b for (a, b) in rel):
            raise PreconditionViolated("the order on opens is not antisymmetric")
        cov = {}
        for v, fams in covers.items():
            cov[v] = tuple(tuple(u) for u in fams)
            for u in cov[v]:
                if not u or any((w, v) not in rel for w in u):
                    raise PreconditionViolated(f"cover of {v} has a member not below it")
        return cls(opens, frozenset(rel), cov, empty)

    def leq(self, a, b) -> bool:
        return (a, b) in self.leq_pairs

    def meet(self, a, b):
        lower = [c for c in self.opens if self.leq(c, a) and self.leq(c, b)]
        top = [c for c in lower if all(self.leq(d, c) for d in lower)]
        if not top:
            raise MissingMeet(f"{a} and {b} have no meet")
        return top[0]

    def meet_all(self, us: Sequence):
        out = us[0]
        for u in us[1:]:
            out = self.meet(out, u)
        return out


@dataclass(frozen=True, eq=False)
class Presheaf:
    """complexes[U] = F(U); restrictions[(a, b)] for a <= b is F(b) -> F(a).

    Missing restrictions are read as zero maps."""

    site: FiniteSite
    complexes: dict
    restrictions: dict

    def restrict(self, a, b) -> ChainMap:
        if a == b:
            return ChainMap.identity(self.complexes[a])
        f = self.restrictions.get((a, b))
        if f is None:
            return ChainMap.zero(self.complexes[b], self.complexes[a])
        return f

    @property
    def top_degree(self) -> int:
        return max(c.max_degree for c in self.complexes.values())

    def map_complexes(self, on_complex, on_map) -> "Presheaf":
        cx = {u: on_complex(c) for u, c in self.complexes.items()}
        res = {}
        for (a, b), f in self.restrictions.items():
            g = on_map(f)
            res[(a, b)] = ChainMap(cx[b], cx[a], g.components)
        return Presheaf(self.site, cx, res)


def validate_presheaf(f: Presheaf) -> list:
    site, out = f.site, []
    for u in site.opens:
        if u not in f.complexes:
            out.append(f"no complex on {u}")
    if out:
        return out
    for u, c in f.complexes.items():
        if c.min_degree != 0:
            out.append(f"complex on {u} does not start in degree 0")
        out += [f"{u}: {p}" for p in validate_complex(c)]
    if site.empty is not None and not all(g.is_trivial for g in f.complexes[site.empty].groups):
        out.append("the empty open must carry the zero complex")
    for (a, b), g in f.restrictions.items():
        if not site.leq(a, b):
            out.append(f"restriction {a}≤{b} between incomparable opens")
            continue
        if g.source is not f.complexes[b] and g.source != f.complexes[b]:
            out.append(f"restriction {a}≤{b} has the wrong source")
        out += [f"restriction {a}≤{b}: {p}" for p in chain_map_problems(g)]
    for a, b, c in itertools.product(site.opens, repeat=3):
        if a != b and b != c and site.leq(a, b) and site.leq(b, c):
            if not f.restrict(a, b).compose(f.restrict(b, c)).equals(f.restrict(a, c)):
                out.append(f"restrictions {a}≤{b}≤{c} do not compose")
    return out


def loop_presheaf(f: Presheaf) -> Presheaf:
    return f.map_complexes(loop, loop_map)


def shift_up_presheaf(f: Presheaf) -> Presheaf:
    return f.map_complexes(shift_up, shift_up_map)


# ---------------------------------------------------------------- Čech complexes


@dataclass(frozen=True, eq=False)
class CechData:
    V: object
    cover: tuple
    index: dict  # p -> list of index tuples
    bigraded: BigradedComplex
    total: TotalComplex
    augmentation: ChainMap  # F(V) -> Tot


def _tuples(m: int, p: int, full: bool) -> list:
    if not full:
        return list(itertools.combinations(range(m), p + 1))
    return [t for t in itertools.product(range(m), repeat=p + 1) if all(t[i] != t[i + 1] for i in range(p))]


def cech_total(f: Presheaf, V, cover: Sequence, full: bool = False, pmax: int | None = None) -> CechData:
    """Alternating Čech double complex of F over a cover of V (or, with full=True,
    the normalized complex on all index tuples without repeated neighbours, up to pmax)."""
    site = f.site
    cover = tuple(cover)
    m = len(cover)
    Q = f.top_degree
    if pmax is None:
        pmax = m - 1 if not full else Q + 2
    index = {p: _tuples(m, p, full) for p in range(pmax + 1)}
    index = {p: ix for p, ix in index.items() if ix}
    opens = {I: site.meet_all([cover[i] for i in I]) for ix in index.values() for I in ix}
    groups, horiz, vert = {}, {}, {}
    for p, ix in index.items():
        for q in range(Q + 1):
            groups[(p, q)] = direct_sum([f.complexes[opens[I]].group(q) for I in ix]) if ix else FgAbGroup.trivial()
    for p, ix in index.items():
        for q in range(Q + 1):
            src = groups[(p, q)]
            if q > 0:
                vert[(p, q)] = GroupHom(src, groups[(p, q - 1)],
                                        block_diag([f.complexes[opens[I]].d(q).matrix for I in ix]), check=False)
            if p + 1 in index:
                tgt_ix = index[p + 1]
                pos = {I: k for k, I in enumerate(ix)}
                rows = []
                for J in tgt_ix:
                    row = [IntMatrix.zeros(f.complexes[opens[J]].group(q).ngens,
                                           f.complexes[opens[I]].group(q).ngens) for I in ix]
                    for j in range(p + 2):
                        I = J[:j] + J[j + 1:]
                        if I not in pos:
                            continue
                        r = f.restrict(opens[J], opens[I]).component(q).matrix
                        if j % 2:
                            r = -r
                        row[pos[I]] = row[pos[I]] + r
                    rows.append(hstack(row, f.complexes[opens[J]].group(q).ngens))
                horiz[(p, q)] = GroupHom(src, groups[(p + 1, q)], vstack(rows, src.ngens), check=False)
    b = BigradedComplex(groups, horiz, vert)
    tot = total_complex(b)
    FV = f.complexes[V]
    comps = {}
    for q in range(FV.max_degree + 1):
        tq = tot.complex.group(q)
        blocks = []
        for (p, qq) in tot.summands.get(q, []):
            if p == 0:
                blocks.append(vstack([f.restrict(opens[I], V).component(q).matrix for I in index[0]],
                                     FV.group(q).ngens))
            else:
                blocks.append(IntMatrix.zeros(b.group(p, qq).ngens, FV.group(q).ngens))
        comps[q] = GroupHom(FV.group(q), tq, vstack(blocks, FV.group(q).ngens), check=False)
    return CechData(V, cover, index, b, tot, ChainMap(FV, tot.complex, comps))


@dataclass(frozen=True)
class CoverVerdict:
    V: object
    cover: tuple
    ok: bool
    failures: tuple = ()  # degrees (Čech) or (k, kind) pairs (glueing)


@dataclass(frozen=True)
class DescentReport:
    ok: bool
    verdicts: tuple

    def by_cover(self) -> dict:
        return {(v.V, v.cover): v.ok for v in self.verdicts}


def _all_covers(f: Presheaf):
    for V in f.site.opens:
        for u in f.site.covers.get(V, ()):
            yield V, u


def cech_verdict(f: Presheaf, V, cover) -> CoverVerdict:
    cd = cech_total(f, V, cover)
    bad = []
    for n in range(0, max(f.complexes[V].max_degree, cd.total.complex.max_degree) + 1):
        h = induced_on_homology(cd.augmentation, n)
        if not h.is_iso():
            bad.append(n)
    return CoverVerdict(V, tuple(cover), not bad, tuple(bad))


def cech_descent_check(f: Presheaf) -> DescentReport:
    """H_n F(V) -> H_n Tot(Čech) is an isomorphism for all n >= 0 and every listed cover."""
    vs = tuple(cech_verdict(f, V, u) for V, u in _all_covers(f))
    return DescentReport(all(v.ok for v in vs), vs)


# ---------------------------------------------------------------- glueing


@dataclass(frozen=True)
class GlueingResult:
    exists: bool
    unique: bool
    witnesses: tuple  # (local cycle, global section, correction) per generator
    obstructions: tuple  # local cycles with no global preimage
    ambiguities: tuple  # global sections that vanish locally without being trivial

    @property
    def ok(self) -> bool:
        return self.exists and self.unique


def zero_glueing_check(f: Presheaf, V, cover) -> GlueingResult:
    """Solve the glueing problem in total degree 0 by integer linear algebra.

    existence: every 0-cycle of the total complex is ε(a) + D(w) for some a.
    uniqueness: if ε(a) is a boundary then a is a boundary in F(V)."""
    cd = cech_total(f, V, cover)
    tot = cd.total.complex
    T0 = tot.group(0)
    eps = cd.augmentation.component(0)
    D1 = tot.d(1)
    FV0 = f.complexes[V].group(0)
    Z = preimage_lattice(tot.d(0))
    gens = hstack([eps.matrix, D1.matrix, T0.relations], T0.ngens)
    witnesses, obstructions = [], []
    for z in Z.columns():
        sol = span_solve(gens, z)
        if sol is None:
            obstructions.append(z)
        else:
            witnesses.append((z, sol[:FV0.ngens], sol[FV0.ngens:FV0.ngens + D1.source.ngens]))
    ambiguities = []
    kern = nullspace(gens)
    bnd = hstack([f.complexes[V].d(1).matrix, FV0.relations], FV0.ngens)
    for v in kern:
        a = v[:FV0.ngens]
        if any(a) and span_solve(bnd, a) is None:
            ambiguities.append(a)
    return GlueingResult(not obstructions, not ambiguities, tuple(witnesses), tuple(obstructions),
                         tuple(ambiguities))


def iterated_loop(f: Presheaf, k: int) -> Presheaf:
    for _ in range(k):
        f = loop_presheaf(f)
    return f


@dataclass(frozen=True)
class KGlueing:
    k: int
    result: GlueingResult
    vacuous_endpoints: bool  # some parallel pair of (k-1)-cells has an empty hom


def k_glueing_check(f: Presheaf, k: int, V, cover) -> KGlueing:
    vac = k >= 1 and not homology(f.complexes[V], k - 1).is_trivial
    return KGlueing(k, zero_glueing_check(iterated_loop(f, k), V, cover), vac)


@dataclass(frozen=True)
class OmegaDescentReport:
    ok: bool
    verdicts: tuple
    details: dict = field(hash=False, compare=False)  # (V, cover) -> list of KGlueing
    cech: DescentReport | None = None


def omega_descent_check(f: Presheaf, kmax: int | None = None, cross_check: bool = True) -> OmegaDescentReport:
    """Glueing of k-cells for every k <= kmax on every listed cover."""
    if kmax is None:
        kmax = f.top_degree + 1
    if kmax < f.top_degree + 1:
        raise PreconditionViolated(f"kmax must be at least {f.top_degree + 1}")
    loops = [f]
    for _ in range(kmax):
        loops.append(loop_presheaf(loops[-1]))
    verdicts, details = [], {}
    for V, u in _all_covers(f):
        rows = []
        for k in range(kmax + 1):
            vac = k >= 1 and not homology(f.complexes[V], k - 1).is_trivial
            rows.append(KGlueing(k, zero_glueing_check(loops[k], V, u), vac))
        fails = tuple((r.k, kind) for r in rows for kind, good in (("existence", r.result.exists),
                                                                     ("uniqueness", r.result.unique)) if not good)
        verdicts.append(CoverVerdict(V, tuple(u), not fails, fails))
        details[(V, tuple(u))] = rows
    report = OmegaDescentReport(all(v.ok for v in verdicts), tuple(verdicts), details)
    if cross_check:
        cech = cech_descent_check(f)
        if cech.by_cover() != {(v.V, v.cover): v.ok for v in verdicts}:
            raise InternalInconsistency("glueing and Čech verdicts disagree")
        report = OmegaDescentReport(report.ok, report.verdicts, details, cech)
    return report


# ---------------------------------------------------------------- sheaves and cohomology


def levelwise_sheaf_failures(f: Presheaf) -> list:
    """Covers and degrees where F_q(V) is not the equalizer of the F_q(U_i)."""
    out = []
    for V, u in _all_covers(f):
        cd = cech_total(f, V, u)
        b = cd.bigraded
        for q in range(f.top_degree + 1):
            eq = b.delta(0, q).kernel()
            eps = GroupHom(f.complexes[V].group(q), b.group(0, q), _p0_block(cd, q), check=False)
            if not eq.factor(eps).is_iso():
                out.append((V, tuple(u), q))
    return out


def _p0_block(cd: CechData, q: int) -> IntMatrix:
    sl = cd.total.block(q, 0)
    m = cd.augmentation.component(q).matrix
    return IntMatrix(sl.stop - sl.start, m.cols, m.data[sl])


def is_levelwise_sheaf(f: Presheaf) -> bool:
    return not levelwise_sheaf_failures(f)


def cech_cohomology(f: Presheaf, V, cover, n: int, degree: int = 0) -> FgAbGroup:
    """Ȟ^n of the cover with coefficients in the degree-`degree` groups."""
    cd = cech_total(f, V, cover, pmax=max(len(cover) - 1, n + 1))
    b = cd.bigraded
    return subquotient(b.delta(n, degree), b.delta(n - 1, degree)).group


def delooping(c: ChainComplex) -> tuple:
    """B with B_n = c_n + c_{n-1}, d(x, y) = (dx + (-1)^n y, dy), and the
    projection B -> shift_up(c)."""
    if c.min_degree != 0:
        raise PreconditionViolated("delooping expects a complex starting in degree 0")
    top = c.max_degree + 1
    groups = [direct_sum([c.group(n), c.group(n - 1)]) for n in range(top + 1)]
    ds = []
    for n in range(1, top + 1):
        sign = -1 if n % 2 else 1
        eye = IntMatrix.identity(c.group(n - 1).ngens).scale(sign)
        blocks = [[c.d(n).matrix, eye],
                  [IntMatrix.zeros(c.group(n - 2).ngens, c.group(n).ngens), c.d(n - 1).matrix]]
        ds.append(GroupHom(groups[n], groups[n - 1], vstack([hstack(r) for r in blocks], groups[n].ngens),
                           check=False))
    B = ChainComplex(0, groups, ds)
    sc = shift_up(c)
    proj = {}
    for n in range(top + 1):
        g = c.group(n)
        proj[n] = GroupHom(groups[n], sc.group(n),
                           hstack([IntMatrix.zeros(c.group(n - 1).ngens, g.ngens),
                                   IntMatrix.identity(c.group(n - 1).ngens)], c.group(n - 1).ngens), check=False)
    return B, ChainMap(B, sc, proj)


def delooping_check(c: ChainComplex) -> dict:
    B, p = delooping(c)
    incl = {}
    for n in c.degrees:
        g = c.group(n)
        incl[n] = GroupHom(g, B.group(n), vstack([IntMatrix.identity(g.ngens),
                                                  IntMatrix.zeros(c.group(n - 1).ngens, g.ngens)], g.ngens),
                           check=False)
    i = ChainMap(c, B, incl)
    kernel_is_c = all(subquotient(p.component(n), i.component(n)).group.is_trivial
                      and i.component(n).is_injective() for n in B.degrees)
    return {
        "total_complex_valid": not validate_complex(B),
        "acyclic": all(homology(B, n).is_trivial for n in B.degrees),
        "projection_is_chain_map": not chain_map_problems(p),
        "inclusion_is_chain_map": not chain_map_problems(i),
        "kernel_is_original": kernel_is_c and p.compose(i).equals(ChainMap.zero(c, p.target)),
        "projection_onto": all(p.component(n).is_surjective() for n in B.degrees),
    }


@dataclass(frozen=True)
class TowerLevel:
    n: int
    cech: FgAbGroup  # Ȟ^n directly
    via_total: FgAbGroup  # H_0 Tot(g[n])
    via_lower: FgAbGroup | None  # H_{-1} Tot(g[n-1])

    @property
    def consistent(self) -> bool:
        ok = group_iso_test(self.cech, self.via_total)
        return ok and (self.via_lower is None or group_iso_test(self.cech, self.via_lower))


def torsor_tower(f: Presheaf, V, cover, n: int) -> list:
    """Classification groups for levels 0..n computed three ways."""
    out = []
    shifted = [f]
    for _ in range(n):
        shifted.append(shift_up_presheaf(shifted[-1]))
    for k in range(n + 1):
        direct = cech_cohomology(f, V, cover, k)
        cd = cech_total(shifted[k], V, cover, pmax=max(len(cover) - 1, k + 1))
        via_total = homology(cd.total.complex, 0)
        via_lower = None
        if k >= 1:
            cd2 = cech_total(shifted[k - 1], V, cover, pmax=max(len(cover) - 1, k + 1))
            via_lower = homology(cd2.total.complex, -1)
        out.append(TowerLevel(k, direct, via_total, via_lower))
    return out
