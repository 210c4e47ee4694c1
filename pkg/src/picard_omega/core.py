"""Exact integer linear algebra and finitely generated abelian groups.

A group is presented as Z^g / colspan(R).  Elements are integer coordinate
tuples of length g; two tuples are equal in the group when their difference
lies in the column span of R.  Everything is exact, no floats anywhere.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import CompositeNonzero, IllDefinedHom, InfiniteGroup, PreconditionViolated


# ---------------------------------------------------------------- matrices


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    data: tuple  # tuple of row tuples

    def __post_init__(self):
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise PreconditionViolated(f"matrix data does not match shape {self.rows}x{self.cols}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = tuple(tuple(int(v) for v in r) for r in rows)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, rows)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        columns = [tuple(c) for c in columns]
        return cls(rows, len(columns), tuple(tuple(c[i] for c in columns) for i in range(rows)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def entries(self) -> tuple:
        return tuple(v for r in self.data for v in r)

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    def apply(self, x: Sequence[int]) -> tuple:
        if len(x) != self.cols:
            raise PreconditionViolated(f"vector of length {len(x)} for {self.rows}x{self.cols} matrix")
        return tuple(sum([a * x[j] for j, a in r]) if r else 0 for r in self._sparse)

    @cached_property
    def _sparse(self) -> tuple:
        return tuple(tuple((j, a) for j, a in enumerate(r) if a) for r in self.data)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise PreconditionViolated(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        ocols = other.columns()
        return IntMatrix(self.rows, other.cols,
                         tuple(tuple(sum(a * b for a, b in zip(r, c) if a) for c in ocols) for r in self.data))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(self.rows, self.cols,
                         tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.data, other.data)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(self.rows, self.cols,
                         tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.data, other.data)))

    def __neg__(self) -> "IntMatrix":
        return self.scale(-1)

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(tuple(k * a for a in r) for r in self.data))

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         tuple(tuple(self.data[i][j] for i in range(self.rows)) for j in range(self.cols)))

    def is_zero(self) -> bool:
        return all(v == 0 for r in self.data for v in r)

    def _same_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise PreconditionViolated("matrix shapes differ")

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "entries": [str(v) for v in self.entries]}

    @classmethod
    def from_json(cls, obj: dict) -> "IntMatrix":
        rows, cols = int(obj["rows"]), int(obj["cols"])
        flat = [int(str(v)) for v in obj["entries"]]
        if len(flat) != rows * cols:
            raise PreconditionViolated(f"expected {rows * cols} entries, got {len(flat)}")
        return cls(rows, cols, tuple(tuple(flat[i * cols:(i + 1) * cols]) for i in range(rows)))


def hstack(mats: Sequence[IntMatrix], rows: int | None = None) -> IntMatrix:
    if not mats:
        return IntMatrix.zeros(rows or 0, 0)
    r = mats[0].rows
    if any(m.rows != r for m in mats):
        raise PreconditionViolated("hstack: row counts differ")
    return IntMatrix(r, sum(m.cols for m in mats),
                     tuple(tuple(v for m in mats for v in m.data[i]) for i in range(r)))


def vstack(mats: Sequence[IntMatrix], cols: int | None = None) -> IntMatrix:
    if not mats:
        return IntMatrix.zeros(0, cols or 0)
    c = mats[0].cols
    if any(m.cols != c for m in mats):
        raise PreconditionViolated("vstack: column counts differ")
    return IntMatrix(sum(m.rows for m in mats), c, tuple(r for m in mats for r in m.data))


def block_diag(mats: Sequence[IntMatrix]) -> IntMatrix:
    rows, cols = sum(m.rows for m in mats), sum(m.cols for m in mats)
    out = []
    off = 0
    for m in mats:
        for r in m.data:
            out.append((0,) * off + r + (0,) * (cols - off - m.cols))
        off += m.cols
    return IntMatrix(rows, cols, tuple(out))


# ---------------------------------------------------------------- Smith normal form


@dataclass(frozen=True)
class SmithData:
    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    U_inv: IntMatrix
    diagonal: tuple  # nonzero diagonal entries, all positive, each dividing the next

    @property
    def rank(self) -> int:
        return len(self.diagonal)


def _smith(rows: list, m: int, n: int):
    A = [list(r) for r in rows]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    Ui = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        if i != j:
            A[i], A[j] = A[j], A[i]
            U[i], U[j] = U[j], U[i]
            for r in Ui:
                r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        if i != j:
            for r in A:
                r[i], r[j] = r[j], r[i]
            for r in V:
                r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]
        for r in Ui:  # inverse acts on columns: col_src -= q * col_dst
            r[src] -= q * r[dst]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for r in A:
            r[dst] += q * r[src]
        for r in V:
            r[dst] += q * r[src]

    t = 0
    while t < min(m, n):
        # pivot rule: smallest absolute value, ties broken row-major
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    clean = clean and A[i][t] == 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    clean = clean and A[t][j] == 0
            if not clean:
                best = (abs(A[t][t]), None, None)
                for i in range(t + 1, m):
                    if A[i][t] and abs(A[i][t]) < best[0]:
                        best = (abs(A[i][t]), i, None)
                for j in range(t + 1, n):
                    if A[t][j] and abs(A[t][j]) < best[0]:
                        best = (abs(A[t][j]), None, j)
                if best[1] is not None:
                    swap_rows(t, best[1])
                elif best[2] is not None:
                    swap_cols(t, best[2])
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is not None:
                add_row(t, bad, 1)
                continue
            break
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
            for r in Ui:
                r[t] = -r[t]
        t += 1
    return A, U, Ui, V, t


def smith_data(m: IntMatrix) -> SmithData:
    A, U, Ui, V, rank = _smith(m.data, m.rows, m.cols)
    mk = lambda rows, c: IntMatrix(len(rows), c, tuple(tuple(r) for r in rows))
    return SmithData(mk(U, m.rows), mk(A, m.cols), mk(V, m.cols), mk(Ui, m.rows),
                     tuple(A[i][i] for i in range(rank)))


def smith_normal_form(m: IntMatrix) -> tuple:
    """Return (U, D, V) with U @ m @ V == D, U and V unimodular, D diagonal
    with nonnegative entries each dividing the next."""
    sd = smith_data(m)
    return sd.U, sd.D, sd.V


# ---------------------------------------------------------------- lattices


def nullspace(m: IntMatrix) -> list:
    """Basis of the integer kernel {x : m x = 0}."""
    sd = smith_data(m)
    return [sd.V.column(j) for j in range(sd.rank, m.cols)]


def lattice_basis(vectors: Iterable[Sequence[int]], dim: int) -> IntMatrix:
    """A basis (as columns) of the lattice spanned by the given vectors."""
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        return IntMatrix.zeros(dim, 0)
    sd = smith_data(IntMatrix.from_columns(vectors, dim))
    return IntMatrix.from_columns(
        [tuple(d * x for x in sd.U_inv.column(i)) for i, d in enumerate(sd.diagonal)], dim)


class LatticeSolver:
    """Solve B z = v exactly for a matrix B of full column rank."""

    def __init__(self, basis: IntMatrix):
        self.basis = basis
        self._sd = smith_data(basis)
        if self._sd.rank != basis.cols:
            raise PreconditionViolated("lattice basis is not of full column rank")

    def solve(self, v: Sequence[int]):
        """Return z with B z = v, or None if v is not in the lattice."""
        sd = self._sd
        y = sd.U.apply(v)
        w = []
        for i, d in enumerate(sd.diagonal):
            if y[i] % d:
                return None
            w.append(y[i] // d)
        if any(y[i] for i in range(sd.rank, len(y))):
            return None
        return sd.V.apply(w) if w else ()


def in_span(vectors: Sequence[Sequence[int]], dim: int, v: Sequence[int]) -> bool:
    basis = lattice_basis(vectors, dim)
    if basis.cols == 0:
        return not any(v)
    return LatticeSolver(basis).solve(v) is not None


def span_solve(generators: IntMatrix, v: Sequence[int]):
    """Find some integer z with generators @ z == v, or None."""
    sd = smith_data(generators)
    y = sd.U.apply(v)
    w = [0] * generators.cols
    for i, d in enumerate(sd.diagonal):
        if y[i] % d:
            return None
        w[i] = y[i] // d
    if any(y[i] for i in range(sd.rank, len(y))):
        return None
    return sd.V.apply(w)


# ---------------------------------------------------------------- groups


@dataclass(frozen=True, eq=True)
class FgAbGroup:
    """Z^g modulo the column span of a relation matrix with g rows."""

    relations: IntMatrix
    _sd: SmithData = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_sd", smith_data(self.relations))

    @classmethod
    def free(cls, n: int) -> "FgAbGroup":
        return cls(IntMatrix.zeros(n, 0))

    @classmethod
    def cyclic(cls, n: int) -> "FgAbGroup":
        return cls(IntMatrix(1, 1, ((n,),))) if n else cls.free(1)

    @classmethod
    def trivial(cls) -> "FgAbGroup":
        return _TRIVIAL

    @classmethod
    def from_invariants(cls, torsion: Sequence[int] = (), free: int = 0) -> "FgAbGroup":
        k = len(torsion)
        rel = IntMatrix(k + free, k, tuple(tuple(torsion[i] if i == j else 0 for j in range(k))
                                           for i in range(k + free)))
        return cls(rel)

    @property
    def ngens(self) -> int:
        return self.relations.rows

    @cached_property
    def _mods(self) -> tuple:
        # modulus of each Smith coordinate: d_i on the torsion part, 0 on free ones
        diag = self._sd.diagonal
        return tuple(diag[i] if i < len(diag) else 0 for i in range(self.ngens))

    @cached_property
    def torsion(self) -> tuple:
        return tuple(d for d in self._sd.diagonal if d > 1)

    @property
    def free_rank(self) -> int:
        return self.ngens - self._sd.rank

    @property
    def invariants(self) -> tuple:
        return self.torsion, self.free_rank

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self):
        if not self.is_finite:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def zero(self) -> tuple:
        return (0,) * self.ngens

    def canonical(self, x: Sequence[int]) -> tuple:
        """Canonical coset representative: Smith coordinates reduced into [0, d)."""
        x = tuple(x)
        memo = self._memo
        hit = memo.get(x)
        if hit is not None:
            return hit
        if len(x) != self.ngens:
            raise PreconditionViolated(f"element of length {len(x)} in group with {self.ngens} generators")
        y = list(self._sd.U.apply(x))
        for i, d in enumerate(self._mods):
            if d:
                y[i] %= d
        out = self._sd.U_inv.apply(y)
        if len(memo) < _MEMO_LIMIT:
            memo[x] = out
        return out

    @cached_property
    def _memo(self) -> dict:
        return {}

    def is_zero(self, x: Sequence[int]) -> bool:
        y = self._sd.U.apply(x)
        return all((v % d == 0) if d else v == 0 for v, d in zip(y, self._mods))

    def equal(self, x, y) -> bool:
        return self.is_zero(tuple(a - b for a, b in zip(x, y)))

    def add(self, x, y) -> tuple:
        return self.canonical(tuple(a + b for a, b in zip(x, y)))

    def neg(self, x) -> tuple:
        return self.canonical(tuple(-a for a in x))

    def sub(self, x, y) -> tuple:
        return self.canonical(tuple(a - b for a, b in zip(x, y)))

    def element(self, coords: Sequence[int]) -> "GroupElement":
        return GroupElement(self, self.canonical(tuple(coords)))

    def generators(self) -> list:
        return [tuple(int(i == j) for j in range(self.ngens)) for i in range(self.ngens)]

    def iter_coords(self):
        """All elements as canonical coordinate tuples, in a fixed order."""
        if not self.is_finite:
            raise InfiniteGroup(f"group with free rank {self.free_rank} has infinitely many elements")
        nontrivial = [i for i, d in enumerate(self._mods) if d > 1]
        ranges = [range(self._mods[i]) for i in nontrivial]
        Ui = self._sd.U_inv
        for combo in itertools.product(*ranges):
            y = [0] * self.ngens
            for i, v in zip(nontrivial, combo):
                y[i] = v
            yield Ui.apply(y)

    def simplify(self) -> "Simplification":
        """An isomorphic group Z^k / diag(torsion) with explicit isomorphisms."""
        idx = [i for i, d in enumerate(self._mods) if d != 1]
        tors = [self._mods[i] for i in idx if self._mods[i] > 1]
        simple = FgAbGroup.from_invariants(tors, len(idx) - len(tors))
        to = IntMatrix(len(idx), self.ngens, tuple(self._sd.U.data[i] for i in idx))
        back = IntMatrix.from_columns([self._sd.U_inv.column(i) for i in idx], self.ngens)
        return Simplification(simple, GroupHom(self, simple, to), GroupHom(simple, self, back))

    def __repr__(self):
        parts = [f"Z/{d}" for d in self.torsion] + ["Z"] * self.free_rank
        return f"FgAbGroup({' + '.join(parts) or '0'}; {self.ngens} gens)"


_TRIVIAL = FgAbGroup(IntMatrix.zeros(0, 0))
_MEMO_LIMIT = 1 << 16


@dataclass(frozen=True)
class GroupElement:
    group: FgAbGroup
    coords: tuple

    def __add__(self, other):
        return GroupElement(self.group, self.group.add(self.coords, other.coords))

    def __neg__(self):
        return GroupElement(self.group, self.group.neg(self.coords))

    def __sub__(self, other):
        return GroupElement(self.group, self.group.sub(self.coords, other.coords))


@dataclass(frozen=True)
class Simplification:
    group: FgAbGroup
    to_simple: "GroupHom"
    from_simple: "GroupHom"


def direct_sum(groups: Sequence[FgAbGroup]) -> FgAbGroup:
    if not groups:
        return FgAbGroup.trivial()
    if len(groups) == 1:
        return groups[0]
    return FgAbGroup(block_diag([g.relations for g in groups]))


def enumerate_elements(g: FgAbGroup) -> list:
    return [GroupElement(g, c) for c in g.iter_coords()]


def group_iso_test(a: FgAbGroup, b: FgAbGroup) -> bool:
    return a.invariants == b.invariants


# ---------------------------------------------------------------- homomorphisms


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism given by an integer matrix on generators.

    With check=True (the default) construction fails unless relations of the
    source are sent into the relations of the target."""

    source: FgAbGroup
    target: FgAbGroup
    matrix: IntMatrix
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        if (self.matrix.rows, self.matrix.cols) != (self.target.ngens, self.source.ngens):
            raise PreconditionViolated(
                f"hom matrix is {self.matrix.rows}x{self.matrix.cols}, "
                f"expected {self.target.ngens}x{self.source.ngens}")
        if self.check and not self.is_well_defined():
            raise IllDefinedHom("matrix does not respect the relations of the source")

    @classmethod
    def zero(cls, source: FgAbGroup, target: FgAbGroup) -> "GroupHom":
        return cls(source, target, IntMatrix.zeros(target.ngens, source.ngens), check=False)

    @classmethod
    def identity(cls, g: FgAbGroup) -> "GroupHom":
        return cls(g, g, IntMatrix.identity(g.ngens), check=False)

    def is_well_defined(self) -> bool:
        img = self.matrix @ self.source.relations
        return all(self.target.is_zero(c) for c in img.columns())

    def apply(self, x: Sequence[int]) -> tuple:
        x = tuple(x)
        memo = self._memo
        hit = memo.get(x)
        if hit is None:
            hit = self.target.canonical(self.matrix.apply(x))
            if len(memo) < _MEMO_LIMIT:
                memo[x] = hit
        return hit

    @cached_property
    def _memo(self) -> dict:
        return {}

    def raw(self, x: Sequence[int]) -> tuple:
        return self.matrix.apply(x)

    def __call__(self, x):
        return self.apply(x)

    def compose(self, other: "GroupHom") -> "GroupHom":
        """self after other."""
        return GroupHom(other.source, self.target, self.matrix @ other.matrix, check=False)

    def __matmul__(self, other):
        return self.compose(other)

    def __add__(self, other):
        return GroupHom(self.source, self.target, self.matrix + other.matrix, check=False)

    def __sub__(self, other):
        return GroupHom(self.source, self.target, self.matrix - other.matrix, check=False)

    def __neg__(self):
        return GroupHom(self.source, self.target, -self.matrix, check=False)

    def scale(self, k: int) -> "GroupHom":
        return GroupHom(self.source, self.target, self.matrix.scale(k), check=False)

    def equals(self, other: "GroupHom") -> bool:
        """Equality as functions (on generators, modulo target relations)."""
        diff = self.matrix - other.matrix
        return all(self.target.is_zero(c) for c in diff.columns())

    def is_zero(self) -> bool:
        return all(self.target.is_zero(c) for c in self.matrix.columns())

    def kernel(self) -> "Subquotient":
        return subquotient(self, GroupHom.zero(FgAbGroup.trivial(), self.source))

    def image_cokernel(self) -> "Subquotient":
        return subquotient(GroupHom.zero(self.target, FgAbGroup.trivial()), self)

    def is_injective(self) -> bool:
        return self.kernel().group.is_trivial

    def is_surjective(self) -> bool:
        return self.image_cokernel().group.is_trivial

    def is_iso(self) -> bool:
        return self.is_injective() and self.is_surjective()


def hom_direct_sum(homs: Sequence[GroupHom]) -> GroupHom:
    return GroupHom(direct_sum([h.source for h in homs]), direct_sum([h.target for h in homs]),
                    block_diag([h.matrix for h in homs]), check=False)


def hom_from_blocks(source: FgAbGroup, target: FgAbGroup, blocks: Sequence[Sequence[IntMatrix]]) -> GroupHom:
    """Assemble a hom from a block matrix given as rows of blocks."""
    return GroupHom(source, target, vstack([hstack(list(r)) for r in blocks], source.ngens), check=False)


# ---------------------------------------------------------------- subquotients


@dataclass(frozen=True)
class Subquotient:
    """ker(f) / im(g) as a group of its own.

    basis holds ambient coordinates (columns) of lattice vectors whose classes
    generate; group is presented on those generators."""

    ambient: FgAbGroup
    group: FgAbGroup
    basis: IntMatrix
    _solver: object = field(repr=False, compare=False, hash=False, default=None)

    def coords(self, x: Sequence[int]) -> tuple:
        """Coordinates of an ambient element lying in the kernel lattice."""
        if self.basis.cols == 0:
            if any(x):
                # may still be an ambient relation; those are in the lattice too
                raise PreconditionViolated("element is not in the kernel")
            return ()
        z = self._solver.solve(x)
        if z is None:
            raise PreconditionViolated("element is not in the kernel")
        return self.group.canonical(z)

    def lift(self, z: Sequence[int]) -> tuple:
        return self.basis.apply(z)

    def inclusion(self) -> GroupHom:
        """The map back into the ambient group (meaningful for kernels)."""
        return GroupHom(self.group, self.ambient, self.basis, check=False)

    def factor(self, f: GroupHom) -> GroupHom:
        """Corestrict f: X -> ambient, whose image lies in the kernel lattice."""
        cols = [self.coords(c) for c in f.matrix.columns()]
        return GroupHom(f.source, self.group, IntMatrix.from_columns(cols, self.group.ngens), check=False)


def preimage_lattice(f: GroupHom) -> IntMatrix:
    """Basis of {x in Z^g : f(x) = 0 in the target}; contains the source relations."""
    g = f.source.ngens
    if f.is_zero():
        return IntMatrix.identity(g)
    big = hstack([f.matrix, f.target.relations])
    vecs = [v[:g] for v in nullspace(big)]
    return lattice_basis([v for v in vecs if any(v)], g)


def subquotient(ker_of: GroupHom, mod_image_of: GroupHom) -> Subquotient:
    if mod_image_of.target != ker_of.source:
        raise PreconditionViolated("subquotient: maps are not composable")
    if not ker_of.compose(mod_image_of).is_zero():
        raise CompositeNonzero("the composite of the two maps is not zero")
    amb = ker_of.source
    basis = preimage_lattice(ker_of)
    gens = mod_image_of.matrix.columns() + amb.relations.columns()
    if basis.cols == 0:
        return Subquotient(amb, FgAbGroup.trivial(), basis, None)
    if ker_of.is_zero():
        # whole group: keep the presentation verbatim
        rel = hstack([mod_image_of.matrix, amb.relations], amb.ngens)
        return Subquotient(amb, FgAbGroup(rel), basis, LatticeSolver(basis))
    solver = LatticeSolver(basis)
    cols = []
    for v in gens:
        z = solver.solve(v)
        if z is None:
            raise CompositeNonzero("image is not contained in the kernel")
        cols.append(z)
    return Subquotient(amb, FgAbGroup(IntMatrix.from_columns(cols, basis.cols)), basis, solver)


def induced_map(f: GroupHom, src: Subquotient, tgt: Subquotient) -> GroupHom:
    """The map src.group -> tgt.group induced by f on ambient groups."""
    cols = [tgt.coords(f.raw(b)) for b in src.basis.columns()]
    return GroupHom(src.group, tgt.group, IntMatrix.from_columns(cols, tgt.group.ngens))


# ---------------------------------------------------------------- hom enumeration


def enumerate_homs(a: FgAbGroup, b: FgAbGroup) -> list:
    """All homomorphisms between two finite groups."""
    if not (a.is_finite and b.is_finite):
        raise InfiniteGroup("hom enumeration needs finite groups")
    sa, sb = a.simplify(), b.simplify()
    src_orders = list(sa.group.torsion)
    tgt = sb.group
    choices = []
    for r in src_orders:
        per_coord = []
        for d in tgt.torsion:
            step = d // _gcd(d, r)
            per_coord.append(range(0, d, step))
        choices.append(list(itertools.product(*per_coord)))
    out = []
    for cols in itertools.product(*choices):
        m = IntMatrix.from_columns(list(cols), tgt.ngens)
        h = GroupHom(sa.group, tgt, m)
        out.append(sb.from_simple.compose(h).compose(sa.to_simple))
    return out


def random_hom(rng, a: FgAbGroup, b: FgAbGroup, spread: int = 3) -> GroupHom:
    """A random homomorphism; free generators of a get arbitrary images."""
    sa, sb = a.simplify(), b.simplify()
    tgt = sb.group
    k = len(tgt.torsion)
    cols = []
    src_orders = list(sa.group.torsion) + [0] * sa.group.free_rank
    for r in src_orders:
        col = []
        for i in range(tgt.ngens):
            d = tgt.torsion[i] if i < k else 0
            if d:
                step = d // _gcd(d, r) if r else 1
                col.append(step * rng.randrange(d))
            else:
                col.append(0 if r else rng.randint(-spread, spread))
        cols.append(col)
    m = IntMatrix.from_columns(cols, tgt.ngens)
    return sb.from_simple.compose(GroupHom(sa.group, tgt, m)).compose(sa.to_simple)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)
