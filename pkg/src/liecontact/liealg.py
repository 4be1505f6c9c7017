"""Lie algebras given by rational structure constants, and their standard invariants."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import ratlin as rl
from .ratlin import ZERO, Matrix, Vector


class InvalidAlgebra(ValueError):
    """Structure constants that are not antisymmetric or fail Jacobi."""

    def __init__(self, violations):
        self.violations = list(violations)
        head = "; ".join(v.describe() for v in self.violations[:5])
        more = f" (+{len(self.violations) - 5} more)" if len(self.violations) > 5 else ""
        super().__init__(f"invalid Lie algebra: {head}{more}")


@dataclass(frozen=True)
class Violation:
    kind: str  # "antisymmetry" or "jacobi"
    indices: tuple[int, ...]
    residual: Vector

    def describe(self) -> str:
        idx = ",".join(str(i + 1) for i in self.indices)
        return f"{self.kind} fails at ({idx})"


class LieAlgebra:
    """Finite-dimensional real Lie algebra with [e_i, e_j] = sum_k c[i][j][k] e_k.

    Construct from a mapping ``{(i, j): {k: c}}`` over pairs i < j (0-based);
    the antisymmetric completion is filled in. Jacobi is checked on
    construction unless ``check=False``.
    """

    def __init__(
        self,
        dim: int,
        brackets: Mapping[tuple[int, int], Mapping[int, object]] | None = None,
        basis_names: Sequence[str] | None = None,
        name: str = "",
        check: bool = True,
    ):
        if dim < 0:
            raise ValueError("dimension must be nonnegative")
        self.dim = dim
        self.name = name
        self.basis_names = tuple(basis_names) if basis_names else tuple(f"e{i + 1}" for i in range(dim))
        if len(self.basis_names) != dim:
            raise ValueError("basis_names length does not match dim")
        c = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
        given = brackets or {}
        for (i, j), coeffs in given.items():
            if i > j and (j, i) in given:
                mine = {k: rl.as_fraction(v) for k, v in coeffs.items() if v}
                theirs = {k: -rl.as_fraction(v) for k, v in given[(j, i)].items() if v}
                if mine != theirs:
                    raise InvalidAlgebra([Violation("antisymmetry", (j, i), ())])
                continue
            if not (0 <= i < dim and 0 <= j < dim):
                raise ValueError(f"bracket index ({i}, {j}) out of range")
            if i == j:
                if any(rl.as_fraction(v) != 0 for v in coeffs.values()):
                    raise InvalidAlgebra([Violation("antisymmetry", (i, i), ())])
                continue
            for k, v in coeffs.items():
                if not 0 <= k < dim:
                    raise ValueError(f"bracket target {k} out of range")
                v = rl.as_fraction(v)
                if i > j:
                    i2, j2, v2 = j, i, -v
                else:
                    i2, j2, v2 = i, j, v
                c[i2][j2][k] += v2
        for i in range(dim):
            for j in range(i + 1, dim):
                c[j][i] = [-x for x in c[i][j]]
        self.c: tuple[tuple[Vector, ...], ...] = tuple(tuple(tuple(row) for row in plane) for plane in c)
        # sparse view: (i, j) -> ((k, c_ijk), ...)
        self._nz = tuple(
            tuple(tuple((k, x) for k, x in enumerate(self.c[i][j]) if x) for j in range(dim))
            for i in range(dim)
        )
        if check:
            bad = jacobi_violations(self)
            if bad:
                raise InvalidAlgebra(bad)

    @classmethod
    def from_tensor(cls, c: Sequence[Sequence[Sequence]], **kw) -> "LieAlgebra":
        dim = len(c)
        br = {}
        for i in range(dim):
            for j in range(dim):
                if any(c[i][j]):
                    br[(i, j)] = {k: v for k, v in enumerate(c[i][j]) if v}
        for i in range(dim):
            for j in range(i + 1, dim):
                if tuple(c[i][j]) != tuple(-x for x in c[j][i]):
                    raise InvalidAlgebra([Violation("antisymmetry", (i, j), ())])
        upper = {k: v for k, v in br.items() if k[0] < k[1]}
        return cls(dim, upper, **kw)

    def __repr__(self):
        return f"LieAlgebra({self.name or '?'}, dim={self.dim})"

    def __eq__(self, other):
        return isinstance(other, LieAlgebra) and self.c == other.c and self.basis_names == other.basis_names

    def __hash__(self):
        return hash(self.c)

    def nonzero_brackets(self) -> list[tuple[int, int, int, Fraction]]:
        """(i, j, k, c) with i < j and c != 0, in index order."""
        return [(i, j, k, x) for i in range(self.dim) for j in range(i + 1, self.dim) for k, x in self._nz[i][j]]

    def structure_common_denominator(self) -> int:
        return rl.common_denominator(x for _, _, _, x in self.nonzero_brackets())

    # -- bracket and adjoint -------------------------------------------------

    def basis_bracket(self, i: int, j: int) -> Vector:
        return self.c[i][j]

    def bracket(self, x: Sequence, y: Sequence) -> Vector:
        n = self.dim
        if len(x) != n or len(y) != n:
            raise rl.ShapeError(f"vectors must have length {n}")
        out = [ZERO] * n
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                f = xi * yj
                for k, ck in self._nz[i][j]:
                    out[k] += f * ck
        return tuple(out)

    def ad(self, x: Sequence) -> Matrix:
        """Matrix of y -> [x, y] (column j is [x, e_j])."""
        cols = [self.bracket(x, rl.unit(self.dim, j)) for j in range(self.dim)]
        return rl.transpose(cols)

    def ad_basis(self, i: int) -> Matrix:
        return rl.transpose([self.c[i][j] for j in range(self.dim)])


def jacobi_violations(L: LieAlgebra) -> list[Violation]:
    """Every basis triple i < j < k whose cyclic Jacobi sum is nonzero."""
    n = L.dim
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                e = [rl.unit(n, t) for t in (i, j, k)]
                s = rl.vadd(
                    rl.vadd(L.bracket(L.c[i][j], e[2]), L.bracket(L.c[j][k], e[0])),
                    L.bracket(L.c[k][i], e[1]),
                )
                if any(s):
                    out.append(Violation("jacobi", (i, j, k), s))
    return out


def validate(L: LieAlgebra) -> list[Violation]:
    """Empty list when antisymmetric and Jacobi hold; the offending triples otherwise."""
    bad = []
    for i in range(L.dim):
        if any(L.c[i][i]):
            bad.append(Violation("antisymmetry", (i, i), L.c[i][i]))
        for j in range(i + 1, L.dim):
            if L.c[i][j] != tuple(-x for x in L.c[j][i]):
                bad.append(Violation("antisymmetry", (i, j), rl.vadd(L.c[i][j], L.c[j][i])))
    return bad + jacobi_violations(L)


# -- subspaces ---------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """Span of independent coordinate vectors in an ambient space of dimension ``ambient``."""

    ambient: int
    basis: tuple[Vector, ...]

    @classmethod
    def spanned_by(cls, vectors: Iterable[Sequence], ambient: int) -> "Subspace":
        return cls(ambient, rl.span_basis(vectors, ambient))

    @classmethod
    def whole(cls, n: int) -> "Subspace":
        return cls(n, rl.identity(n))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def codim(self) -> int:
        return self.ambient - self.dim

    def contains(self, v: Sequence) -> bool:
        return rl.in_span(self.basis, v)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self.dim == other.dim
            and self.contains_subspace(other)
        )

    def __hash__(self):
        return hash((self.ambient, rl.span_basis(self.basis, self.ambient)))


def bracket_span(L: LieAlgebra, U: Subspace, V: Subspace) -> Subspace:
    return Subspace.spanned_by((L.bracket(u, v) for u in U.basis for v in V.basis), L.dim)


def derived_ideal(L: LieAlgebra) -> Subspace:
    return Subspace.spanned_by((L.c[i][j] for i in range(L.dim) for j in range(i + 1, L.dim)), L.dim)


def _series(L: LieAlgebra, lower_central: bool) -> list[Subspace]:
    whole = Subspace.whole(L.dim)
    series = [whole]
    while True:
        cur = series[-1]
        nxt = bracket_span(L, whole if lower_central else cur, cur)
        if nxt.dim == cur.dim:
            return series
        series.append(nxt)


def derived_series(L: LieAlgebra) -> list[Subspace]:
    """g, [g,g], [[g,g],[g,g]], ... up to stabilization."""
    return _series(L, lower_central=False)


def lower_central_series(L: LieAlgebra) -> list[Subspace]:
    return _series(L, lower_central=True)


def is_abelian(L: LieAlgebra) -> bool:
    return not L.nonzero_brackets()


def is_solvable(L: LieAlgebra) -> bool:
    return derived_series(L)[-1].dim == 0


def is_nilpotent(L: LieAlgebra) -> bool:
    return lower_central_series(L)[-1].dim == 0


def killing_form(L: LieAlgebra) -> Matrix:
    ads = [L.ad_basis(i) for i in range(L.dim)]
    n = L.dim
    B = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            # tr(ad_i ad_j) = sum_{a,b} ad_i[a][b] ad_j[b][a]
            v = sum((ads[i][a][b] * ads[j][b][a] for a in range(n) for b in range(n)), ZERO)
            B[i][j] = B[j][i] = v
    return rl.mat(B)


def is_semisimple(L: LieAlgebra) -> bool:
    """Cartan's criterion; the zero algebra counts as semisimple."""
    return rl.determinant(killing_form(L)) != 0


def centralizer(L: LieAlgebra, J: Subspace) -> Subspace:
    """{x : [x, y] = 0 for all y in J}."""
    rows = []
    for y in J.basis:
        # [x, y] = -ad(y) x
        rows.extend(L.ad(y))
    rows = [r for r in rows if any(r)]
    return Subspace(L.dim, rl.kernel_basis(rows, L.dim))


def center(L: LieAlgebra) -> Subspace:
    return centralizer(L, Subspace.whole(L.dim))


def is_ideal(L: LieAlgebra, J: Subspace) -> bool:
    return all(J.contains(L.bracket(rl.unit(L.dim, i), v)) for i in range(L.dim) for v in J.basis)


def is_subalgebra(L: LieAlgebra, J: Subspace) -> bool:
    return all(J.contains(L.bracket(u, v)) for u in J.basis for v in J.basis)


def restrict_algebra(L: LieAlgebra, J: Subspace) -> LieAlgebra:
    """The subalgebra J as an algebra in its own basis."""
    if not is_subalgebra(L, J):
        raise ValueError("subspace is not a subalgebra")
    m = J.dim
    br = {}
    for a in range(m):
        for b in range(a + 1, m):
            coords = rl.coordinates(J.basis, L.bracket(J.basis[a], J.basis[b]))
            if any(coords):
                br[(a, b)] = {k: v for k, v in enumerate(coords) if v}
    return LieAlgebra(m, br, name=f"{L.name}|sub")


def radical(L: LieAlgebra) -> Subspace:
    """Maximal solvable ideal, as the Killing-orthogonal of [g, g]."""
    D = derived_ideal(L)
    B = killing_form(L)
    R = Subspace(L.dim, rl.orthogonal_complement(B, D.basis, L.dim))
    if not is_ideal(L, R) or not is_solvable(restrict_algebra(L, R)):
        raise AssertionError("radical computation produced a non-solvable or non-ideal subspace")
    return R


def is_unimodular(L: LieAlgebra) -> bool:
    return all(rl.trace(L.ad_basis(i)) == 0 for i in range(L.dim))


def derivation_residual(L: LieAlgebra, D: Sequence[Sequence]) -> list[tuple[int, int]]:
    """Basis pairs (i, j) where D[e_i, e_j] != [D e_i, e_j] + [e_i, D e_j]."""
    n = L.dim
    if rl.shape(D) != (n, n):
        raise rl.ShapeError("derivation matrix has the wrong shape")
    cols = rl.transpose(D)  # cols[i] = D e_i
    bad = []
    for i in range(n):
        for j in range(i + 1, n):
            lhs = rl.matvec(D, L.c[i][j])
            rhs = rl.vadd(L.bracket(cols[i], rl.unit(n, j)), L.bracket(rl.unit(n, i), cols[j]))
            if lhs != rhs:
                bad.append((i, j))
    return bad


def is_derivation(L: LieAlgebra, D: Sequence[Sequence]) -> bool:
    return not derivation_residual(L, D)


def is_self_adjoint(D: Sequence[Sequence], g: Sequence[Sequence]) -> bool:
    """g(Dx, y) = g(x, Dy), i.e. D^T g = g D."""
    return rl.matmul(rl.transpose(D), g) == rl.matmul(g, D)


def is_skew_adjoint(D: Sequence[Sequence], g: Sequence[Sequence]) -> bool:
    return rl.add(rl.matmul(rl.transpose(D), g), rl.matmul(g, D)) == rl.zeros(len(D))


def is_symmetric_derivation(L: LieAlgebra, D: Sequence[Sequence], g: Sequence[Sequence]) -> bool:
    return is_derivation(L, D) and is_self_adjoint(rl.mat(D), rl.mat(g))


@dataclass(frozen=True)
class Derivation:
    algebra: LieAlgebra
    matrix: Matrix

    def __post_init__(self):
        object.__setattr__(self, "matrix", rl.mat(self.matrix))
        bad = derivation_residual(self.algebra, self.matrix)
        if bad:
            i, j = bad[0]
            raise ValueError(f"not a derivation: Leibniz rule fails on (e{i + 1}, e{j + 1})")


def restricted_ad(L: LieAlgebra, x: Sequence, J: Subspace) -> Matrix:
    """Matrix of ad(x) on an ad(x)-invariant subspace J, in J's basis."""
    cols = []
    for v in J.basis:
        coords = rl.coordinates(J.basis, L.bracket(x, v))
        if coords is None:
            raise ValueError("subspace is not invariant under ad(x)")
        cols.append(coords)
    return rl.transpose(cols) if cols else ()
