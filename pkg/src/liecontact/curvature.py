"""Left-invariant (pseudo-)Riemannian geometry computed from structure constants.

Everything is evaluated on left-invariant fields, so the Levi-Civita
connection is the constant tensor given by the Koszul formula

    2 g(nabla_x y, z) = g([x,y], z) - g([y,z], x) + g([z,x], y)

and R(x, y) = [nabla_x, nabla_y] - nabla_[x,y]. Sign convention: the
sectional curvature is K(x, y) = g(R(x,y)y, x) / |x ^ y|^2, positive on
spheres.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import ratlin as rl
from .contact import SearchConfig, differential, is_contact, reeb
from .liealg import LieAlgebra, Subspace, derived_ideal, is_solvable, is_skew_adjoint, restricted_ad
from .ratlin import ZERO, Matrix, Vector

HALF = Fraction(1, 2)


class DegenerateMetric(ValueError):
    pass


@dataclass(frozen=True)
class Metric:
    matrix: Matrix
    riemannian: bool = field(init=False)
    inverse: Matrix = field(init=False, repr=False)

    def __post_init__(self):
        m = rl.mat(self.matrix)
        if not rl.is_symmetric(m):
            raise ValueError("metric matrix is not symmetric")
        if rl.determinant(m) == 0:
            raise DegenerateMetric("metric matrix is degenerate")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "riemannian", rl.symmetric_signature(m) == (len(m), 0, 0))
        object.__setattr__(self, "inverse", rl.inverse(m))

    @classmethod
    def identity(cls, n: int) -> "Metric":
        return cls(rl.identity(n))

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def __call__(self, x: Sequence, y: Sequence) -> Fraction:
        return rl.dot(x, rl.matvec(self.matrix, y))


def _as_metric(g) -> Metric:
    return g if isinstance(g, Metric) else Metric(g)


@dataclass(frozen=True)
class Connection:
    """gamma[i][j] = nabla_{e_i} e_j as a coordinate vector."""

    gamma: tuple[tuple[Vector, ...], ...]

    def operator(self, i: int) -> Matrix:
        """Matrix of y -> nabla_{e_i} y."""
        return rl.transpose(self.gamma[i])

    def along(self, x: Sequence) -> Matrix:
        n = len(self.gamma)
        out = rl.zeros(n)
        for i, xi in enumerate(x):
            if xi:
                out = rl.add(out, rl.scale(xi, self.operator(i)))
        return out

    def torsion_residual(self, L: LieAlgebra) -> list[tuple[int, int]]:
        n = len(self.gamma)
        return [
            (i, j)
            for i in range(n)
            for j in range(i + 1, n)
            if rl.vadd(self.gamma[i][j], rl.vscale(-1, self.gamma[j][i])) != L.c[i][j]
        ]

    def metric_residual(self, g: Metric) -> list[tuple[int, int, int]]:
        n = len(self.gamma)
        bad = []
        for x in range(n):
            for y in range(n):
                for z in range(y, n):
                    s = g(self.gamma[x][y], rl.unit(n, z)) + g(rl.unit(n, y), self.gamma[x][z])
                    if s:
                        bad.append((x, y, z))
        return bad


def levi_civita(L: LieAlgebra, g) -> Connection:
    g = _as_metric(g)
    n = L.dim
    if g.dim != n:
        raise rl.ShapeError("metric and algebra dimensions differ")
    G = g.matrix
    # low[x][y][z] = g([e_x, e_y], e_z)
    low = [[[sum((L.c[x][y][k] * G[k][z] for k, _ in L._nz[x][y]), ZERO) for z in range(n)]
            for y in range(n)] for x in range(n)]
    gamma = []
    for i in range(n):
        row = []
        for j in range(n):
            v = [HALF * (low[i][j][z] - low[j][z][i] + low[z][i][j]) for z in range(n)]
            row.append(rl.matvec(g.inverse, v))
        gamma.append(tuple(row))
    conn = Connection(tuple(gamma))
    assert not conn.torsion_residual(L) and not conn.metric_residual(g)
    return conn


@dataclass(frozen=True)
class CurvatureTensor:
    """op[i][j] = matrix of R(e_i, e_j); R[i][j][k][l] = g(R(e_i,e_j)e_k, e_l)."""

    op: tuple[tuple[Matrix, ...], ...]
    R: tuple

    @property
    def dim(self) -> int:
        return len(self.op)

    def is_zero(self) -> bool:
        return all(rl.is_zero_matrix(m) for row in self.op for m in row)

    def symmetry_residuals(self) -> dict[str, int]:
        """Counts of index tuples violating each identity (all zero for a true curvature tensor)."""
        n, R = self.dim, self.R
        counts = {"antisym_ij": 0, "antisym_kl": 0, "pair": 0, "bianchi": 0}
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    for l in range(n):
                        r = R[i][j][k][l]
                        if r != -R[j][i][k][l]:
                            counts["antisym_ij"] += 1
                        if r != -R[i][j][l][k]:
                            counts["antisym_kl"] += 1
                        if r != R[k][l][i][j]:
                            counts["pair"] += 1
                        if r + R[j][k][i][l] + R[k][i][j][l]:
                            counts["bianchi"] += 1
        return counts


def _operators(L: LieAlgebra, conn: Connection) -> tuple[tuple[Matrix, ...], ...]:
    n = L.dim
    N = [conn.operator(i) for i in range(n)]
    ops = []
    for i in range(n):
        row = []
        for j in range(n):
            m = rl.commutator(N[i], N[j])
            for l, c in L._nz[i][j]:
                m = rl.sub(m, rl.scale(c, N[l]))
            row.append(m)
        ops.append(tuple(row))
    return tuple(ops)


def curvature_tensor(L: LieAlgebra, g, conn: Connection | None = None) -> CurvatureTensor:
    g = _as_metric(g)
    conn = conn or levi_civita(L, g)
    ops = _operators(L, conn)
    n = L.dim
    G = g.matrix
    R = tuple(
        tuple(
            tuple(
                tuple(sum((ops[i][j][m][k] * G[m][l] for m in range(n)), ZERO) for l in range(n))
                for k in range(n)
            )
            for j in range(n)
        )
        for i in range(n)
    )
    return CurvatureTensor(ops, R)


def ricci(L: LieAlgebra, g, curv: CurvatureTensor | None = None) -> Matrix:
    """Ric(y, z) = trace(x -> R(x, y) z)."""
    curv = curv or curvature_tensor(L, g)
    n = L.dim
    return rl.mat([[sum((curv.op[i][j][i][k] for i in range(n)), ZERO) for k in range(n)] for j in range(n)])


def scalar(L: LieAlgebra, g, curv: CurvatureTensor | None = None) -> Fraction:
    g = _as_metric(g)
    return rl.trace(rl.matmul(g.inverse, ricci(L, g, curv)))


def _tensor4(R, x, y, z, w) -> Fraction:
    n = len(R)
    total = ZERO
    for i in range(n):
        if not x[i]:
            continue
        for j in range(n):
            if not y[j]:
                continue
            for k in range(n):
                if not z[k]:
                    continue
                f = x[i] * y[j] * z[k]
                total += f * sum((R[i][j][k][l] * w[l] for l in range(n) if w[l]), ZERO)
    return total


def sectional(L: LieAlgebra, g, x: Sequence, y: Sequence, curv: CurvatureTensor | None = None) -> Fraction:
    g = _as_metric(g)
    if not g.riemannian:
        raise ValueError("sectional curvature is only offered for positive definite metrics")
    x, y = rl.vec(x), rl.vec(y)
    area = g(x, x) * g(y, y) - g(x, y) ** 2
    if area == 0:
        raise ValueError("x and y are linearly dependent")
    curv = curv or curvature_tensor(L, g)
    return _tensor4(curv.R, x, y, y, x) / area


def basis_sectionals(L: LieAlgebra, g, curv: CurvatureTensor | None = None) -> dict[tuple[int, int], Fraction]:
    curv = curv or curvature_tensor(L, g)
    n = L.dim
    return {(i, j): sectional(L, g, rl.unit(n, i), rl.unit(n, j), curv)
            for i in range(n) for j in range(i + 1, n)}


def is_flat(L: LieAlgebra, g) -> bool:
    return curvature_tensor(L, g).is_zero()


@dataclass(frozen=True)
class FlatDecomposition:
    """g = A1 + A2 with A1 = ker(x -> nabla_x) an abelian ideal and A2 its g-orthogonal complement."""

    A1: Subspace
    A2: Subspace


def flat_decomposition(L: LieAlgebra, g) -> FlatDecomposition | None:
    g = _as_metric(g)
    conn = levi_civita(L, g)
    if not curvature_tensor(L, g, conn).is_zero():
        return None
    n = L.dim
    N = [conn.operator(i) for i in range(n)]
    rows = [[N[i][m][k] for i in range(n)] for m in range(n) for k in range(n)]
    rows = [r for r in rows if any(r)]
    A1 = Subspace(n, rl.kernel_basis(rows, n))
    A2 = Subspace(n, rl.orthogonal_complement(g.matrix, A1.basis, n))
    _check_flat_decomposition(L, g, A1, A2)
    return FlatDecomposition(A1, A2)


def _check_flat_decomposition(L: LieAlgebra, g: Metric, A1: Subspace, A2: Subspace) -> None:
    n = L.dim
    if A1.dim + A2.dim != n:
        raise AssertionError("A1 and A2 do not span the algebra")
    for u in A1.basis:
        for v in A1.basis:
            if any(L.bracket(u, v)):
                raise AssertionError("A1 is not abelian")
        for i in range(n):
            if not A1.contains(L.bracket(rl.unit(n, i), u)):
                raise AssertionError("A1 is not an ideal")
        for a in A2.basis:
            if g(u, a):
                raise AssertionError("A1 and A2 are not orthogonal")
    for a in A2.basis:
        for b in A2.basis:
            if any(L.bracket(a, b)):
                raise AssertionError("A2 is not an abelian subalgebra")
        if A1.dim:
            m = restricted_ad(L, a, A1)
            gram = rl.mat([[g(u, v) for v in A1.basis] for u in A1.basis])
            if not is_skew_adjoint(m, gram):
                raise AssertionError("A2 does not act skew-adjointly on A1")


def einstein_residual(L: LieAlgebra, g, ric: Matrix | None = None) -> tuple[Fraction, Fraction]:
    """(lambda, max |Ric - lambda g|) with lambda = scal / dim."""
    g = _as_metric(g)
    ric = ric if ric is not None else ricci(L, g)
    lam = rl.trace(rl.matmul(g.inverse, ric)) / L.dim
    res = max((abs(r - lam * m) for rr, gg in zip(ric, g.matrix) for r, m in zip(rr, gg)), default=ZERO)
    return lam, res


def is_einstein(L: LieAlgebra, g, tol=0) -> Fraction | None:
    """The Einstein constant, or None. ``tol`` > 0 accepts a max-norm residual up to tol."""
    lam, res = einstein_residual(L, g)
    return lam if res <= tol else None


def is_standard_einstein(L: LieAlgebra, g, tol=0) -> bool:
    """Einstein, and the g-orthogonal complement of [g, g] is an abelian subalgebra."""
    g = _as_metric(g)
    if is_einstein(L, g, tol) is None:
        return False
    D = derived_ideal(L)
    A = rl.orthogonal_complement(g.matrix, D.basis, L.dim)
    return all(not any(L.bracket(a, b)) for a in A for b in A)


@dataclass(frozen=True)
class HeintzeReport:
    solvable: bool
    derived_codim: int
    witness: Vector | None = None
    charpoly: rl.Polynomial | None = None
    tried: int = 0
    budget: int = 0

    @property
    def passes(self) -> bool:
        return self.witness is not None

    @property
    def summary(self) -> str:
        if self.passes:
            return "witness found"
        if not self.solvable:
            return "not solvable"
        if self.derived_codim != 1:
            return f"derived ideal has codimension {self.derived_codim}"
        return f"no witness found (budget {self.budget})"


def heintze_negative_possible(L: LieAlgebra, budget: int = 256, config: SearchConfig = SearchConfig()) -> HeintzeReport:
    """Search for A whose ad restricted to [g, g] has spectrum in Re > 0.

    Failure after the budget is not a proof that no such A exists.
    """
    solv = is_solvable(L)
    N = derived_ideal(L)
    if not solv or N.codim != 1:
        return HeintzeReport(solv, N.codim, budget=budget)
    n = L.dim
    candidates = [rl.unit(n, i) for i in range(n) if not N.contains(rl.unit(n, i))]
    rng = random.Random(config.seed)
    tried = 0
    for k in range(len(candidates) + budget):
        if k < len(candidates):
            A = candidates[k]
        else:
            A = tuple(Fraction(rng.randint(-config.bound, config.bound), rng.randint(1, config.bound))
                      for _ in range(n))
        tried += 1
        p = rl.characteristic_polynomial(restricted_ad(L, A, N))
        if rl.all_roots_positive_real_part(p):
            return HeintzeReport(solv, 1, A, p, tried, budget)
    return HeintzeReport(solv, 1, None, None, tried, budget)


def nabla_R_residual(L: LieAlgebra, g, conn: Connection | None = None,
                     curv: CurvatureTensor | None = None) -> int:
    """Number of (a, i, j) with (nabla_{e_a} R)(e_i, e_j) != 0."""
    g = _as_metric(g)
    conn = conn or levi_civita(L, g)
    curv = curv or curvature_tensor(L, g, conn)
    n = L.dim
    ops = curv.op
    bad = 0
    for a in range(n):
        Na = conn.operator(a)
        for i in range(n):
            for j in range(i + 1, n):
                m = rl.commutator(Na, ops[i][j])
                for mm in range(n):
                    if Na[mm][i]:
                        m = rl.sub(m, rl.scale(Na[mm][i], ops[mm][j]))
                    if Na[mm][j]:
                        m = rl.sub(m, rl.scale(Na[mm][j], ops[i][mm]))
                if not rl.is_zero_matrix(m):
                    bad += 1
    return bad


def is_locally_symmetric(L: LieAlgebra, g) -> bool:
    return nabla_R_residual(L, g) == 0


def constant_curvature_form(L: LieAlgebra) -> Vector | None:
    """The covector l with [x, y] = l(y) x - l(x) y for all x, y, if one exists."""
    n = L.dim
    rows, rhs = [], []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                # c_ijk = l_j delta_ik - l_i delta_jk
                row = [ZERO] * n
                if k == i:
                    row[j] += 1
                if k == j:
                    row[i] -= 1
                if any(row) or L.c[i][j][k]:
                    rows.append(row)
                    rhs.append(L.c[i][j][k])
    if not rows:
        return (ZERO,) * n
    sol, _ = rl.solve_linear_system(rows, rhs)
    return sol


# -- contact metric structures -------------------------------------------------
#
# ``dform_scale`` fixes the normalization of d eta in g(X, phi Y) = d eta(X, Y).
# With d eta(x, y) = -eta([x, y]) (scale 1) the identity Ric(xi, xi) = 2n for
# K-contact structures does not hold; it holds for the convention
# d eta(X, Y) = 1/2 (X eta(Y) - Y eta(X) - eta([X, Y])), i.e. scale 1/2.


def solve_phi(L: LieAlgebra, g, eta: Sequence, dform_scale=HALF) -> Matrix:
    """phi = g^-1 (s * d eta), so that g(X, phi Y) = s * d eta(X, Y)."""
    g = _as_metric(g)
    if L.dim % 2 == 0 or not is_contact(L, eta):
        raise ValueError("eta is not a contact form")
    W = rl.scale(dform_scale, differential(L, eta))
    return rl.matmul(g.inverse, W)


def contact_metric_check(L: LieAlgebra, g, eta: Sequence, phi: Sequence[Sequence], dform_scale=HALF) -> bool:
    g = _as_metric(g)
    eta = rl.vec(eta)
    phi = rl.mat(phi)
    W = rl.scale(dform_scale, differential(L, eta))
    if rl.matmul(g.matrix, phi) != W:
        return False
    lhs = rl.matmul(rl.transpose(phi), rl.matmul(g.matrix, phi))
    rhs = rl.sub(g.matrix, [[a * b for b in eta] for a in eta])
    return lhs == rhs


@dataclass(frozen=True)
class KContactReport:
    contact_metric: bool
    reeb_killing: bool
    reeb: Vector
    ricci_reeb: Fraction

    @property
    def k_contact(self) -> bool:
        return self.contact_metric and self.reeb_killing


def k_contact_report(L: LieAlgebra, g, eta: Sequence, dform_scale=HALF) -> KContactReport:
    g = _as_metric(g)
    if not g.riemannian:
        raise ValueError("contact metric structures need a Riemannian metric")
    phi = solve_phi(L, g, eta, dform_scale)
    xi = reeb(L, eta)
    cm = contact_metric_check(L, g, eta, phi, dform_scale)
    killing = is_skew_adjoint(L.ad(xi), g.matrix)
    ric = ricci(L, g)
    return KContactReport(cm, killing, xi, rl.dot(xi, rl.matvec(ric, xi)))


def is_K_contact(L: LieAlgebra, g, eta: Sequence, dform_scale=HALF) -> bool:
    return k_contact_report(L, g, eta, dform_scale).k_contact
