"""Contact and exact symplectic forms on Lie algebras.

A covector eta is a contact form on a (2n+1)-dimensional algebra when
(d eta)^n ^ eta != 0, with d eta(x, y) = -eta([x, y]). The coefficient of
e1* ^ ... ^ e_dim* (input basis order) is the *contact scalar*; it is a
homogeneous polynomial of degree n+1 in the coefficients of eta, so it
vanishes identically iff it vanishes on the product grid {0..n+1}^(2n+1).
The same argument with degree m and m+1 points certifies the Pfaffian of
d alpha on a 2m-dimensional algebra.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import factorial
from typing import Sequence

from . import ratlin as rl
from .liealg import LieAlgebra, Subspace
from .ratlin import ZERO, Matrix, Vector

EXISTS = "EXISTS"
NONE = "NONE"


@dataclass(frozen=True)
class SearchConfig:
    """Knobs for the witness searches; defaults are what the CLI uses."""

    seed: int = 0
    attempts: int = 64  # random covectors tried before the grid sweep
    bound: int = 10  # |numerator|, denominator bound for random rationals
    workers: int = 1  # processes for the grid sweep


@dataclass(frozen=True)
class DecisionOutcome:
    verdict: str
    witness: Vector | None = None
    source: str = ""  # "basis-dual", "random", "grid", or "" for NONE
    certificate: dict = field(default_factory=dict)

    @property
    def exists(self) -> bool:
        return self.verdict == EXISTS


def _check_covector(L: LieAlgebra, eta: Sequence) -> Vector:
    eta = rl.vec(eta)
    if len(eta) != L.dim:
        raise rl.ShapeError(f"covector of length {len(eta)} on a {L.dim}-dimensional algebra")
    return eta


def differential(L: LieAlgebra, eta: Sequence) -> Matrix:
    """Skew matrix of d eta(e_i, e_j) = -eta([e_i, e_j])."""
    eta = _check_covector(L, eta)
    n = L.dim
    out = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = -rl.dot(eta, L.c[i][j])
            out[i][j] = v
            out[j][i] = -v
    return rl.mat(out)


def contact_scalar(L: LieAlgebra, eta: Sequence) -> Fraction:
    """Coefficient of e1*^...^e_{2n+1}* in (d eta)^n ^ eta.

    Expanded as sum_i (-1)^(i+1) eta_i n! Pf(d eta without row/column i).
    The sign depends on the basis order.
    """
    if L.dim % 2 == 0:
        raise ValueError("contact forms live on odd-dimensional algebras")
    eta = _check_covector(L, eta)
    n = L.dim // 2
    w = differential(L, eta)
    total = ZERO
    for i in range(L.dim):
        if not eta[i]:
            continue
        keep = [k for k in range(L.dim) if k != i]
        minor = [[w[a][b] for b in keep] for a in keep]
        term = eta[i] * rl.pfaffian(minor)
        total += term if i % 2 == 0 else -term
    return factorial(n) * total


def is_contact(L: LieAlgebra, eta: Sequence) -> bool:
    return contact_scalar(L, eta) != 0


def is_contact_by_rank(L: LieAlgebra, eta: Sequence) -> bool:
    """Second route: rank d eta = 2n and eta does not vanish on the kernel of d eta."""
    if L.dim % 2 == 0:
        raise ValueError("contact forms live on odd-dimensional algebras")
    eta = _check_covector(L, eta)
    w = differential(L, eta)
    if rl.rank(w) != L.dim - 1:
        return False
    (xi,) = rl.kernel_basis(w)
    return rl.dot(eta, xi) != 0


def reeb(L: LieAlgebra, eta: Sequence) -> Vector:
    """The unique xi with d eta(xi, .) = 0 and eta(xi) = 1."""
    eta = _check_covector(L, eta)
    if L.dim % 2 == 0 or not is_contact(L, eta):
        raise ValueError("Reeb vector requested for a covector that is not a contact form")
    w = differential(L, eta)
    A = list(w) + [eta]
    b = [ZERO] * L.dim + [Fraction(1)]
    xi, kernel = rl.solve_linear_system(A, b)
    assert xi is not None and not kernel
    return xi


def two_form_radical(omega: Sequence[Sequence]) -> Subspace:
    n = len(omega)
    if not rl.is_skew(omega):
        raise ValueError("not a skew matrix")
    return Subspace(n, rl.kernel_basis(omega, n))


def kernel_not_subalgebra(L: LieAlgebra, eta: Sequence) -> bool:
    """True when some bracket of two vectors in ker(eta) leaves ker(eta)."""
    eta = _check_covector(L, eta)
    if not any(eta):
        raise ValueError("kernel of the zero covector is the whole algebra")
    ker = rl.kernel_basis([eta])
    return any(rl.dot(eta, L.bracket(u, v)) != 0 for a, u in enumerate(ker) for v in ker[a + 1:])


def exact_symplectic_pfaffian(L: LieAlgebra, alpha: Sequence) -> Fraction:
    if L.dim % 2:
        raise ValueError("exact symplectic forms live on even-dimensional algebras")
    return rl.pfaffian(differential(L, alpha))


# -- grid machinery ----------------------------------------------------------


class _IntegerForms:
    """Structure constants scaled to integers, for fast exact grid evaluation.

    Scaling the bracket by a positive integer multiplies d eta by the same
    factor, so nonvanishing of the contact scalar or Pfaffian is unchanged.
    """

    def __init__(self, L: LieAlgebra, bordered: bool):
        self.dim = L.dim
        self.bordered = bordered
        den = L.structure_common_denominator()
        self.terms = [
            (i, j, [(k, int(c * den)) for k, c in L._nz[i][j]])
            for i in range(L.dim)
            for j in range(i + 1, L.dim)
            if L._nz[i][j]
        ]

    def nonzero(self, eta: Sequence[int]) -> bool:
        n = self.dim
        off = 1 if self.bordered else 0
        size = n + off
        M = [[0] * size for _ in range(size)]
        if self.bordered:
            M[0][1:] = list(eta)
            for j in range(n):
                M[j + 1][0] = -eta[j]
        for i, j, ks in self.terms:
            v = 0
            for k, c in ks:
                v -= eta[k] * c
            if v:
                M[i + off][j + off] = v
                M[j + off][i + off] = -v
        return not rl.integer_determinant_is_zero(M)


def _sweep_chunk(args):
    forms, npts, first = args
    rest = forms.dim - 1
    for tail in product(range(npts), repeat=rest):
        point = (first,) + tail
        if forms.nonzero(point):
            return point
    return None


def _grid_sweep(forms: _IntegerForms, npts: int, workers: int) -> tuple[tuple[int, ...] | None, int]:
    """First grid point (lexicographic) where the form is nondegenerate, and evaluations spent."""
    n = forms.dim
    if n == 0:
        return None, 0
    chunks = [(forms, npts, v) for v in range(npts)]
    per_chunk = npts ** (n - 1)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_sweep_chunk, chunks))
        for idx, hit in enumerate(results):
            if hit is not None:
                return hit, per_chunk * idx + _index_in_chunk(hit[1:], npts) + 1
        return None, npts ** n
    for idx, chunk in enumerate(chunks):
        hit = _sweep_chunk(chunk)
        if hit is not None:
            return hit, per_chunk * idx + _index_in_chunk(hit[1:], npts) + 1
    return None, npts ** n


def _index_in_chunk(tail: Sequence[int], npts: int) -> int:
    idx = 0
    for t in tail:
        idx = idx * npts + t
    return idx


def _random_covector(rng: random.Random, n: int, bound: int) -> Vector:
    return tuple(Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(n))


def _decide(L: LieAlgebra, test, forms: _IntegerForms, degree: int, config: SearchConfig) -> DecisionOutcome:
    n = L.dim
    for i in range(n):
        e = rl.unit(n, i)
        if test(e):
            return DecisionOutcome(EXISTS, e, "basis-dual")
    rng = random.Random(config.seed)
    for _ in range(config.attempts):
        eta = _random_covector(rng, n, config.bound)
        if test(eta):
            return DecisionOutcome(EXISTS, eta, "random")
    npts = degree + 1
    hit, spent = _grid_sweep(forms, npts, config.workers)
    cert = {
        "degree_bound": degree,
        "points_per_coordinate": npts,
        "grid": f"{{0..{degree}}}^{n}",
        "variables": n,
        "evaluations": spent,
    }
    if hit is not None:
        eta = rl.vec(hit)
        assert test(eta), "integer fast path disagrees with exact evaluation"
        return DecisionOutcome(EXISTS, eta, "grid", cert)
    return DecisionOutcome(NONE, None, "", cert)


def decide_contact_exists(L: LieAlgebra, config: SearchConfig = SearchConfig()) -> DecisionOutcome:
    """EXISTS with a witness, or NONE certified by the full (n+2)^(2n+1) grid."""
    if L.dim % 2 == 0:
        return DecisionOutcome(NONE, None, "", {"reason": "even dimension"})
    n = L.dim // 2
    forms = _IntegerForms(L, bordered=True)
    return _decide(L, lambda eta: is_contact(L, eta), forms, n + 1, config)


def decide_exact_symplectic_exists(L: LieAlgebra, config: SearchConfig = SearchConfig()) -> DecisionOutcome:
    if L.dim % 2:
        raise ValueError("exact symplectic forms live on even-dimensional algebras")
    m = L.dim // 2
    forms = _IntegerForms(L, bordered=False)
    return _decide(L, lambda a: exact_symplectic_pfaffian(L, a) != 0, forms, m, config)
