"""Ad-invariant symmetric bilinear forms (bi-invariant metrics at the algebra level)."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb
from typing import Sequence

from . import ratlin as rl
from .contact import SearchConfig, differential, is_contact
from .liealg import LieAlgebra, Subspace, derived_ideal
from .ratlin import ZERO, Matrix, Vector


@dataclass(frozen=True)
class BiinvariantReport:
    invariant_space_dim: int
    basis: tuple[Matrix, ...]
    nondegenerate_witness: Matrix | None = None
    signature: tuple[int, int, int] | None = None
    source: str = ""
    certificate: dict = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.nondegenerate_witness is not None


def _sym_index(n: int) -> list[tuple[int, int]]:
    return [(p, q) for p in range(n) for q in range(p, n)]


def invariance_residual(L: LieAlgebra, b: Sequence[Sequence]) -> list[tuple[int, int, int]]:
    """Triples (x, y, z) with b([x,y],z) + b(y,[x,z]) != 0."""
    n = L.dim
    bad = []
    for x in range(n):
        for y in range(n):
            for z in range(y, n):
                s = sum((L.c[x][y][k] * b[k][z] + L.c[x][z][k] * b[y][k] for k in range(n)), ZERO)
                if s:
                    bad.append((x, y, z))
    return bad


def ad_invariant_forms(L: LieAlgebra) -> tuple[Matrix, ...]:
    """Basis of symmetric b with b([x,y],z) + b(y,[x,z]) = 0 for all x, y, z."""
    n = L.dim
    idx = _sym_index(n)
    col = {pq: a for a, pq in enumerate(idx)}

    def var(p, q):
        return col[(p, q) if p <= q else (q, p)]

    rows = []
    for x in range(n):
        for y in range(n):
            for z in range(y, n):
                row = [ZERO] * len(idx)
                for k, c in L._nz[x][y]:
                    row[var(k, z)] += c
                for k, c in L._nz[x][z]:
                    row[var(y, k)] += c
                if any(row):
                    rows.append(row)
    sols = rl.kernel_basis(rows, len(idx)) if rows else tuple(rl.unit(len(idx), a) for a in range(len(idx)))
    out = []
    for s in sols:
        m = [[ZERO] * n for _ in range(n)]
        for a, (p, q) in enumerate(idx):
            m[p][q] = m[q][p] = s[a]
        out.append(rl.mat(m))
    return tuple(out)


def _combine(basis: Sequence[Matrix], t: Sequence) -> Matrix:
    n = len(basis[0])
    m = [[ZERO] * n for _ in range(n)]
    for ti, b in zip(t, basis):
        if ti:
            for i in range(n):
                for j in range(n):
                    m[i][j] += ti * b[i][j]
    return rl.mat(m)


def _normalize_sign(b: Matrix) -> tuple[Matrix, tuple[int, int, int]]:
    sig = rl.symmetric_signature(b)
    if sig[1] > sig[0]:
        b = rl.scale(-1, b)
        sig = (sig[1], sig[0], sig[2])
    return b, sig


def simplex_grid(k: int, d: int):
    """Points of N^k with coordinate sum <= d, by increasing sum."""
    for total in range(d + 1):
        for combo in combinations_with_replacement(range(k), total):
            t = [0] * k
            for i in combo:
                t[i] += 1
            yield t


def search_nondegenerate(basis: Sequence[Matrix], config: SearchConfig = SearchConfig()):
    """A nondegenerate member of span(basis), or a certificate that none exists.

    Returns (form, source, certificate) with form None on failure.
    det(sum t_i b_i) is a polynomial of total degree <= n in the t_i, so
    vanishing on every point of N^k with coordinate sum <= n (a unisolvent
    set for that degree) proves it is identically zero.
    """
    k, n = len(basis), len(basis[0])
    for b in basis:
        if rl.determinant(b) != 0:
            return b, "basis", {}
    rng = random.Random(config.seed)
    for _ in range(config.attempts):
        t = [Fraction(rng.randint(-config.bound, config.bound), rng.randint(1, config.bound)) for _ in range(k)]
        b = _combine(basis, t)
        if rl.determinant(b) != 0:
            return b, "random", {}
    evaluations = 0
    for t in simplex_grid(k, n):
        evaluations += 1
        b = _combine(basis, t)
        if rl.determinant(b) != 0:
            return b, "grid", {}
    return None, "", {
        "kind": "total-degree-grid",
        "degree_bound": n,
        "variables": k,
        "evaluations": evaluations,
        "expected": comb(n + k, k),
    }


def find_biinvariant_metric(L: LieAlgebra, config: SearchConfig = SearchConfig()) -> BiinvariantReport:
    """A nondegenerate ad-invariant form, or a certificate that none exists.

    NONE is certified by a common nonzero radical vector of the whole
    solution space when there is one, otherwise by the total-degree grid of
    search_nondegenerate. Witnesses are reported with at least as many
    positive as negative directions.
    """
    basis = ad_invariant_forms(L)
    k, n = len(basis), L.dim
    if n == 0:
        return BiinvariantReport(0, (), (), (0, 0, 0), "empty")
    if k == 0:
        return BiinvariantReport(0, (), certificate={"kind": "no-invariant-forms"})
    stacked = [row for b in basis for row in b]
    common = rl.kernel_basis(stacked)
    if common:
        return BiinvariantReport(k, basis, certificate={
            "kind": "common-radical",
            "vector": [str(x) for x in common[0]],
        })
    b, source, cert = search_nondegenerate(basis, config)
    if b is None:
        return BiinvariantReport(k, basis, certificate=cert)
    b, sig = _normalize_sign(b)
    return BiinvariantReport(k, basis, b, sig, source)


def is_orthogonal(L: LieAlgebra, config: SearchConfig = SearchConfig()) -> bool:
    return find_biinvariant_metric(L, config).found


def theta(b: Sequence[Sequence], x: Sequence) -> Vector:
    """The covector y -> b(x, y)."""
    return rl.matvec(rl.transpose(b), x)


def theta_inverse(b: Sequence[Sequence], eta: Sequence) -> Vector:
    x, kernel = rl.solve_linear_system(rl.transpose(b), eta)
    if x is None:
        raise ValueError("covector is not in the image of theta")
    if kernel:
        raise ValueError("form is degenerate, theta is not invertible")
    return x


@dataclass(frozen=True)
class Lemma3Report:
    xbar: Vector
    kernel_is_line_of_xbar: bool
    kernel_plus_image_is_whole: bool
    perfect: bool  # algebra equals its derived ideal
    radical_equals_kernel: bool

    @property
    def ok(self) -> bool:
        return (self.kernel_is_line_of_xbar and self.kernel_plus_image_is_whole
                and self.perfect and self.radical_equals_kernel)


def verify_lemma3(L: LieAlgebra, b: Sequence[Sequence], eta: Sequence) -> Lemma3Report:
    """For invariant nondegenerate b and contact eta: x = theta^-1(eta) has ker ad_x = R x,
    g = ker ad_x + Im ad_x, and g = [g, g]."""
    b = rl.mat(b)
    if invariance_residual(L, b):
        raise ValueError("b is not ad-invariant")
    if rl.determinant(b) == 0:
        raise ValueError("b is degenerate")
    if L.dim % 2 == 0 or not is_contact(L, eta):
        raise ValueError("eta is not a contact form")
    xbar = theta_inverse(b, eta)
    A = L.ad(xbar)
    ker = Subspace(L.dim, rl.kernel_basis(A))
    img = Subspace.spanned_by(rl.transpose(A), L.dim)
    line = Subspace.spanned_by([xbar], L.dim)
    whole = Subspace.spanned_by(list(ker.basis) + list(img.basis), L.dim)
    rad = Subspace(L.dim, rl.kernel_basis(differential(L, eta)))
    return Lemma3Report(
        xbar=xbar,
        kernel_is_line_of_xbar=ker == line,
        kernel_plus_image_is_whole=whole.dim == L.dim and ker.dim + img.dim == L.dim,
        perfect=derived_ideal(L).dim == L.dim,
        radical_equals_kernel=rad == ker,
    )

