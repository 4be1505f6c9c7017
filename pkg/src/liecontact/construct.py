"""Builders for the named algebras and the composition operations.

Index conventions (0-based internally, names as printed):

* ``heisenberg(n)``: basis e1..e2n, e0 with [e_i, e_{n+i}] = e0.
* ``hyperbolic(n)``: basis e0, e1..en with [e0, x] = x.
* ``gn_family``: basis e1..e2n, e0, e_{2n+1}, e_{2n+2}; e_{2n+2} acts diagonally
  on the codimension-one ideal span(e1..e2n, e0, e_{2n+1}).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from . import ratlin as rl
from .contact import SearchConfig, exact_symplectic_pfaffian, is_contact
from .curvature import Metric, einstein_residual, is_standard_einstein, ricci
from .liealg import (LieAlgebra, derivation_residual, derived_ideal, is_self_adjoint,
                     is_solvable, validate)
from .ratlin import ZERO


def abelian(n: int) -> LieAlgebra:
    return LieAlgebra(n, {}, name=f"r{n}")


def heisenberg(n: int) -> LieAlgebra:
    if n < 1:
        raise ValueError("heisenberg(n) needs n >= 1")
    names = [f"e{i}" for i in range(1, 2 * n + 1)] + ["e0"]
    br = {(i, n + i): {2 * n: 1} for i in range(n)}
    return LieAlgebra(2 * n + 1, br, names, name=f"h{2 * n + 1}")


def sl2() -> LieAlgebra:
    # [e3,e1] = 2e1, [e3,e2] = -2e2, [e1,e2] = e3
    return LieAlgebra(3, {(2, 0): {0: 2}, (2, 1): {1: -2}, (0, 1): {2: 1}}, name="sl2")


def so3() -> LieAlgebra:
    return LieAlgebra(3, {(0, 1): {2: 1}, (1, 2): {0: 1}, (2, 0): {1: 1}}, name="so3")


def e2() -> LieAlgebra:
    # rigid motions of the plane: e3 rotates span(e1, e2)
    return LieAlgebra(3, {(2, 0): {1: 1}, (2, 1): {0: -1}}, name="e2")


def oscillator() -> LieAlgebra:
    return LieAlgebra(
        4,
        {(0, 1): {2: 1}, (0, 2): {1: -1}, (1, 2): {3: 1}},
        ["h", "p", "q", "z"],
        name="oscillator",
    )


def aff1() -> LieAlgebra:
    return LieAlgebra(2, {(0, 1): {1: 1}}, name="aff1")


def hyperbolic(n: int) -> LieAlgebra:
    """R^n x| R with ad(e0) = identity on R^n (real hyperbolic space)."""
    if n < 1:
        raise ValueError("hyperbolic(n) needs n >= 1")
    names = ["e0"] + [f"e{i}" for i in range(1, n + 1)]
    return LieAlgebra(n + 1, {(0, i): {i: 1} for i in range(1, n + 1)}, names, name=f"hyp{n}")


def complex_hyperbolic(m: int) -> LieAlgebra:
    """Solvable model of complex hyperbolic (m+1)-space, dim 2m+2.

    Basis a, x1..xm, y1..ym, z: a acts by 1/2 on the x and y, by 1 on z,
    and [x_i, y_i] = z. With the identity metric it is standard Einstein
    with constant -(m+2)/2.
    """
    if m < 1:
        raise ValueError("complex_hyperbolic(m) needs m >= 1")
    half = Fraction(1, 2)
    z = 2 * m + 1
    br = {(0, i): {i: half} for i in range(1, z)}
    br[(0, z)] = {z: 1}
    for i in range(1, m + 1):
        br[(i, m + i)] = {z: 1}
    if m == 1:
        names = ["a", "x", "y", "z"]
    else:
        names = ["a"] + [f"x{i}" for i in range(1, m + 1)] + [f"y{i}" for i in range(1, m + 1)] + ["z"]
    return LieAlgebra(2 * m + 2, br, names, name=f"chyp{m + 1}")


def direct_sum(L1: LieAlgebra, L2: LieAlgebra, name: str | None = None) -> LieAlgebra:
    n1 = L1.dim
    br = {}
    for i, j, k, c in L1.nonzero_brackets():
        br.setdefault((i, j), {})[k] = c
    for i, j, k, c in L2.nonzero_brackets():
        br.setdefault((n1 + i, n1 + j), {})[n1 + k] = c
    names = _disjoint_names(L1, L2)
    return LieAlgebra(n1 + L2.dim, br, names, name=name or f"{L1.name}+{L2.name}")


def _disjoint_names(L1: LieAlgebra, L2: LieAlgebra) -> list[str]:
    a, b = list(L1.basis_names), list(L2.basis_names)
    if set(a) & set(b):
        a = [f"a.{x}" for x in a]
        b = [f"b.{x}" for x in b]
    return a + b


def is_two_cocycle(L: LieAlgebra, omega: Sequence[Sequence]) -> bool:
    """omega skew with omega([x,y],z) + omega([y,z],x) + omega([z,x],y) = 0 on basis triples."""
    n = L.dim
    w = rl.mat(omega)
    if rl.shape(w) != (n, n) or not rl.is_skew(w):
        return False
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                s = (
                    rl.dot(L.c[i][j], [w[a][k] for a in range(n)])
                    + rl.dot(L.c[j][k], [w[a][i] for a in range(n)])
                    + rl.dot(L.c[k][i], [w[a][j] for a in range(n)])
                )
                if s:
                    return False
    return True


def central_extension(L: LieAlgebra, omega: Sequence[Sequence], name: str | None = None) -> LieAlgebra:
    """L x_omega R xi with [x, y]_new = [x, y] + omega(x, y) xi; xi is appended last."""
    if not is_two_cocycle(L, omega):
        raise ValueError("omega is not a skew 2-cocycle of L")
    n = L.dim
    w = rl.mat(omega)
    br = {}
    for i, j, k, c in L.nonzero_brackets():
        br.setdefault((i, j), {})[k] = c
    for i in range(n):
        for j in range(i + 1, n):
            if w[i][j]:
                br.setdefault((i, j), {})[n] = w[i][j]
    names = list(L.basis_names) + ["xi"]
    return LieAlgebra(n + 1, br, names, name=name or f"{L.name}x_w")


def standard_symplectic(n: int) -> rl.Matrix:
    """omega(e_i, e_{n+i}) = 1 on R^{2n}."""
    m = [[ZERO] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        m[i][n + i] = Fraction(1)
        m[n + i][i] = Fraction(-1)
    return rl.mat(m)


def semidirect_by_derivation(H: LieAlgebra, D: Sequence[Sequence], name: str | None = None,
                             generator: str = "e") -> LieAlgebra:
    """H x| R e with [e, x] = D x; e is appended last."""
    D = rl.mat(D)
    bad = derivation_residual(H, D)
    if bad:
        i, j = bad[0]
        raise ValueError(f"not a derivation of {H.name}: Leibniz fails on "
                         f"({H.basis_names[i]}, {H.basis_names[j]})")
    n = H.dim
    br = {}
    for i, j, k, c in H.nonzero_brackets():
        br.setdefault((i, j), {})[k] = c
    for x in range(n):
        col = [D[k][x] for k in range(n)]
        if any(col):
            # [e, e_x] = D e_x  ->  stored as (x, e) with sign flipped
            br[(x, n)] = {k: -v for k, v in enumerate(col) if v}
    names = list(H.basis_names)
    if generator in names:
        generator = generator + "'"
    return LieAlgebra(n + 1, br, names + [generator], name=name or f"{H.name}x|D")


def gn_family(n: int, p, p_list: Sequence, q) -> LieAlgebra:
    """Lie algebra of G_n x|_rho R.

    Differentiating the group law at the identity gives [e_i, e_{n+i}] = e0 and
    e_{2n+2} acting by diag(p_1..p_n, p-p_1..p-p_n, p, q) on
    (e_1..e_{2n}, e0, e_{2n+1}).
    """
    if n < 1:
        raise ValueError("gn_family needs n >= 1")
    if len(p_list) != n:
        raise ValueError(f"expected {n} weights p_i, got {len(p_list)}")
    p, q = rl.as_fraction(p), rl.as_fraction(q)
    ps = [rl.as_fraction(x) for x in p_list]
    weights = ps + [p - x for x in ps] + [p, q]
    H = direct_sum(heisenberg(n), abelian(1))
    H = LieAlgebra(2 * n + 2, {(i, j): {k: c} for i, j, k, c in H.nonzero_brackets()},
                   [f"e{i}" for i in range(1, 2 * n + 1)] + ["e0", f"e{2 * n + 1}"])
    G = semidirect_by_derivation(H, rl.diag(weights), generator=f"e{2 * n + 2}")
    G.name = f"g{n}(p={p},p_i={','.join(map(str, ps))},q={q})"
    return G


# Jacobi-consistent signs for the twelve mixed brackets of R^4 x| so(3), in the
# order of R4_SO3_MIXED. The printed table has every sign positive, which fails
# Jacobi on 12 triples; this is the first consistent pattern in lexicographic
# order (+ before -). All eight consistent patterns keep e4*..e7* contact.
R4_SO3_MIXED = (
    (0, 3, 6), (0, 4, 5), (0, 5, 4), (0, 6, 3),
    (1, 3, 4), (1, 4, 3), (1, 5, 6), (1, 6, 5),
    (2, 3, 5), (2, 4, 6), (2, 5, 3), (2, 6, 4),
)
R4_SO3_SIGNS = (1, 1, -1, -1, 1, -1, 1, -1, 1, -1, -1, 1)


def r4_so3(signs: Sequence[int] = R4_SO3_SIGNS, check: bool = True) -> LieAlgebra:
    half = Fraction(1, 2)
    br = {(0, 1): {2: 1}, (1, 2): {0: 1}, (2, 0): {1: 1}}
    for s, (i, j, k) in zip(signs, R4_SO3_MIXED):
        br[(i, j)] = {k: s * half}
    return LieAlgebra(7, br, name="r4_so3", check=check)


def r4_so3_consistent_signs() -> list[tuple[int, ...]]:
    """Every sign pattern of the mixed brackets that satisfies Jacobi, in search order."""
    return [s for s in product((1, -1), repeat=12) if not validate(r4_so3(s, check=False))]


CATALOG_BUILDERS = {
    "sl2": sl2,
    "so3": so3,
    "e2": e2,
    "oscillator": oscillator,
    "aff1": aff1,
    "h3": lambda: heisenberg(1),
    "h5": lambda: heisenberg(2),
    "h7": lambda: heisenberg(3),
    "hyp2": lambda: hyperbolic(2),
    "hyp3": lambda: hyperbolic(3),
    "hyp4": lambda: hyperbolic(4),
    "hyp5": lambda: hyperbolic(5),
    "gn1": lambda: gn_family(1, 2, [1], 3),
    "gn1_q_eq_p": lambda: gn_family(1, 2, [1], 2),
    "r4_so3": r4_so3,
    "chyp2": lambda: complex_hyperbolic(1),
    "chyp3": lambda: complex_hyperbolic(2),
    "r2": lambda: abelian(2),
    "r5": lambda: abelian(5),
    "r7": lambda: abelian(7),
    "sl2+aff1": lambda: direct_sum(sl2(), aff1()),
    "so3+r2": lambda: direct_sum(so3(), abelian(2)),
    "so3+r4": lambda: direct_sum(so3(), abelian(4)),
    "so3+so3": lambda: direct_sum(so3(), so3()),
    "sl2+so3": lambda: direct_sum(sl2(), so3()),
    "e2+r2": lambda: direct_sum(e2(), abelian(2)),
    "h3+h3": lambda: direct_sum(heisenberg(1), heisenberg(1)),
    "h3+r1": lambda: direct_sum(heisenberg(1), abelian(1)),
    "sl2+aff1+aff1": lambda: direct_sum(sl2(), direct_sum(aff1(), aff1())),
}


def build(name: str) -> LieAlgebra:
    try:
        L = CATALOG_BUILDERS[name]()
    except KeyError:
        raise KeyError(f"unknown catalog algebra {name!r}; known: {', '.join(sorted(CATALOG_BUILDERS))}")
    L.name = name
    return L


# -- Einstein contact extensions -------------------------------------------


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class ExtensionReport:
    scale: Fraction | None  # t in [e, x] = t D x; None when no Einstein scale exists
    einstein_constant: Fraction | None
    residual: Fraction | None  # max |Ric - lambda g| at the chosen scale
    exact: bool
    residual_gcd: rl.Polynomial  # common factor of all Einstein residuals as polynomials in t
    contact_form: tuple | None  # eta with i* eta = alpha
    message: str = ""

    @property
    def einstein(self) -> bool:
        return self.scale is not None


def _ricci_in_t(H: LieAlgebra, D, gmat, n_nodes: int = 5):
    """Ricci entries of (H x|_{tD} R e, gmat) as exact polynomials in t.

    Structure constants are affine in t, so Ricci is quadratic; five nodes
    leave room and the fit is exact.
    """
    nodes = [Fraction(k) for k in range(n_nodes)]
    samples = []
    for t in nodes:
        G = semidirect_by_derivation(H, rl.scale(t, D))
        samples.append(ricci(G, Metric(gmat)))
    m = len(gmat)
    return [[rl.interpolate(nodes, [s[i][j] for s in samples]) for j in range(m)] for i in range(m)]


def _refine_root(h: rl.Polynomial, t0: float, steps: int = 8) -> Fraction:
    t = Fraction(t0).limit_denominator(10 ** 12)
    dh = h.derivative()
    for _ in range(steps):
        slope = dh(t)
        if slope == 0:
            break
        t = (t - h(t) / slope).limit_denominator(10 ** 40)
    return t


def _simplest_within(H: LieAlgebra, D, metric: Metric, t: Fraction, tol) -> Fraction:
    """Smallest-denominator truncation of t whose Einstein residual is still within tol."""
    for digits in range(1, 41):
        s = t.limit_denominator(10 ** digits)
        if einstein_residual(semidirect_by_derivation(H, rl.scale(s, D)), metric)[1] <= tol:
            return s
    return t


def einstein_contact_extension(
    H: LieAlgebra,
    alpha,
    g_H,
    D,
    tol=0,
    config: SearchConfig = SearchConfig(),
) -> tuple[LieAlgebra, Metric, ExtensionReport]:
    """Extend an exact symplectic standard Einstein algebra H by a symmetric derivation.

    Builds G_t = H x| R e with [e, x] = t D x and e a unit vector orthogonal
    to H, then solves for the scale t at which Ric = lambda g. Exact rational
    roots are preferred; with ``tol`` > 0 an irrational root is approximated
    until the max-norm Einstein residual is at most ``tol``. Also returns a
    contact form extending alpha.
    """
    n = H.dim
    alpha = rl.vec(alpha)
    D = rl.mat(D)
    g_H = _metric_matrix(g_H)
    if n % 2 or exact_symplectic_pfaffian(H, alpha) == 0:
        raise PreconditionError("alpha is not an exact symplectic form on H (Pf(d alpha) = 0)")
    if not is_solvable(H):
        raise PreconditionError("H is not solvable")
    if not is_standard_einstein(H, g_H, tol):
        raise PreconditionError("g_H is not a standard Einstein metric on H")
    if rl.is_zero_matrix(D):
        raise PreconditionError("D must be a nonzero derivation")
    bad = derivation_residual(H, D)
    if bad:
        i, j = bad[0]
        raise PreconditionError(f"D is not a derivation: Leibniz fails on "
                                f"({H.basis_names[i]}, {H.basis_names[j]})")
    if not is_self_adjoint(D, g_H):
        raise PreconditionError("D is not symmetric with respect to g_H")
    a = noncommuting_element(H, g_H, D)
    if a is not None:
        raise PreconditionError(f"D does not commute with ad(a) for a = {_names(H, a)}")

    gmat = rl.mat([list(row) + [ZERO] for row in g_H] + [[ZERO] * n + [Fraction(1)]])
    metric = Metric(gmat)
    ric = _ricci_in_t(H, D, gmat)
    lam = ric[n][n]  # g(e, e) = 1
    residuals = [ric[i][j] - lam * gmat[i][j] for i in range(n + 1) for j in range(n + 1)]
    residuals = [r for r in residuals if not r.is_zero()]
    h = rl.Polynomial([0])
    for r in residuals:
        h = rl.polynomial_gcd(h, r) if not h.is_zero() else r.monic()

    candidates: list[tuple[Fraction, bool]] = []
    if not residuals:
        candidates = [(Fraction(1), True)]
    elif h.degree >= 1:
        exact_roots = [t for t in rl.rational_roots(h) if t != 0]
        candidates = [(t, True) for t in sorted(exact_roots, key=lambda t: (abs(t), t < 0))]
        if not candidates and tol:
            import numpy as np

            approx = [z.real for z in np.roots([float(c) for c in reversed(h.coeffs)])
                      if abs(z.imag) < 1e-9 and abs(z.real) > 1e-12]
            for t0 in sorted(approx, key=lambda t: (round(abs(t), 9), t < 0)):
                candidates.append((_simplest_within(H, D, metric, _refine_root(h, t0), tol), False))

    for t, exact in candidates:
        G = semidirect_by_derivation(H, rl.scale(t, D))
        lam_t, res = einstein_residual(G, metric)
        if res > tol:
            continue
        eta = _extend_contact(G, alpha)
        G.name = f"{H.name}x|e"
        return G, metric, ExtensionReport(t, lam_t, res, exact and res == 0, h, eta,
                                          "" if eta else "no contact form of the form alpha + s e*")
    G = semidirect_by_derivation(H, D)
    G.name = f"{H.name}x|e"
    return G, metric, ExtensionReport(None, None, None, False, h, _extend_contact(G, alpha),
                                      f"no Einstein scale: residuals share only the factor {h!r}")


def noncommuting_element(H: LieAlgebra, g_H, D) -> rl.Vector | None:
    """A basis vector a of the g_H-orthogonal complement of [H, H] with [D, ad a] != 0, if any."""
    n = H.dim
    for a in rl.orthogonal_complement(_metric_matrix(g_H), derived_ideal(H).basis, n):
        if rl.commutator(rl.mat(D), H.ad(a)) != rl.zeros(n):
            return a
    return None


def _names(L: LieAlgebra, v) -> str:
    return " + ".join(f"{c}*{L.basis_names[i]}" if c != 1 else L.basis_names[i]
                      for i, c in enumerate(v) if c) or "0"


def _metric_matrix(g) -> rl.Matrix:
    return g.matrix if isinstance(g, Metric) else rl.mat(g)


def _extend_contact(G: LieAlgebra, alpha) -> tuple | None:
    """eta = alpha + s e* for the first s in 0, 1, -1, 2, ... that is contact.

    The contact scalar is a polynomial of degree <= n+1 in s, so n+2 trials
    decide whether any s works.
    """
    trials = [0]
    k = 1
    while len(trials) < G.dim // 2 + 2:
        trials += [k, -k]
        k += 1
    for s in trials:
        eta = tuple(alpha) + (Fraction(s),)
        if is_contact(G, eta):
            return eta
    return None
