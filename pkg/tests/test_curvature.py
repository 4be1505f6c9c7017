from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liecontact import construct as cons
from liecontact import ratlin as rl
from liecontact.curvature import (DegenerateMetric, Metric, basis_sectionals,
                                  constant_curvature_form, curvature_tensor, einstein_residual,
                                  flat_decomposition, heintze_negative_possible, is_einstein,
                                  is_flat, is_K_contact, is_locally_symmetric,
                                  is_standard_einstein, k_contact_report, levi_civita,
                                  nabla_R_residual, ricci, scalar, sectional, solve_phi,
                                  contact_metric_check)
from liecontact.orthogonal import find_biinvariant_metric
from strategies import covectors

SMALL = [n for n in sorted(cons.CATALOG_BUILDERS) if cons.build(n).dim <= 6]


def _pairs():
    out = []
    for name in SMALL:
        L = cons.build(name)
        out.append((name, rl.identity(L.dim)))
        out.append((name, rl.diag([k + 1 for k in range(L.dim)])))
    # indefinite metrics from bi-invariant witnesses
    for name in ("sl2", "oscillator", "so3+so3"):
        out.append((name, find_biinvariant_metric(cons.build(name)).nondegenerate_witness))
    return out


PAIRS = _pairs()


@pytest.mark.parametrize("name,g", PAIRS, ids=[f"{n}-{i}" for i, (n, _) in enumerate(PAIRS)])
def test_connection_and_curvature_identities(name, g):
    L = cons.build(name)
    conn = levi_civita(L, g)
    assert conn.torsion_residual(L) == []
    assert conn.metric_residual(Metric(g)) == []
    R = curvature_tensor(L, g, conn)
    assert set(R.symmetry_residuals().values()) == {0}
    assert rl.is_symmetric(ricci(L, g, R))


def _positive_definite(n):
    return st.lists(st.lists(st.integers(-2, 2), min_size=n, max_size=n), min_size=n, max_size=n).map(
        lambda A: rl.add(rl.matmul(rl.transpose(A), A), rl.identity(n)))


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["so3", "sl2", "h3", "e2", "aff1", "gn1", "hyp2"]), st.data())
def test_identities_for_random_metrics(name, data):
    L = cons.build(name)
    g = data.draw(_positive_definite(L.dim))
    conn = levi_civita(L, g)
    assert conn.torsion_residual(L) == [] and conn.metric_residual(Metric(g)) == []
    assert set(curvature_tensor(L, g, conn).symmetry_residuals().values()) == {0}


def milnor_ricci_so3(p):
    """Milnor's closed form for so(3) with g = diag(p1^2, p2^2, p3^2)."""
    p1, p2, p3 = p
    lam = (Fraction(p1, p2 * p3), Fraction(p2, p3 * p1), Fraction(p3, p1 * p2))
    half = sum(lam) / 2
    mu = [half - x for x in lam]
    r = (2 * mu[1] * mu[2], 2 * mu[2] * mu[0], 2 * mu[0] * mu[1])
    return rl.diag([r[i] * p[i] ** 2 for i in range(3)])


@settings(max_examples=30)
@given(st.tuples(st.integers(1, 5), st.integers(1, 5), st.integers(1, 5)))
def test_ricci_matches_milnor_closed_form(p):
    g = rl.diag([x * x for x in p])
    assert ricci(cons.so3(), g) == milnor_ricci_so3(p)


@settings(max_examples=40)
@given(covectors(3), covectors(3))
def test_biinvariant_sectional_on_so3(x, y):
    L = cons.so3()
    g = Metric.identity(3)
    area = g(x, x) * g(y, y) - g(x, y) ** 2
    if area == 0:
        return
    b = L.bracket(x, y)
    assert sectional(L, g, x, y) == Fraction(1, 4) * g(b, b) / area


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_hyperbolic_constant_curvature(n):
    L = cons.hyperbolic(n)
    g = Metric.identity(n + 1)
    assert ricci(L, g) == rl.scale(-n, rl.identity(n + 1))
    assert set(basis_sectionals(L, g).values()) == {-1}
    assert is_locally_symmetric(L, g)
    assert scalar(L, g) == -n * (n + 1)


@settings(max_examples=30)
@given(covectors(4), covectors(4))
def test_hyperbolic_sectional_random_planes(x, y):
    L = cons.hyperbolic(3)
    g = Metric.identity(4)
    if g(x, x) * g(y, y) == g(x, y) ** 2:
        return
    assert sectional(L, g, x, y) == -1


@pytest.mark.parametrize("n", [2, 3, 4])
def test_constant_curvature_form(n):
    L = cons.hyperbolic(n)
    l = constant_curvature_form(L)
    assert l == tuple([Fraction(-1)] + [Fraction(0)] * n)
    for i in range(n + 1):
        for j in range(n + 1):
            x, y = rl.unit(n + 1, i), rl.unit(n + 1, j)
            expected = rl.vadd(rl.vscale(rl.dot(l, y), x), rl.vscale(-rl.dot(l, x), y))
            assert L.bracket(x, y) == expected


def test_constant_curvature_form_absent():
    assert constant_curvature_form(cons.heisenberg(1)) is None


@pytest.mark.parametrize("name", ["e2", "e2+r2", "r5", "r2"])
def test_flat(name):
    L = cons.build(name)
    g = rl.identity(L.dim)
    assert is_flat(L, g)
    dec = flat_decomposition(L, g)
    assert dec.A1.dim + dec.A2.dim == L.dim


def test_e2_decomposition():
    dec = flat_decomposition(cons.e2(), rl.identity(3))
    assert dec.A1.basis == (rl.unit(3, 0), rl.unit(3, 1))
    assert dec.A2.basis == (rl.unit(3, 2),)


@pytest.mark.parametrize("name", ["h3", "so3", "sl2", "hyp2", "aff1", "gn1"])
def test_not_flat(name):
    L = cons.build(name)
    assert not is_flat(L, rl.identity(L.dim))
    assert flat_decomposition(L, rl.identity(L.dim)) is None


def test_einstein_constants():
    assert is_einstein(cons.so3(), rl.identity(3)) == Fraction(1, 2)
    assert is_einstein(cons.hyperbolic(2), rl.identity(3)) == -2
    assert is_einstein(cons.heisenberg(1), rl.identity(3)) is None
    assert is_einstein(cons.build("chyp2"), rl.identity(4)) == Fraction(-3, 2)
    assert is_standard_einstein(cons.build("chyp2"), rl.identity(4))
    assert is_standard_einstein(cons.hyperbolic(3), rl.identity(4))


def test_einstein_tolerance():
    g = rl.diag([1, 1, Fraction(1000001, 1000000)])
    lam, res = einstein_residual(cons.so3(), g)
    assert res > 0
    assert is_einstein(cons.so3(), g) is None
    assert is_einstein(cons.so3(), g, tol=Fraction(1, 1000)) is not None


def test_metric_validation():
    with pytest.raises(DegenerateMetric):
        Metric(rl.zeros(2))
    with pytest.raises(ValueError):
        Metric([[1, 2], [0, 1]])
    assert not Metric(rl.diag([1, -1])).riemannian


def test_sectional_rejects_bad_input():
    L = cons.so3()
    with pytest.raises(ValueError):
        sectional(L, rl.identity(3), [1, 0, 0], [2, 0, 0])
    with pytest.raises(ValueError):
        sectional(L, rl.diag([1, 1, -1]), [1, 0, 0], [0, 1, 0])


def test_local_symmetry():
    assert is_locally_symmetric(cons.so3(), rl.identity(3))
    assert nabla_R_residual(cons.gn_family(1, 2, [1], 3), rl.identity(5)) > 0
    assert not is_locally_symmetric(cons.heisenberg(1), rl.identity(3))


def test_heintze_family_member():
    r = heintze_negative_possible(cons.gn_family(1, 2, [1], 3))
    assert r.passes
    assert r.charpoly == rl.Polynomial.from_roots([1, 1, 2, 3])


def test_heintze_failures():
    r = heintze_negative_possible(cons.gn_family(1, 2, [1], 0))
    assert not r.passes and r.summary == "derived ideal has codimension 2"
    assert heintze_negative_possible(cons.so3()).summary == "not solvable"
    assert not heintze_negative_possible(cons.heisenberg(1)).passes
    # e(2): codimension 1 but rotation eigenvalues are purely imaginary
    r = heintze_negative_possible(cons.e2(), budget=20)
    assert not r.passes and r.summary == "no witness found (budget 20)"


@pytest.mark.parametrize("n", [2, 3, 4])
def test_heintze_hyperbolic(n):
    assert heintze_negative_possible(cons.hyperbolic(n)).passes


def test_sasakian_su2():
    L = cons.so3()
    g = rl.scale(Fraction(1, 4), rl.identity(3))
    eta = [Fraction(1, 2), 0, 0]
    phi = solve_phi(L, g, eta)
    assert contact_metric_check(L, g, eta, phi)
    rep = k_contact_report(L, g, eta)
    assert rep.k_contact and rep.ricci_reeb == 2
    assert rep.reeb == (2, 0, 0)


def test_unnormalized_differential_breaks_k_contact_identity():
    L = cons.so3()
    rep = k_contact_report(L, rl.identity(3), [1, 0, 0], dform_scale=1)
    assert rep.k_contact and rep.ricci_reeb == Fraction(1, 2)


def test_not_k_contact():
    L = cons.so3()
    assert not is_K_contact(L, rl.diag([1, 2, 3]), [1, 0, 0])
