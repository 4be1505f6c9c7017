from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liecontact import construct as cons
from liecontact import ratlin as rl
from liecontact.liealg import (Derivation, InvalidAlgebra, LieAlgebra, Subspace, center,
                               derived_ideal, derived_series, is_derivation, is_ideal,
                               is_nilpotent, is_semisimple, is_solvable, is_subalgebra,
                               is_unimodular, killing_form, lower_central_series, radical,
                               restricted_ad, validate)
from strategies import covectors, rationals

FIXTURES = sorted(cons.CATALOG_BUILDERS)


@pytest.mark.parametrize("name", FIXTURES)
def test_catalog_validates(name):
    L = cons.build(name)
    assert validate(L) == []


def test_jacobi_failure_reports_triple():
    # [e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e1 fails Jacobi
    with pytest.raises(InvalidAlgebra) as exc:
        LieAlgebra(3, {(0, 1): {2: 1}, (1, 2): {0: 1}, (2, 0): {0: 1}})
    assert exc.value.violations[0].kind == "jacobi"
    assert exc.value.violations[0].indices == (0, 1, 2)


def test_inconsistent_antisymmetry_rejected():
    with pytest.raises(InvalidAlgebra):
        LieAlgebra(2, {(0, 1): {1: 1}, (1, 0): {1: 1}})


def test_diagonal_bracket_rejected():
    with pytest.raises(InvalidAlgebra):
        LieAlgebra(2, {(0, 0): {1: 1}})


@pytest.mark.parametrize("name", FIXTURES)
def test_ad_is_a_representation(name):
    L = cons.build(name)
    n = L.dim
    for i in range(n):
        for j in range(i + 1, n):
            lhs = rl.commutator(L.ad_basis(i), L.ad_basis(j))
            assert lhs == L.ad(L.basis_bracket(i, j))


@pytest.mark.parametrize("name", FIXTURES)
def test_killing_form_invariant(name):
    L = cons.build(name)
    B = killing_form(L)
    n = L.dim
    for x in range(n):
        ad = L.ad_basis(x)
        # B([x,y],z) + B(y,[x,z]) = 0  <=>  ad^T B + B ad = 0
        assert rl.add(rl.matmul(rl.transpose(ad), B), rl.matmul(B, ad)) == rl.zeros(n)


@settings(max_examples=40)
@given(st.sampled_from(FIXTURES), st.data())
def test_bracket_bilinear_antisymmetric(name, data):
    L = cons.build(name)
    x = data.draw(covectors(L.dim))
    y = data.draw(covectors(L.dim))
    a = data.draw(rationals)
    assert L.bracket(x, y) == rl.vscale(-1, L.bracket(y, x))
    assert L.bracket(rl.vscale(a, x), y) == rl.vscale(a, L.bracket(x, y))


def test_semisimple_fixtures():
    for name in ("sl2", "so3", "so3+so3", "sl2+so3"):
        assert is_semisimple(cons.build(name))
        assert radical(cons.build(name)).dim == 0
    for name in ("h3", "e2", "aff1", "r4_so3", "oscillator"):
        assert not is_semisimple(cons.build(name))


def test_structure_flags():
    h5 = cons.heisenberg(2)
    assert is_nilpotent(h5) and is_solvable(h5)
    assert center(h5) == Subspace.spanned_by([rl.unit(5, 4)], 5)
    assert derived_ideal(h5).dim == 1
    e2 = cons.e2()
    assert is_solvable(e2) and not is_nilpotent(e2)
    assert is_unimodular(e2)
    assert not is_unimodular(cons.aff1())
    assert not is_solvable(cons.so3())
    assert is_unimodular(cons.r4_so3())


def test_heisenberg_direct_sum_center_in_derived():
    N = cons.direct_sum(cons.heisenberg(1), cons.heisenberg(1))
    Z = center(N)
    assert Z.dim == 2
    assert derived_ideal(N).contains_subspace(Z)


def test_radical_of_levi_type():
    L = cons.r4_so3()
    R = radical(L)
    assert R == Subspace.spanned_by([rl.unit(7, i) for i in range(3, 7)], 7)
    assert is_ideal(L, R)
    L2 = cons.build("sl2+aff1")
    assert radical(L2).dim == 2


def test_series_terminate():
    L = cons.gn_family(1, 2, [1], 3)
    ds = derived_series(L)
    assert ds[-1].dim == 0
    lc = lower_central_series(L)
    assert lc[-1].dim > 0  # not nilpotent


def test_subalgebra_and_ideal():
    L = cons.sl2()
    borel = Subspace.spanned_by([rl.unit(3, 0), rl.unit(3, 2)], 3)
    assert is_subalgebra(L, borel)
    assert not is_ideal(L, borel)


def test_derivations():
    H = cons.heisenberg(1)
    D = rl.diag([1, 2, 3])
    assert is_derivation(H, D)
    assert not is_derivation(H, rl.diag([1, 1, 1]))
    with pytest.raises(ValueError):
        Derivation(H, rl.diag([1, 1, 1]))


@pytest.mark.parametrize("name", ["sl2", "so3", "h3", "e2", "oscillator"])
def test_inner_derivations(name):
    L = cons.build(name)
    for i in range(L.dim):
        assert is_derivation(L, L.ad_basis(i))


def test_restricted_ad():
    L = cons.gn_family(1, 2, [1], 3)
    N = derived_ideal(L)
    M = restricted_ad(L, rl.unit(5, 4), N)
    p = rl.characteristic_polynomial(M)
    assert p == rl.Polynomial.from_roots([1, 1, 2, 3])


def test_from_tensor_roundtrip():
    L = cons.r4_so3()
    assert LieAlgebra.from_tensor(L.c, basis_names=L.basis_names) == L
