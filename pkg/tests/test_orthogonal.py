from __future__ import annotations

from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liecontact import construct as cons
from liecontact import ratlin as rl
from liecontact.contact import SearchConfig
from liecontact.liealg import killing_form
from liecontact.orthogonal import (ad_invariant_forms, find_biinvariant_metric,
                                   invariance_residual, is_orthogonal, search_nondegenerate,
                                   simplex_grid, theta, theta_inverse, verify_lemma3)
from strategies import covectors

FIXTURES = sorted(cons.CATALOG_BUILDERS)


@pytest.mark.parametrize("name", FIXTURES)
def test_solution_space_is_invariant_and_contains_killing(name):
    L = cons.build(name)
    basis = ad_invariant_forms(L)
    for b in basis:
        assert rl.is_symmetric(b)
        assert invariance_residual(L, b) == []
    B = killing_form(L)
    flat = [[x for row in b for x in row] for b in basis]
    assert rl.in_span(flat, [x for row in B for x in row])


@pytest.mark.parametrize("name,sig", [
    ("so3", (3, 0, 0)), ("sl2", (2, 1, 0)), ("oscillator", (3, 1, 0)),
    ("r5", (3, 2, 0)), ("r7", (4, 3, 0)), ("so3+r4", (5, 2, 0)), ("so3+so3", (3, 3, 0)),
])
def test_witnesses(name, sig):
    r = find_biinvariant_metric(cons.build(name))
    assert r.found and r.signature == sig
    assert invariance_residual(cons.build(name), r.nondegenerate_witness) == []
    assert rl.determinant(r.nondegenerate_witness) != 0


def test_oscillator_is_lorentzian():
    r = find_biinvariant_metric(cons.oscillator())
    assert r.signature[1] == 1 and r.signature[2] == 0


@pytest.mark.parametrize("name", ["h3", "h5", "e2", "aff1", "r4_so3", "hyp2", "gn1", "sl2+aff1"])
def test_none_certified_by_common_radical(name):
    L = cons.build(name)
    r = find_biinvariant_metric(L)
    assert not r.found
    assert r.certificate["kind"] == "common-radical"
    v = [Fraction(x) for x in r.certificate["vector"]]
    assert any(v)
    for b in ad_invariant_forms(L):
        assert rl.matvec(b, v) == tuple([Fraction(0)] * L.dim)


def test_total_degree_grid_certificate():
    # every member [[0,a,b],[a,0,0],[b,0,0]] is singular, with kernel (0,b,-a) moving
    z, one = Fraction(0), Fraction(1)
    b1 = rl.mat([[z, one, z], [one, z, z], [z, z, z]])
    b2 = rl.mat([[z, z, one], [z, z, z], [one, z, z]])
    assert not rl.kernel_basis(list(b1) + list(b2))
    form, source, cert = search_nondegenerate([b1, b2], SearchConfig(attempts=5))
    assert form is None
    assert cert["kind"] == "total-degree-grid"
    assert cert["evaluations"] == cert["expected"] == comb(3 + 2, 2)


def test_grid_search_finds_late_witness():
    z, one = Fraction(0), Fraction(1)
    b1 = rl.mat([[one, z], [z, z]])
    b2 = rl.mat([[z, z], [z, one]])
    form, source, _ = search_nondegenerate([b1, b2], SearchConfig(attempts=0))
    assert source == "grid" and rl.determinant(form) != 0


@given(st.integers(1, 4), st.integers(0, 5))
def test_simplex_grid_size(k, d):
    pts = list(simplex_grid(k, d))
    assert len(pts) == comb(d + k, k) == len({tuple(p) for p in pts})
    assert all(sum(p) <= d and min(p) >= 0 for p in pts)


def test_is_orthogonal():
    assert is_orthogonal(cons.so3())
    assert not is_orthogonal(cons.heisenberg(1))


@settings(max_examples=30)
@given(covectors(3))
def test_theta_roundtrip(x):
    b = killing_form(cons.sl2())
    assert theta_inverse(b, theta(b, x)) == tuple(x)


@pytest.mark.parametrize("name,eta", [("so3", [1, 0, 0]), ("sl2", [0, 0, 1]), ("sl2", [1, 1, 0]),
                                      ("so3", [1, 2, 3])])
def test_contact_orthogonal_structure(name, eta):
    L = cons.build(name)
    b = find_biinvariant_metric(L).nondegenerate_witness
    rep = verify_lemma3(L, b, eta)
    assert rep.ok


def test_lemma_inputs_rejected():
    L = cons.so3()
    with pytest.raises(ValueError):
        verify_lemma3(L, rl.zeros(3), [1, 0, 0])
    with pytest.raises(ValueError):
        verify_lemma3(L, rl.diag([1, 2, 3]), [1, 0, 0])
    with pytest.raises(ValueError):
        verify_lemma3(cons.abelian(3), rl.identity(3), [1, 0, 0])
