from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liecontact import ratlin as rl
from liecontact.ratlin import Polynomial
from strategies import matrices, rationals, skew, square, symmetric


def leibniz_det(A):
    n = len(A)
    total = Fraction(0)
    for p in permutations(range(n)):
        term = Fraction(rl._perm_sign(p))
        for i in range(n):
            term *= A[i][p[i]]
        total += term
    return total


def test_float_input_rejected():
    with pytest.raises(TypeError):
        rl.as_fraction(0.5)


def test_rref_pivots_first_nonzero_column():
    R, piv = rl.rref([[0, 2, 4], [0, 1, 2], [1, 0, 1]])
    assert piv == (0, 1)
    assert R == rl.mat([[1, 0, 1], [0, 1, 2], [0, 0, 0]])


def test_kernel_of_rank_deficient():
    A = [[1, 2, 3], [2, 4, 6]]
    K = rl.kernel_basis(A)
    assert len(K) == 2
    for v in K:
        assert rl.matvec(A, v) == (0, 0)


def test_solve_inconsistent_system():
    x, K = rl.solve_linear_system([[1, 1], [1, 1]], [1, 2])
    assert x is None


def test_inverse_of_singular_raises():
    with pytest.raises(ZeroDivisionError):
        rl.inverse([[1, 2], [2, 4]])


@given(matrices(1, 5))
def test_determinant_matches_leibniz(A):
    assert rl.determinant(A) == leibniz_det(A)


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(square(n), square(n))))
def test_determinant_multiplicative(AB):
    A, B = AB
    assert rl.determinant(rl.matmul(A, B)) == rl.determinant(A) * rl.determinant(B)


@given(matrices(1, 5, st.integers(-5, 5)))
def test_bareiss_zero_test_agrees(A):
    M = [list(map(int, row)) for row in A]
    assert rl.integer_determinant_is_zero([r[:] for r in M]) == (rl.determinant(A) == 0)


@given(matrices(1, 5))
def test_rank_nullity(A):
    n = len(A[0])
    assert rl.rank(A) + len(rl.kernel_basis(A)) == n


@given(matrices(1, 4))
def test_inverse_roundtrip(A):
    if rl.determinant(A) == 0:
        return
    assert rl.matmul(A, rl.inverse(A)) == rl.identity(len(A))


@given(matrices(1, 5))
def test_cayley_hamilton(A):
    p = rl.characteristic_polynomial(A)
    assert p.degree == len(A) and p.leading() == 1
    assert rl.is_zero_matrix(rl.evaluate_matrix_polynomial(p, A))


@given(matrices(1, 4))
def test_charpoly_constant_term_is_signed_det(A):
    p = rl.characteristic_polynomial(A)
    assert p(0) == (-1) ** len(A) * rl.determinant(A)


@given(st.integers(1, 6).flatmap(lambda n: symmetric(n)),
       st.integers(1, 6).flatmap(lambda n: square(n, st.integers(-3, 3))))
def test_signature_congruence_invariant(S, P):
    n = len(S)
    if len(P) != n or rl.determinant(P) == 0:
        return
    T = rl.matmul(rl.transpose(P), rl.matmul(S, P))
    assert rl.symmetric_signature(T) == rl.symmetric_signature(S)


@given(st.integers(1, 6).flatmap(lambda n: symmetric(n)))
def test_signature_matches_eigenvalues(S):
    pos, neg, zero = rl.symmetric_signature(S)
    ev = np.linalg.eigvalsh(np.array(S, dtype=float))
    assert pos == int((ev > 1e-9).sum())
    assert neg == int((ev < -1e-9).sum())


@given(st.sampled_from([2, 4, 6]).flatmap(skew))
def test_pfaffian_squared_is_determinant(A):
    assert rl.pfaffian(A) ** 2 == rl.determinant(A)


@given(st.sampled_from([2, 4, 6]).flatmap(skew))
def test_pfaffian_matches_matchings_oracle(A):
    assert rl.pfaffian(A) == rl.pfaffian_by_matchings(A)


def test_pfaffian_odd_is_zero():
    assert rl.pfaffian(rl.zeros(3)) == 0


def test_pfaffian_standard_symplectic():
    J = [[0, 1], [-1, 0]]
    assert rl.pfaffian(J) == 1


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=4))
def test_from_roots_and_rational_roots(roots):
    p = Polynomial.from_roots(roots)
    assert sorted(set(rl.rational_roots(p))) == sorted(set(Fraction(r) for r in roots))


@given(st.lists(rationals, min_size=1, max_size=5), st.lists(rationals, min_size=1, max_size=5))
def test_polynomial_division(a, b):
    A, B = Polynomial(a), Polynomial(b)
    if B.is_zero():
        return
    q, r = A.divmod(B)
    assert q * B + r == A
    assert r.is_zero() or r.degree < B.degree


def test_gcd():
    a = Polynomial.from_roots([1, 2, 3])
    b = Polynomial.from_roots([2, 3, 5])
    assert rl.polynomial_gcd(a, b) == Polynomial.from_roots([2, 3])


@given(st.lists(rationals, min_size=1, max_size=5, unique=True).flatmap(
    lambda xs: st.tuples(st.just(xs), st.lists(rationals, min_size=len(xs), max_size=len(xs)))))
def test_interpolate_hits_nodes(xy):
    xs, ys = xy
    p = rl.interpolate(xs, ys)
    assert all(p(x) == y for x, y in zip(xs, ys))
    assert p.is_zero() or p.degree < len(xs)


def _positive_real_parts_numpy(coeffs_desc):
    roots = np.roots(np.array(coeffs_desc, dtype=float))
    return bool(np.all(roots.real > 0))


def test_routh_hurwitz_against_companion_oracle():
    rng = random.Random(7)
    checked = 0
    while checked < 100:
        deg = rng.randint(1, 6)
        # roots well away from the imaginary axis so the float oracle is reliable
        roots = []
        while len(roots) < deg:
            re = rng.choice([-1, 1]) * rng.randint(1, 6)
            if deg - len(roots) >= 2 and rng.random() < 0.5:
                im = rng.randint(1, 5)
                roots.append(complex(re, im))
                roots.append(complex(re, -im))
            else:
                roots.append(complex(re, 0))
        coeffs = np.poly(roots).real.round().astype(int)
        p = Polynomial([int(c) for c in reversed(coeffs)])
        assert rl.all_roots_positive_real_part(p) == _positive_real_parts_numpy(coeffs)
        checked += 1


def test_routh_hurwitz_boundary_cases():
    # t^2 + 1: roots on the imaginary axis
    assert not rl.all_roots_positive_real_part(Polynomial([1, 0, 1]))
    # t: root at zero
    assert not rl.all_roots_positive_real_part(Polynomial([0, 1]))
    # (t-1)^2 (t-2)(t-3)
    assert rl.all_roots_positive_real_part(Polynomial.from_roots([1, 1, 2, 3]))
    assert not rl.all_roots_positive_real_part(Polynomial.from_roots([1, -1]))


@settings(max_examples=50)
@given(st.integers(1, 5).flatmap(lambda n: st.tuples(symmetric(n), st.lists(
    st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=1, max_size=n))))
def test_orthogonal_complement(data):
    form, basis = data
    n = len(form)
    comp = rl.orthogonal_complement(form, basis, n)
    for u in comp:
        for v in basis:
            assert rl.dot(u, rl.matvec(form, v)) == 0
