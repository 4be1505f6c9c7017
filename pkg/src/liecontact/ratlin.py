"""Exact rational linear algebra over :class:`fractions.Fraction`.

Matrices are tuples of row tuples. Functions accept any nested sequence of
numbers that ``Fraction`` understands and never mutate their input.
Elimination always takes the first nonzero pivot in column order, so
outputs (kernel bases in particular) are deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial, gcd
from itertools import permutations
from typing import Iterable, Sequence

Matrix = tuple[tuple[Fraction, ...], ...]
Vector = tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


class ShapeError(ValueError):
    pass


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError(f"refusing float {x!r}; pass an int, str or Fraction")
    return Fraction(x)


def vec(xs: Iterable) -> Vector:
    return tuple(as_fraction(x) for x in xs)


def mat(rows: Iterable[Iterable]) -> Matrix:
    out = tuple(vec(r) for r in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise ShapeError("ragged matrix")
    return out


def shape(A: Sequence[Sequence]) -> tuple[int, int]:
    return len(A), (len(A[0]) if A else 0)


def identity(n: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def zeros(r: int, c: int | None = None) -> Matrix:
    c = r if c is None else c
    return tuple((ZERO,) * c for _ in range(r))


def diag(entries: Iterable) -> Matrix:
    d = vec(entries)
    n = len(d)
    return tuple(tuple(d[i] if i == j else ZERO for j in range(n)) for i in range(n))


def unit(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def transpose(A: Sequence[Sequence]) -> Matrix:
    r, c = shape(A)
    return tuple(tuple(A[i][j] for i in range(r)) for j in range(c))


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    ra, ca = shape(A)
    rb, cb = shape(B)
    if ca != rb:
        raise ShapeError(f"cannot multiply {ra}x{ca} by {rb}x{cb}")
    Bt = transpose(B)
    return tuple(
        tuple(sum((a * b for a, b in zip(row, col)), ZERO) for col in Bt) for row in A
    )


def matvec(A: Sequence[Sequence], x: Sequence) -> Vector:
    if A and len(A[0]) != len(x):
        raise ShapeError(f"matrix with {len(A[0])} columns applied to length {len(x)}")
    return tuple(sum((a * b for a, b in zip(row, x)), ZERO) for row in A)


def dot(x: Sequence, y: Sequence) -> Fraction:
    if len(x) != len(y):
        raise ShapeError("length mismatch")
    return sum((a * b for a, b in zip(x, y)), ZERO)


def add(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    if shape(A) != shape(B):
        raise ShapeError("shape mismatch")
    return tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def sub(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    if shape(A) != shape(B):
        raise ShapeError("shape mismatch")
    return tuple(tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def scale(s, A: Sequence[Sequence]) -> Matrix:
    s = as_fraction(s)
    return tuple(tuple(s * a for a in row) for row in A)


def vadd(x: Sequence, y: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(x, y))


def vscale(s, x: Sequence) -> Vector:
    s = as_fraction(s)
    return tuple(s * a for a in x)


def is_zero_matrix(A: Sequence[Sequence]) -> bool:
    return all(a == 0 for row in A for a in row)


def is_symmetric(A: Sequence[Sequence]) -> bool:
    n, m = shape(A)
    return n == m and all(A[i][j] == A[j][i] for i in range(n) for j in range(i))


def is_skew(A: Sequence[Sequence]) -> bool:
    n, m = shape(A)
    return n == m and all(A[i][j] == -A[j][i] for i in range(n) for j in range(i, n))


def trace(A: Sequence[Sequence]) -> Fraction:
    return sum((as_fraction(A[i][i]) for i in range(len(A))), ZERO)


def commutator(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    return sub(matmul(A, B), matmul(B, A))


# -- elimination ------------------------------------------------------------


def rref(A: Sequence[Sequence]) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form and the pivot columns."""
    M = [[as_fraction(a) for a in row] for row in A]
    rows, cols = shape(M)
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [a * inv for a in M[r]]
        for i in range(rows):
            f = M[i][c]
            if i != r and f != 0:
                Mi, Mr = M[i], M[r]
                M[i] = [a - f * b for a, b in zip(Mi, Mr)]
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in M), tuple(pivots)


def rank(A: Sequence[Sequence]) -> int:
    if not A or not A[0]:
        return 0
    return len(rref(A)[1])


def kernel_basis(A: Sequence[Sequence], ncols: int | None = None) -> tuple[Vector, ...]:
    """Basis of {x : A x = 0}, one vector per free column, free entry 1.

    ``ncols`` is needed when A has no rows.
    """
    if not A:
        if ncols is None:
            raise ShapeError("ncols required for an empty matrix")
        return tuple(unit(ncols, i) for i in range(ncols))
    R, pivots = rref(A)
    n = len(A[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [ZERO] * n
        x[f] = ONE
        for r, pc in enumerate(pivots):
            x[pc] = -R[r][f]
        basis.append(tuple(x))
    return tuple(basis)


def solve_linear_system(A: Sequence[Sequence], b: Sequence) -> tuple[Vector | None, tuple[Vector, ...]]:
    """Solve A x = b exactly.

    Returns ``(particular, kernel)``; ``particular`` is None when the system
    is inconsistent. The kernel basis is returned either way.
    """
    rows, cols = shape(A)
    if len(b) != rows:
        raise ShapeError(f"matrix has {rows} rows but right-hand side has {len(b)}")
    if rows == 0:
        return (ZERO,) * cols, kernel_basis(A, cols)
    aug = [list(row) + [b_i] for row, b_i in zip(A, b)]
    R, pivots = rref(aug)
    kernel = kernel_basis(A)
    if cols in pivots:
        return None, kernel
    x = [ZERO] * cols
    for r, pc in enumerate(pivots):
        x[pc] = R[r][cols]
    return tuple(x), kernel


def determinant(A: Sequence[Sequence]) -> Fraction:
    n, m = shape(A)
    if n != m:
        raise ShapeError("determinant of a non-square matrix")
    M = [[as_fraction(a) for a in row] for row in A]
    det = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c] != 0), None)
        if p is None:
            return ZERO
        if p != c:
            M[c], M[p] = M[p], M[c]
            det = -det
        piv = M[c][c]
        det *= piv
        for i in range(c + 1, n):
            f = M[i][c] / piv
            if f:
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return det


def integer_determinant_is_zero(M: list[list[int]]) -> bool:
    """Bareiss elimination on an integer matrix; consumes ``M``.

    Exits as soon as a column has no pivot, which makes degenerate inputs cheap.
    """
    n = len(M)
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            p = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if p is None:
                return True
            M[k], M[p] = M[p], M[k]
        mkk = M[k][k]
        rowk = M[k]
        for i in range(k + 1, n):
            rowi = M[i]
            mik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (rowi[j] * mkk - mik * rowk[j]) // prev
        prev = mkk
    return n > 0 and M[n - 1][n - 1] == 0


def inverse(A: Sequence[Sequence]) -> Matrix:
    n, m = shape(A)
    if n != m:
        raise ShapeError("inverse of a non-square matrix")
    aug = [list(row) + list(e) for row, e in zip(A, identity(n))]
    R, pivots = rref(aug)
    if tuple(pivots[:n]) != tuple(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return tuple(tuple(row[n:]) for row in R)


def common_denominator(values: Iterable[Fraction]) -> int:
    d = 1
    for v in values:
        q = as_fraction(v).denominator
        d = d * q // gcd(d, q)
    return d


# -- subspaces --------------------------------------------------------------


def span_basis(vectors: Iterable[Sequence], n: int) -> tuple[Vector, ...]:
    """Row-reduced basis of the span (empty tuple for the zero space)."""
    vs = [vec(v) for v in vectors]
    if not vs:
        return ()
    R, pivots = rref(vs)
    return tuple(R[i] for i in range(len(pivots)))


def coordinates(basis: Sequence[Sequence], v: Sequence) -> Vector | None:
    """Coordinates of v in an independent list ``basis``; None if v is outside the span."""
    if not basis:
        return () if all(a == 0 for a in v) else None
    x, _ = solve_linear_system(transpose(basis), v)
    return x


def in_span(basis: Sequence[Sequence], v: Sequence) -> bool:
    return coordinates(basis, v) is not None


def orthogonal_complement(form: Sequence[Sequence], basis: Sequence[Sequence], n: int) -> tuple[Vector, ...]:
    """{x : form(b, x) = 0 for every b in basis}."""
    rows = [matvec(transpose(form), b) for b in basis]
    rows = [r for r in rows if any(r)]
    return kernel_basis(rows, n) if rows else tuple(unit(n, i) for i in range(n))


def intersect(U: Sequence[Sequence], V: Sequence[Sequence], n: int) -> tuple[Vector, ...]:
    if not U or not V:
        return ()
    # solve sum a_i u_i - sum b_j v_j = 0
    cols = [vec(u) for u in U] + [vscale(-1, v) for v in V]
    ker = kernel_basis(transpose(cols))
    out = []
    for k in ker:
        w = [ZERO] * n
        for a, u in zip(k[: len(U)], U):
            if a:
                w = [wi + a * ui for wi, ui in zip(w, u)]
        out.append(w)
    return span_basis(out, n)


# -- polynomials ------------------------------------------------------------


class Polynomial:
    """Univariate polynomial with Fraction coefficients, ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def from_roots(cls, roots: Iterable) -> "Polynomial":
        p = cls([1])
        for r in roots:
            p = p * cls([-as_fraction(r), 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else ZERO

    def __call__(self, x):
        acc = ZERO if not isinstance(x, float) else 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + (c if not isinstance(x, float) else float(c))
        return acc

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial([other])
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = other if isinstance(other, Polynomial) else Polynomial([other])
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (ZERO,) * (n - len(self.coeffs))
        b = other.coeffs + (ZERO,) * (n - len(other.coeffs))
        return Polynomial(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-(other if isinstance(other, Polynomial) else Polynomial([other])))

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return Polynomial(c * as_fraction(other) for c in self.coeffs)
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        q = [ZERO] * max(len(r) - other.degree, 0)
        lead = other.leading()
        while len(r) - 1 >= other.degree and any(r):
            shift = len(r) - 1 - other.degree
            f = r[-1] / lead
            q[shift] = f
            for i, c in enumerate(other.coeffs):
                r[i + shift] -= f * c
            r.pop()
            while r and r[-1] == 0:
                r.pop()
        return Polynomial(q), Polynomial(r)

    def monic(self) -> "Polynomial":
        return self * (1 / self.leading()) if self.coeffs else self

    def derivative(self) -> "Polynomial":
        return Polynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def reflect(self) -> "Polynomial":
        """p(-t)."""
        return Polynomial(-c if i % 2 else c for i, c in enumerate(self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in reversed(range(len(self.coeffs))):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(terms).replace("+ -", "- ")


def polynomial_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic()


def rational_roots(p: Polynomial) -> list[Fraction]:
    """All distinct rational roots, by the rational root theorem on the cleared polynomial."""
    if p.is_zero():
        raise ValueError("zero polynomial has every number as a root")
    roots = []
    cs = list(p.coeffs)
    # factor out t^k
    while cs and cs[0] == 0:
        cs.pop(0)
        if ZERO not in roots:
            roots.append(ZERO)
    if len(cs) <= 1:
        return roots
    d = common_denominator(cs)
    ints = [int(c * d) for c in cs]
    lead, const = abs(ints[-1]), abs(ints[0])
    q = Polynomial(cs)
    for num in _divisors(const):
        for den in _divisors(lead):
            for s in (1, -1):
                r = Fraction(s * num, den)
                if r not in roots and q(r) == 0:
                    roots.append(r)
    return sorted(roots)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, int(n ** 0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def characteristic_polynomial(A: Sequence[Sequence]) -> Polynomial:
    """det(t I - A) by Faddeev-LeVerrier; monic of degree n."""
    n, m = shape(A)
    if n != m:
        raise ShapeError("characteristic polynomial of a non-square matrix")
    A = mat(A)
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    M = zeros(n)
    c = ONE
    for k in range(1, n + 1):
        M = add(matmul(A, M), scale(c, identity(n)))
        AM = matmul(A, M)
        c = -trace(AM) / k
        coeffs[n - k] = c
    return Polynomial(coeffs)


def evaluate_matrix_polynomial(p: Polynomial, A: Sequence[Sequence]) -> Matrix:
    n = len(A)
    out = zeros(n)
    for c in reversed(p.coeffs):
        out = add(matmul(out, A), scale(c, identity(n)))
    return out


def routh_first_column(p: Polynomial) -> list[Fraction] | None:
    """First column of the Routh array, or None when the array breaks on a zero pivot."""
    cs = list(reversed(p.coeffs))  # descending
    rows = [cs[0::2], cs[1::2]]
    width = len(rows[0])
    rows[1] = rows[1] + [ZERO] * (width - len(rows[1]))
    first = [rows[0][0]]
    for _ in range(p.degree):
        a, b = rows[-2], rows[-1]
        if b[0] == 0:
            return None
        first.append(b[0])
        if len(first) == p.degree + 1:
            break
        nxt = [(b[0] * a[j + 1] - a[0] * b[j + 1]) / b[0] for j in range(width - 1)] + [ZERO]
        rows.append(nxt)
    return first


def all_roots_positive_real_part(p: Polynomial) -> bool:
    """True iff every complex root of p has strictly positive real part.

    Routh-Hurwitz applied to p(-t): its roots are the negated roots of p, so
    they must all lie in the open left half-plane. A zero pivot in the Routh
    array means some root is on or right of the imaginary axis.
    """
    if p.is_zero():
        raise ValueError("zero polynomial")
    if p.degree == 0:
        return True
    q = p.reflect()
    q = q * (1 / q.leading())
    first = routh_first_column(q)
    return first is not None and all(x > 0 for x in first)


def symmetric_signature(S: Sequence[Sequence]) -> tuple[int, int, int]:
    """(positive, negative, zero) counts by exact congruence diagonalization."""
    if not is_symmetric(S):
        raise ValueError("signature requires a symmetric matrix")
    M = [[as_fraction(a) for a in row] for row in S]
    n = len(M)
    pos = neg = 0
    for k in range(n):
        if M[k][k] == 0:
            j = next((j for j in range(k + 1, n) if M[j][j] != 0), None)
            if j is not None:
                M[k], M[j] = M[j], M[k]
                for row in M:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((j for j in range(k + 1, n) if M[k][j] != 0), None)
                if j is None:
                    continue
                # e_k <- e_k + e_j gives diagonal 2 M[k][j]
                M[k] = [a + b for a, b in zip(M[k], M[j])]
                for row in M:
                    row[k] = row[k] + row[j]
        piv = M[k][k]
        for i in range(k + 1, n):
            f = M[i][k] / piv
            if f:
                M[i] = [a - f * b for a, b in zip(M[i], M[k])]
        for i in range(k + 1, n):
            M[k][i] = ZERO
            M[i][k] = ZERO
        if piv > 0:
            pos += 1
        else:
            neg += 1
    return pos, neg, n - pos - neg


# -- Pfaffians --------------------------------------------------------------


def pfaffian(A: Sequence[Sequence]) -> Fraction:
    """Pfaffian by recursive expansion along the first row."""
    n, m = shape(A)
    if n != m:
        raise ShapeError("Pfaffian of a non-square matrix")
    return _pf([[as_fraction(a) for a in row] for row in A], tuple(range(n)))


def _pf(A, idx: tuple[int, ...]) -> Fraction:
    n = len(idx)
    if n == 0:
        return ONE
    if n % 2:
        return ZERO
    if n == 2:
        return A[idx[0]][idx[1]]
    i0 = idx[0]
    total = ZERO
    for pos in range(1, n):
        a = A[i0][idx[pos]]
        if a == 0:
            continue
        rest = idx[1:pos] + idx[pos + 1:]
        term = a * _pf(A, rest)
        total += term if pos % 2 else -term
    return total


def pfaffian_by_matchings(A: Sequence[Sequence]) -> Fraction:
    """Pfaffian as the signed sum over all permutations (exponential; a test oracle)."""
    n = len(A)
    if n % 2:
        return ZERO
    m = n // 2
    total = ZERO
    for perm in permutations(range(n)):
        if any(perm[2 * k] > perm[2 * k + 1] for k in range(m)):
            continue
        term = ONE
        for k in range(m):
            term *= as_fraction(A[perm[2 * k]][perm[2 * k + 1]])
            if term == 0:
                break
        if term:
            total += _perm_sign(perm) * term
    # ordered pairs still list each matching m! times
    return total / factorial(m)


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def interpolate(xs: Sequence, ys: Sequence) -> Polynomial:
    """Lagrange interpolant through (xs[i], ys[i]); exact over Q."""
    xs, ys = vec(xs), vec(ys)
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    out = Polynomial()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if not yi:
            continue
        basis = Polynomial([1])
        denom = ONE
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * Polynomial([-xj, 1])
                denom *= xi - xj
        out = out + basis * (yi / denom)
    return out
