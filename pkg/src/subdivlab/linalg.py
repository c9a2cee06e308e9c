"""Dense exact linear algebra over Q and Q(i).

Matrices are lists of row lists holding Fraction / GaussianRational entries.
Sizes here are small (tens of unknowns), so plain Gauss-Jordan is adequate.
"""
from __future__ import annotations

from fractions import Fraction

from .scalar import to_exact

__all__ = ["rref", "nullspace", "solve", "solve_affine", "inverse", "det", "SingularMatrixError",
           "zeros", "eye", "matmul", "matadd", "matsub", "matscale", "transpose", "is_zero_matrix",
           "charpoly", "root_multiplicity", "InconsistentSystemError"]


class SingularMatrixError(ArithmeticError):
    pass


class InconsistentSystemError(ArithmeticError):
    pass


def _copy(rows):
    return [[to_exact(x) for x in row] for row in rows]


def rref(rows):
    """Reduced row echelon form.  Returns ``(R, pivot_columns)``."""
    m = _copy(rows)
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        if piv != 1:
            m[r] = [x / piv for x in m[r]]
        row_r = m[r]
        for i in range(len(m)):
            if i != r:
                f = m[i][c]
                if f != 0:
                    m[i] = [x - f * y for x, y in zip(m[i], row_r)]
        pivots.append(c)
        r += 1
    return m, pivots


def nullspace(rows, ncols=None):
    """Basis (list of column vectors as lists) of the right kernel."""
    if not rows:
        n = ncols or 0
        return [[Fraction(int(i == k)) for i in range(n)] for k in range(n)]
    n = len(rows[0])
    R, piv = rref(rows)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, pc in enumerate(piv):
            v[pc] = -R[i][f]
        basis.append(v)
    return basis


def solve_affine(A, b):
    """All solutions of ``A x = b``: a particular solution plus a kernel basis.

    Free variables are set to zero in the particular solution.
    """
    n = len(A[0]) if A else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, piv = rref(aug)
    if n in piv:
        raise InconsistentSystemError("linear system has no solution")
    x = [Fraction(0)] * n
    for i, pc in enumerate(piv):
        x[pc] = R[i][n]
    return x, nullspace(A, n)


def solve(A, b):
    """Unique solution of a square nonsingular system."""
    x, ker = solve_affine(A, b)
    if ker:
        raise SingularMatrixError("system is singular")
    return x


def inverse(A):
    n = len(A)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return [row[n:] for row in R]


def det(A):
    m = _copy(A)
    n = len(m)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        piv = m[c][c]
        d = d * piv
        for i in range(c + 1, n):
            f = m[i][c] / piv
            if f != 0:
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return d


# ----------------------------------------------------------------------
# small dense helpers on nested lists


def zeros(s, r):
    return [[Fraction(0)] * r for _ in range(s)]


def eye(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def matmul(A, B):
    inner = len(B)
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        out.append([sum((row[k] * B[k][j] for k in range(inner) if row[k] != 0), Fraction(0))
                    for j in range(cols)])
    return out


def matadd(A, B):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def matsub(A, B):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def matscale(c, A):
    return [[c * x for x in row] for row in A]


def transpose(A):
    return [list(col) for col in zip(*A)]


def is_zero_matrix(A) -> bool:
    return all(x == 0 for row in A for x in row)


def charpoly(A):
    """Coefficients ``[c_0, ..., c_n]`` of ``det(x I - A)`` (``c_n = 1``), exact.

    Faddeev-LeVerrier recursion; fine for the dimensions used here (n <= ~20).
    """
    n = len(A)
    A = _copy(A)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    M = zeros(n, n)
    for k in range(1, n + 1):
        M = matmul(A, M)
        for i in range(n):
            M[i][i] = M[i][i] + coeffs[n - k + 1]
        AM = matmul(A, M)
        coeffs[n - k] = -sum((AM[i][i] for i in range(n)), Fraction(0)) / k
    return coeffs


def root_multiplicity(coeffs, x0):
    """Multiplicity of ``x0`` as a root of the polynomial ``sum c_k x^k``."""
    c = list(coeffs)
    mult = 0
    while len(c) > 1:
        # synthetic division by (x - x0), highest degree first
        hi_first = c[::-1]
        out = [hi_first[0]]
        for a in hi_first[1:]:
            out.append(a + out[-1] * x0)
        if out[-1] != 0:
            break
        mult += 1
        c = out[:-1][::-1]
    return mult
