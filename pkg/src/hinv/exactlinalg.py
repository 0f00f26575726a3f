"""Small dense exact linear algebra over rationals.

Everything operates on lists of lists of ``fractions.Fraction`` and is sized
for the modest dimensions this package needs (a couple of dozen rows at
most), so plain Gaussian elimination is used throughout.  No floating point
enters anywhere in this module.
"""

from fractions import Fraction


class SingularMatrixError(ValueError):
    """Square system without a unique solution."""


class InconsistentSystemError(ValueError):
    """Linear system that admits no solution at all."""


def identity(n):
    return [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]


def mat_copy(a):
    return [[Fraction(x) for x in row] for row in a]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c, a):
    return [[c * x for x in row] for row in a]


def mat_mul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    out = [[Fraction(0)] * p for _ in range(n)]
    for i in range(n):
        for k in range(m):
            aik = a[i][k]
            if aik:
                row_b = b[k]
                row_o = out[i]
                for j in range(p):
                    row_o[j] += aik * row_b[j]
    return out


def mat_vec(a, v):
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def transpose(a):
    return [list(col) for col in zip(*a)]


def mat_det(a) -> Fraction:
    n = len(a)
    if n == 0:
        return Fraction(1)
    a = mat_copy(a)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        inv = Fraction(1) / a[col][col]
        for r in range(col + 1, n):
            if a[r][col]:
                f = a[r][col] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


def leading_principal_minors(a):
    """Determinants of the k-by-k upper-left blocks, k = 1..n."""
    n = len(a)
    return [mat_det([row[:k] for row in a[:k]]) for k in range(1, n + 1)]


def mat_solve(a, b):
    """Unique solution of a square system, or SingularMatrixError."""
    n = len(a)
    aug = [list(row) + [Fraction(rhs)] for row, rhs in zip(mat_copy(a), b)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrixError(f"no pivot in column {col + 1}")
        if pivot != col:
            aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n] for row in aug]


def _row_reduce(aug, cols):
    """In-place Gauss-Jordan on an augmented matrix; returns pivot columns."""
    pivots = []
    row = 0
    for col in range(cols):
        pivot = next((r for r in range(row, len(aug)) if aug[r][col] != 0), None)
        if pivot is None:
            continue
        aug[row], aug[pivot] = aug[pivot], aug[row]
        inv = Fraction(1) / aug[row][col]
        aug[row] = [x * inv for x in aug[row]]
        for r in range(len(aug)):
            if r != row and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[row])]
        pivots.append(col)
        row += 1
        if row == len(aug):
            break
    return pivots


def solve_consistent(a, b):
    """One solution of a (possibly rank-deficient) consistent system.

    Free variables are set to zero.  Raises InconsistentSystemError when the
    system has no solution.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    aug = [list(row) + [Fraction(rhs)] for row, rhs in zip(mat_copy(a), b)]
    pivots = _row_reduce(aug, n)
    for r in range(len(pivots), m):
        if aug[r][n] != 0:
            raise InconsistentSystemError("system has no solution")
    x = [Fraction(0)] * n
    for r, col in enumerate(pivots):
        x[col] = aug[r][n]
    return x


def mat_nullspace(a):
    """Basis of the right null space of a rectangular matrix."""
    m = len(a)
    n = len(a[0]) if m else 0
    red = mat_copy(a)
    pivots = _row_reduce(red, n)
    pivot_set = set(pivots)
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * n
        vec[free] = Fraction(1)
        for r, col in enumerate(pivots):
            vec[col] = -red[r][free]
        basis.append(vec)
    return basis


def mat_adjugate(a):
    """Adjugate (transpose of the cofactor matrix), by exact cofactors."""
    n = len(a)
    if n == 1:
        return [[Fraction(1)]]
    adj = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for r, row in enumerate(a) if r != i]
            adj[j][i] = (-1) ** (i + j) * mat_det(minor)
    return adj
