"""Adversarial constructions: the cyclic operator and Gram-matrix witnesses.

Two exact mechanisms force lower bounds on the terminal residual of a
fixed-step method:

1. The *cyclic linear operator* T = I - 2G on R^N.  Started from the
   specific point whose image under G is the first basis vector, any
   method's terminal residual decomposes orthogonally, with a fixed
   component of squared norm exactly 4 R^2 / N^2; the other component
   vanishes exactly on the invariance level set.  This alone refutes any
   matrix violating invariance.

2. For a matrix that *is* invariant but has a negative certificate
   lambda*_{i0,j0}, the Gram matrix of the run on the cyclic operator is
   perturbed inside the cone of valid interpolation data: a direction
   delta is built by exact projections so that every monotonicity trace
   stays zero except the one at (i0, j0), positive-definiteness is
   restored at first order, and the terminal entry strictly exceeds
   1/N^2.  Any operator interpolating the perturbed data (one exists by
   nonexpansive extension of the finite data) then beats the optimal
   rate, refuting the matrix.

Everything except the final float emission (:func:`witness_vectors`) is
exact rational arithmetic; square roots never appear because only squared
norms and inner products are ever compared, with the scalar r_sq/N carried
symbolically.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebra import HMatrix, _p_table, as_rational
from .certify import InternalConsistencyError, InvarianceError, certificates, invariance_report
from .combinatorics import binom
from .exactlinalg import leading_principal_minors, mat_adjugate, solve_consistent


@dataclass(frozen=True)
class WorstCaseOperator:
    """The cyclic contraction G on R^n: T = I - 2G is orthogonal.

    G has 1/2 on the diagonal, -1/2 on the subdiagonal and +1/2 in the
    upper-right corner; 2G has determinant 2, so the fixed point of T is
    origin only.
    """

    n: int
    g_matrix: tuple

    def g_rows(self):
        return [list(row) for row in self.g_matrix]

    def t_matrix(self):
        """I - 2G as exact rationals."""
        return [
            [(Fraction(1) if i == j else Fraction(0)) - 2 * self.g_matrix[i][j] for j in range(self.n)]
            for i in range(self.n)
        ]


@dataclass(frozen=True)
class GramWitness:
    """Exact interpolation data refuting the optimal rate for one matrix.

    ``gram`` is the (N+1)x(N+1) Gram matrix of the resolvent increments
    g_1..g_N and of y_0 - y_star; it is positive definite, its corner entry
    is exactly 1 (unit initial distance), every monotonicity trace is zero
    except a strictly positive one at ``violated_pair``, and the terminal
    residual 4 * gram[N][N] strictly exceeds 4/N^2.
    """

    n: int
    gram: tuple
    epsilon: Fraction
    direction: tuple
    violated_pair: tuple
    residual_sq: Fraction

    def gram_rows(self):
        return [list(row) for row in self.gram]

    def bound_sq(self) -> Fraction:
        return Fraction(4, self.n ** 2)


@dataclass(frozen=True)
class TraceLedger:
    """All interpolation traces of one Gram matrix against one method."""

    n: int
    a_traces: dict
    b_traces: dict

    def all_zero(self) -> bool:
        return all(v == 0 for v in self.a_traces.values()) and all(
            v == 0 for v in self.b_traces.values()
        )

    def zero_except(self, pair) -> bool:
        """Zero everywhere, except strictly positive at the given a-trace."""
        for key, v in self.a_traces.items():
            if key == pair:
                if v <= 0:
                    return False
            elif v != 0:
                return False
        return all(v == 0 for v in self.b_traces.values())


def worst_operator(n: int) -> WorstCaseOperator:
    """The cyclic operator on R^n (n >= 2)."""
    if n < 2:
        raise ValueError("operator dimension must be at least 2")
    half = Fraction(1, 2)
    g = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = half
        if i + 1 < n:
            g[i + 1][i] = -half
    g[0][n - 1] += half
    return WorstCaseOperator(n=n, g_matrix=tuple(tuple(row) for row in g))


def terminal_gy(h: HMatrix, r_sq) -> list:
    """Coefficients of the terminal gradient direction on the cyclic operator.

    Returns the vector v with
        v_j = sum_{m >= j-1} (-1)^(m+j-1) C(m, j-1) P(N-1, m),
    so that the squared terminal gradient norm is (r_sq/N) * |v|^2.  On the
    invariance level set every v_j equals 1/N.
    """
    r_sq = as_rational(r_sq)
    if r_sq <= 0:
        raise ValueError("squared initial distance must be positive")
    n = h.n
    p = _p_table(h, n - 1)[n - 1]
    return [
        sum(
            ((-1) ** (m + j - 1) * binom(m, j - 1) * p[m] for m in range(j - 1, n)),
            Fraction(0),
        )
        for j in range(1, n + 1)
    ]


def worst_case_residual_sq(h: HMatrix, r_sq) -> Fraction:
    """Exact terminal residual of the method on the cyclic operator.

    Equals 4 * r_sq / N^2 exactly on the invariance level set and is
    strictly larger off it (the fixed orthogonal component contributes
    exactly 4 r_sq / N^2, the rest is a sum of squares).
    """
    r_sq = as_rational(r_sq)
    v = terminal_gy(h, r_sq)
    return 4 * (r_sq / h.n) * sum((x * x for x in v), Fraction(0))


def gram_g0(h: HMatrix):
    """Gram matrix of the run on the cyclic operator, with unit initial distance.

    Row/column i <= N holds the pairwise products of the resolvent
    increments,
        (G0)_{i,j} = (1/N) sum_{m,n} (-1)^(m+n) C(m+n, m) P(i-1, m) P(j-1, n),
    the border holds their products with y_0 - y_star (all equal to 1/N),
    and the corner is 1.  Returned as an (N+1)x(N+1) list of lists.
    """
    n = h.n
    p = _p_table(h, n - 1)
    gram = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        pi = p[i - 1]
        for j in range(1, i + 1):
            pj = p[j - 1]
            acc = Fraction(0)
            for m in range(i):
                if not pi[m]:
                    continue
                for nn in range(j):
                    if pj[nn]:
                        acc += (-1) ** (m + nn) * binom(m + nn, m) * pi[m] * pj[nn]
            gram[i - 1][j - 1] = acc / n
            gram[j - 1][i - 1] = gram[i - 1][j - 1]
    for i in range(n):
        gram[i][n] = Fraction(1, n)
        gram[n][i] = Fraction(1, n)
    gram[n][n] = Fraction(1)
    return gram


@dataclass(frozen=True)
class ConstraintBasis:
    """Symbolic interpolation constraint matrices for one method.

    In the coordinates g_i = e_i (i = 1..N), y_0 - y_star = e_{N+1}, the
    iterates are exact linear expressions in the basis, and each
    monotonicity inequality <x_i - x_j, g_i - g_j> >= 0 (resp.
    <x_i - y_star, g_i> >= 0) becomes a trace inequality against the
    symmetrized outer product stored here.  ``c``, ``d``, ``e`` are the
    corner normalizer and the two terminal-entry selectors used by the
    perturbation construction.
    """

    n: int
    a: dict
    b: dict
    c: list
    d: list
    e: list


def _sym_outer(u, v, dim):
    m = [[Fraction(0)] * dim for _ in range(dim)]
    for i in range(dim):
        ui = u[i]
        vi = v[i]
        for j in range(dim):
            m[i][j] = (ui * v[j] + vi * u[j]) / 2
    return m


def constraint_matrices(h: HMatrix) -> ConstraintBasis:
    n = h.n
    dim = n + 1

    def basis_vec(i):
        vec = [Fraction(0)] * dim
        vec[i - 1] = Fraction(1)
        return vec

    # x_i = y_{i-1} - g_i with y_i = e_{N+1} - sum_j (2 * column sums) e_j.
    xs = {}
    for i in range(1, n + 1):
        vec = [Fraction(0)] * dim
        vec[dim - 1] = Fraction(1)
        for j in range(1, i):
            vec[j - 1] = -2 * h.column_sum(j, j, i - 1)
        vec[i - 1] -= 1
        xs[i] = vec

    a = {}
    for i in range(2, n + 1):
        for j in range(1, i):
            dx = [xi - xj for xi, xj in zip(xs[i], xs[j])]
            dg = [gi - gj for gi, gj in zip(basis_vec(i), basis_vec(j))]
            a[(i, j)] = _sym_outer(dx, dg, dim)
    b = {i: _sym_outer(xs[i], basis_vec(i), dim) for i in range(1, n + 1)}

    c = [[Fraction(0)] * dim for _ in range(dim)]
    c[dim - 1][dim - 1] = Fraction(1)
    d = [[Fraction(0)] * dim for _ in range(dim)]
    d[n - 1][n - 1] = Fraction(1)
    d[n - 1][dim - 1] = Fraction(-1, n)
    d[dim - 1][n - 1] = Fraction(-1, n)
    e = [[Fraction(0)] * dim for _ in range(dim)]
    e[n - 1][n - 1] = Fraction(1)
    return ConstraintBasis(n=n, a=a, b=b, c=c, d=d, e=e)


def _trace_inner(x, y):
    """Trace inner product of two symmetric matrices."""
    return sum(
        (xi * yi for rx, ry in zip(x, y) for xi, yi in zip(rx, ry)),
        Fraction(0),
    )


def interpolation_traces(gram, h: HMatrix) -> TraceLedger:
    """Every interpolation trace of a Gram matrix against a method's constraints."""
    n = h.n
    gram = [[as_rational(x) for x in row] for row in gram]
    if len(gram) != n + 1 or any(len(row) != n + 1 for row in gram):
        raise ValueError(f"gram matrix must be {n + 1}x{n + 1} for this method")
    basis = constraint_matrices(h)
    return TraceLedger(
        n=n,
        a_traces={key: _trace_inner(gram, mat) for key, mat in basis.a.items()},
        b_traces={key: _trace_inner(gram, mat) for key, mat in basis.b.items()},
    )


def adjugate_spotcheck(h: HMatrix) -> bool:
    """Verify the adjugate of the run's Gram matrix has its forced sparse shape.

    On the invariance level set the adjugate vanishes outside the trailing
    2x2 block, with
        adj[N][N]   =  (prod_i h_{i,i}^(2(N-i))) / N^(N-2),
        adj[N][N+1] = -(prod_i h_{i,i}^(2(N-i))) / N^(N-1).
    Returns False on any mismatch (which would indicate a bug, not bad
    input).  Refuses non-invariant matrices.
    """
    report = invariance_report(h)
    if not report.is_invariant():
        raise InvarianceError(report)
    n = h.n
    adj = mat_adjugate(gram_g0(h))
    prod = Fraction(1)
    for i in range(1, n):
        prod *= h.entry(i, i) ** (2 * (n - i))
    expected_corner = prod / Fraction(n ** (n - 2))
    expected_off = -prod / Fraction(n ** (n - 1))
    for i in range(n + 1):
        for j in range(n + 1):
            if i < n - 1 or j < n - 1:
                if adj[i][j] != 0:
                    return False
    return (
        adj[n - 1][n - 1] == expected_corner
        and adj[n - 1][n] == expected_off
        and adj[n][n - 1] == expected_off
    )


def _project_off_span(v, span):
    """v minus its trace-orthogonal projection onto the span of the given matrices.

    Least squares by exact normal equations; the spanning set may be
    linearly dependent (free coefficients are taken as zero).
    """
    gram = [[_trace_inner(x, y) for y in span] for x in span]
    rhs = [_trace_inner(x, v) for x in span]
    coeffs = solve_consistent(gram, rhs)
    out = [list(row) for row in v]
    for c, mat in zip(coeffs, span):
        if c:
            for i, row in enumerate(mat):
                for j, x in enumerate(row):
                    out[i][j] -= c * x
    return out


def build_perturbation(h: HMatrix, i0: int, j0: int):
    """Exact perturbation direction activating the negative certificate at (i0, j0).

    With the constraint matrices of the method, let U be all monotonicity
    matrices except the one at (i0, j0), together with the corner
    normalizer.  The direction is
        delta = proj_perp(D, span(U + [E])) + proj_perp(E, span(U + [D])),
    where D and E select the terminal entries.  The kernel structure of the
    constraint family makes this succeed exactly when the certificate at
    (i0, j0) is negative; the five defining trace conditions are re-checked
    exactly before returning.
    """
    n = h.n
    if not (1 <= j0 < i0 <= n):
        raise ValueError(f"({i0},{j0}) is not a strict lower-triangular pair for horizon {n}")
    lam = certificates(h)  # raises InvarianceError off the level set
    if lam.value(i0, j0) >= 0:
        raise ValueError(f"no violation at ({i0},{j0}): certificate is {lam.value(i0, j0)}")

    basis = constraint_matrices(h)
    shared = [mat for key, mat in sorted(basis.a.items()) if key != (i0, j0)]
    shared += [basis.b[i] for i in range(1, n + 1)]
    shared.append(basis.c)
    part1 = _project_off_span(basis.d, shared + [basis.e])
    part2 = _project_off_span(basis.e, shared + [basis.d])
    delta = [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(part1, part2)]

    for key, mat in basis.a.items():
        tr = _trace_inner(delta, mat)
        if key == (i0, j0):
            if tr <= 0:
                raise InternalConsistencyError("activated trace is not strictly positive")
        elif tr != 0:
            raise InternalConsistencyError(f"monotonicity trace at {key} not annihilated")
    for i, mat in basis.b.items():
        if _trace_inner(delta, mat) != 0:
            raise InternalConsistencyError(f"fixed-point trace at {i} not annihilated")
    if _trace_inner(delta, basis.c) != 0:
        raise InternalConsistencyError("corner entry of the direction is nonzero")
    if _trace_inner(delta, basis.d) <= 0 or _trace_inner(delta, basis.e) <= 0:
        raise InternalConsistencyError("terminal-entry selectors not strictly positive")
    return delta


def suboptimality_witness(h: HMatrix, i0: int | None = None, j0: int | None = None) -> GramWitness:
    """Positive-definite Gram witness that the method misses the optimal rate.

    Builds the perturbation direction for the chosen negative-certificate
    pair (default: lexicographically smallest), then halves epsilon from 1
    until every leading principal minor of G0 + epsilon * delta is strictly
    positive; first-order positivity of the last minor and strict
    positivity of the first N minors at epsilon = 0 guarantee termination.
    The witness carries residual_sq = 4 * gram[N][N] > 4/N^2.
    """
    if (i0 is None) != (j0 is None):
        raise ValueError("pass both pair indices or neither")
    if i0 is None:
        lam = certificates(h)
        negative = lam.negative_pairs()
        if not negative:
            raise ValueError("no negative certificate: nothing to refute")
        i0, j0 = negative[0]
    delta = build_perturbation(h, i0, j0)
    n = h.n
    g0 = gram_g0(h)
    eps = Fraction(1)
    for _ in range(256):  # termination is guaranteed well before this
        gram = [
            [g0[i][j] + eps * delta[i][j] for j in range(n + 1)]
            for i in range(n + 1)
        ]
        if all(m > 0 for m in leading_principal_minors(gram)):
            break
        eps /= 2
    else:
        raise InternalConsistencyError("halving failed to restore positive definiteness")
    residual_sq = 4 * gram[n - 1][n - 1]
    if residual_sq <= Fraction(4, n * n):
        raise InternalConsistencyError("witness residual does not exceed the optimal rate")
    return GramWitness(
        n=n,
        gram=tuple(tuple(row) for row in gram),
        epsilon=eps,
        direction=tuple(tuple(row) for row in delta),
        violated_pair=(i0, j0),
        residual_sq=residual_sq,
    )


def witness_vectors(w: GramWitness):
    """Float realization of the witness: vectors whose Gram matrix is ``w.gram``.

    Rows of the Cholesky factor, in the order g_1, ..., g_N, y_0 - y_star,
    each a vector in R^(N+1).  Advisory output only -- all certification
    happened exactly upstream; the reconstruction is verified to reproduce
    the Gram entries to 1e-10.
    """
    gram = np.array([[float(x) for x in row] for row in w.gram])
    try:
        chol = np.linalg.cholesky(gram)
    except np.linalg.LinAlgError as exc:
        raise InternalConsistencyError("float Cholesky failed on an exactly PD matrix") from exc
    err = float(np.max(np.abs(chol @ chol.T - gram)))
    scale = max(1.0, float(np.max(np.abs(gram))))
    if err > 1e-10 * scale:
        raise InternalConsistencyError(f"float round-trip error {err} exceeds tolerance")
    return [chol[i, :].copy() for i in range(w.n + 1)]
