import random
from fractions import Fraction as F

import numpy as np
import pytest

import hinv as H
from hinv.combinatorics import binom
from hinv.exactlinalg import (
    leading_principal_minors,
    mat_det,
    mat_mul,
    mat_vec,
    transpose,
)
from hinv.oracles import (
    random_certificate_violating_h,
    random_h,
    random_invariant_h,
    random_noninvariant_h,
)
from hinv.worstcase import constraint_matrices


def test_worst_operator_small():
    op = H.worst_operator(2)
    assert op.g_matrix == ((F(1, 2), F(1, 2)), (F(-1, 2), F(1, 2)))


def test_worst_operator_algebraic_identities():
    for n in range(2, 11):
        g = H.worst_operator(n).g_rows()
        assert mat_det([[2 * x for x in row] for row in g]) == 2
        gt = transpose(g)
        sym = [[(a + b) / 2 for a, b in zip(ra, rb)] for ra, rb in zip(g, gt)]
        assert mat_mul(gt, g) == sym
        ones = [F(1)] * n
        assert mat_vec(g, ones) == [F(1)] + [F(0)] * (n - 1)


def test_worst_operator_t_is_orthogonal():
    for n in (2, 5, 8):
        t = H.worst_operator(n).t_matrix()
        assert mat_mul(transpose(t), t) == [
            [F(1) if i == j else F(0) for j in range(n)] for i in range(n)
        ]


def test_terminal_gy_values():
    for n in (3, 5, 8):
        assert H.terminal_gy(H.ohm(n), 1) == [F(1, n)] * n
    zero2 = H.HMatrix([[0], [0, 0]])
    assert H.terminal_gy(zero2, 1) == [1, 0, 0]
    rng = random.Random(5)
    for _ in range(5):
        h = random_invariant_h(rng, rng.randint(2, 7))
        assert H.terminal_gy(h, 1) == [F(1, h.n)] * h.n
    with pytest.raises(ValueError):
        H.terminal_gy(H.ohm(3), 0)


def test_worst_case_residual_values():
    assert H.worst_case_residual_sq(H.ohm(4), 1) == F(1, 4)
    assert H.worst_case_residual_sq(H.strange3(), 1) == F(1, 4)
    zero2 = H.HMatrix([[0], [0, 0]])
    assert H.worst_case_residual_sq(zero2, 1) == F(4, 3)
    # scales linearly in the squared initial distance
    assert H.worst_case_residual_sq(H.ohm(4), F(9, 2)) == F(9, 2) * F(1, 4)


def test_residual_tight_iff_invariant():
    rng = random.Random(11)
    for _ in range(20):
        n = rng.randint(2, 8)
        h = random_invariant_h(rng, n)
        assert H.worst_case_residual_sq(h, 1) == F(4, n * n)
        bad = random_noninvariant_h(rng, n - 1)
        assert H.worst_case_residual_sq(bad, 1) > F(4, n * n)


def test_power_expansion_matches_matrix_powers():
    # the closed binomial expansion of repeated applications of the cyclic map
    # to the adversarial start, on the exactly-scaled representative -1 vector
    for n in range(2, 9):
        g = H.worst_operator(n).g_rows()
        u = [F(-1)] * n
        current = mat_vec(g, u)
        for m in range(0, n):
            want = [
                -F(1, 2 ** m) * (-1) ** (j - 1) * binom(m, j - 1) if j <= m + 1 else F(0)
                for j in range(1, n + 1)
            ]
            assert current == want, (n, m)
            current = mat_vec(g, current)


def test_gram_g0_borders_and_first_entry():
    h = H.strange3()
    n = h.n
    g0 = H.gram_g0(h)
    assert g0[n][n] == 1
    for i in range(n):
        assert g0[i][n] == F(1, n) and g0[n][i] == F(1, n)
    assert g0[0][0] == F(1, n)


def test_gram_g0_invariance_structure(catalog8):
    for label, h in catalog8:
        n = h.n
        g0 = H.gram_g0(h)
        for i in range(n):
            assert g0[i][n - 1] == F(1, n * n), label
        assert [x * n for x in g0[n - 1]] == g0[n], label
        assert mat_det(g0) == 0, label


def test_gram_g0_leading_minors_formula(catalog8):
    for label, h in catalog8:
        n = h.n
        block = [row[:n] for row in H.gram_g0(h)[:n]]
        minors = leading_principal_minors(block)
        for k in range(1, n + 1):
            want = F(1, n ** k)
            for i in range(1, k):
                want *= h.entry(i, i) ** (2 * (k - i))
            assert minors[k - 1] == want, (label, k)
        assert all(m > 0 for m in minors), label


def test_gram_g0_traces_vanish_even_without_invariance():
    rng = random.Random(23)
    for _ in range(10):
        size = rng.randint(1, 7)
        h = random_h(rng, size)
        ledger = H.interpolation_traces(H.gram_g0(h), h)
        assert ledger.all_zero()


def test_interpolation_traces_identity_gram():
    # orthonormal increments and unit anchor against the one-step half matrix
    h = H.ohm(2)
    ident = [[F(1) if i == j else F(0) for j in range(3)] for i in range(3)]
    ledger = H.interpolation_traces(ident, h)
    assert ledger.a_traces == {(2, 1): F(-1)}
    assert ledger.b_traces == {1: F(-1), 2: F(-1)}


def test_interpolation_traces_dimension_check():
    with pytest.raises(ValueError):
        H.interpolation_traces([[F(1)]], H.ohm(3))


def test_adjugate_spotcheck(catalog8):
    for label, h in catalog8:
        if h.n <= 6:  # keep the exact cofactor work modest
            assert H.adjugate_spotcheck(h), label


def test_adjugate_spotcheck_refuses_noninvariant():
    with pytest.raises(H.InvarianceError):
        H.adjugate_spotcheck(H.HMatrix([["1/3"]]))


def test_constraint_family_kernel_identity():
    # sum of certificates against the monotonicity matrices, plus the terminal
    # fixed-point matrix and (N/2) times both terminal selectors, is exactly 0
    rng = random.Random(31)
    cases = [H.ohm(4), H.dual_ohm(5), H.strange3(), H.self_dual_mixed(6, 3)]
    cases += [random_invariant_h(rng, rng.randint(2, 8)) for _ in range(4)]
    for h in cases:
        n = h.n
        lam = H.certificates(h)
        basis = constraint_matrices(h)
        acc = [[F(0)] * (n + 1) for _ in range(n + 1)]

        def add(mat, c):
            for a in range(n + 1):
                for b_ in range(n + 1):
                    acc[a][b_] += c * mat[a][b_]

        for (i, j), mat in basis.a.items():
            add(mat, lam.value(i, j))
        add(basis.b[n], F(1))
        add(basis.d, F(n, 2))
        add(basis.e, F(n, 2))
        assert all(x == 0 for row in acc for x in row)


def test_build_perturbation_conditions():
    h = H.h_dual(H.strange3())
    delta = H.build_perturbation(h, 4, 2)
    n = h.n
    assert delta[n][n] == 0
    assert delta[n - 1][n - 1] - F(2, n) * delta[n - 1][n] > 0
    basis = constraint_matrices(h)
    from hinv.worstcase import _trace_inner

    for key, mat in basis.a.items():
        tr = _trace_inner(delta, mat)
        assert (tr > 0) if key == (4, 2) else (tr == 0), key
    for i, mat in basis.b.items():
        assert _trace_inner(delta, mat) == 0
    assert _trace_inner(delta, basis.d) > 0
    assert _trace_inner(delta, basis.e) > 0


def test_build_perturbation_errors():
    with pytest.raises(ValueError):
        H.build_perturbation(H.ohm(4), 2, 1)  # certificate nonnegative
    with pytest.raises(H.InvarianceError):
        H.build_perturbation(H.HMatrix([["1/3"]]), 2, 1)
    with pytest.raises(ValueError):
        H.build_perturbation(H.h_dual(H.strange3()), 2, 3)  # not lower-triangular


def _check_witness(h, w):
    n = h.n
    assert w.gram[n][n] == 1
    assert w.residual_sq == 4 * w.gram[n - 1][n - 1]
    assert w.residual_sq > F(4, n * n)
    assert all(m > 0 for m in leading_principal_minors(w.gram_rows()))
    ledger = H.interpolation_traces(w.gram, h)
    assert ledger.zero_except(w.violated_pair)


def test_witness_for_strange_dual():
    h = H.h_dual(H.strange3())
    w = H.suboptimality_witness(h)
    assert w.violated_pair == (3, 1)  # lexicographically smallest negative
    _check_witness(h, w)
    w42 = H.suboptimality_witness(h, 4, 2)
    assert w42.violated_pair == (4, 2)
    assert w42.residual_sq > F(1, 4)
    _check_witness(h, w42)


def test_witness_errors():
    with pytest.raises(ValueError):
        H.suboptimality_witness(H.ohm(5))


def test_witness_random_violating_population():
    rng = random.Random(2024)
    for n in (4, 5, 6):
        for _ in range(2):
            h = random_certificate_violating_h(rng, n)
            _check_witness(h, H.suboptimality_witness(h))


def test_witness_vectors_roundtrip():
    h = H.h_dual(H.strange3())
    w = H.suboptimality_witness(h, 4, 2)
    vecs = H.witness_vectors(w)
    assert len(vecs) == w.n + 1 and all(len(v) == w.n + 1 for v in vecs)
    gram_float = np.array([[float(x) for x in row] for row in w.gram])
    got = np.array(vecs) @ np.array(vecs).T
    assert float(np.max(np.abs(got - gram_float))) < 1e-10
    assert abs(float(np.dot(vecs[-1], vecs[-1])) - 1.0) < 1e-10
    assert float(np.dot(vecs[w.n - 1], vecs[w.n - 1])) > 1 / w.n ** 2
