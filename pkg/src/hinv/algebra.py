"""Step-coefficient matrices and their invariant polynomials.

A fixed-step method for the nonexpansive fixed-point problem y = T(y),
spending one operator evaluation per step, can be written as

    y_{k+1} = y_k - sum_{j=0..k} h_{k+1,j+1} (y_j - T y_j)

and is fully described by the lower-triangular matrix of its coefficients.
This module provides that matrix type together with the exact-rational
machinery built on it:

* ``p_invariant`` -- the degree-m invariant polynomials P(k, m) whose
  terminal values characterize rate-optimal methods,
* ``q_partial`` -- the column-restricted partial invariants Q(k, m, j),
* ``d_value``   -- the alternating sums D(k),
* ``h_dual``    -- the anti-diagonal transpose,
* ``q_profile`` / ``h_from_q_profile`` -- the exact bijection between a
  matrix with nonzero diagonal and its table of terminal partial
  invariants.

All arithmetic is exact over ``fractions.Fraction``; nothing here rounds,
and floats are rejected at the door.
"""

from fractions import Fraction


class DegenerateProfileError(ValueError):
    """A partial-invariant profile whose anti-diagonal vanishes somewhere.

    The profile-to-matrix reconstruction divides by the anti-diagonal
    values Q(N-1, N-j, j); when one of them is zero the correspondence
    breaks down and no unique preimage exists.
    """


def as_rational(value) -> Fraction:
    """Coerce to Fraction, rejecting floats (which are not exact inputs)."""
    if isinstance(value, float):
        raise TypeError("float is not an exact rational; pass Fraction, int or 'p/q' string")
    return Fraction(value)


class HMatrix:
    """Lower-triangular matrix of exact rational step coefficients.

    Row k (1-based) holds the coefficients (k, 1), ..., (k, k); everything
    above the diagonal is identically zero.  A matrix with ``n_minus_1``
    rows drives ``n_minus_1`` operator evaluations and its terminal iterate
    is judged against the horizon N = ``n_minus_1`` + 1.  The empty matrix
    (zero rows) is allowed and represents the do-nothing method.
    """

    __slots__ = ("_rows",)

    def __init__(self, rows):
        built = []
        for k, row in enumerate(rows, start=1):
            entries = tuple(as_rational(x) for x in row)
            if len(entries) != k:
                raise ValueError(f"row {k} must have exactly {k} entries, got {len(entries)}")
            built.append(entries)
        self._rows = tuple(built)

    @property
    def n_minus_1(self) -> int:
        """Matrix dimension = number of operator evaluations."""
        return len(self._rows)

    @property
    def n(self) -> int:
        """The horizon N = dimension + 1 appearing in the rate 4R^2/N^2."""
        return len(self._rows) + 1

    @property
    def rows(self):
        return self._rows

    def entry(self, k: int, j: int) -> Fraction:
        """h_{k,j} for 1 <= k, j <= dimension; exact zero above the diagonal."""
        if not (1 <= k <= self.n_minus_1 and 1 <= j <= self.n_minus_1):
            raise ValueError(f"index ({k},{j}) outside a {self.n_minus_1}x{self.n_minus_1} matrix")
        if j > k:
            return Fraction(0)
        return self._rows[k - 1][j - 1]

    def column_sum(self, j: int, lo: int, hi: int) -> Fraction:
        """Sum of h_{i,j} for lo <= i <= hi (empty range gives 0)."""
        if not 1 <= j <= self.n_minus_1 or hi > self.n_minus_1:
            raise ValueError(f"column sum ({j},{lo},{hi}) outside a {self.n_minus_1}-row matrix")
        total = Fraction(0)
        for i in range(max(lo, j), hi + 1):
            total += self._rows[i - 1][j - 1]
        return total

    def truncate(self, rows: int) -> "HMatrix":
        """The leading rows-by-rows submatrix (a prefix of the method)."""
        if not 0 <= rows <= self.n_minus_1:
            raise ValueError(f"cannot truncate {self.n_minus_1} rows to {rows}")
        return HMatrix(self._rows[:rows])

    def __eq__(self, other):
        return isinstance(other, HMatrix) and self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self._rows)
        return f"HMatrix([{body}])"


class QProfile:
    """Table of terminal partial invariants Q(N-1, k, j).

    Values live on the index set 1 <= j, 1 <= k, k + j <= N; everything with
    k + j > N is vacuously zero and is never stored.  ``n`` is the horizon N.
    """

    __slots__ = ("_n", "_values")

    def __init__(self, n: int, values):
        if n < 1:
            raise ValueError("profile horizon must be at least 1")
        table = {}
        for (k, j), raw in dict(values).items():
            if not (1 <= j and 1 <= k and k + j <= n):
                raise ValueError(f"index ({k},{j}) outside the profile domain for n={n}")
            v = as_rational(raw)
            if v != 0:
                table[(k, j)] = v
        self._n = n
        self._values = table

    @property
    def n(self) -> int:
        return self._n

    def value(self, k: int, j: int) -> Fraction:
        """Q(N-1, k, j); exact zero on the vacuous region k + j > N."""
        if not (1 <= k <= self._n - 1 and 1 <= j <= self._n - 1):
            raise ValueError(f"index ({k},{j}) outside 1..{self._n - 1}")
        return self._values.get((k, j), Fraction(0))

    def items(self):
        """All stored (k, j) -> value pairs in row-major order (zeros omitted)."""
        return sorted(self._values.items())

    def __eq__(self, other):
        return isinstance(other, QProfile) and self._n == other._n and self._values == other._values

    def __hash__(self):
        return hash((self._n, tuple(sorted(self._values.items()))))

    def __repr__(self):
        return f"QProfile(n={self._n}, values={dict(sorted(self._values.items()))})"


def _p_table(h: HMatrix, upto: int):
    """P(t, m) for t = 0..upto, m = 0..t, by the first-column recursion.

    P(t, 0) = 1 and P(t, m) = sum over j of (column-(j+1) sums of rows
    j+1..t) times P(j, m-1); this is the exact recursion satisfied by the
    invariant polynomials and costs O(t^2) values total.
    """
    table = [[Fraction(1)]]
    for t in range(1, upto + 1):
        row = [Fraction(1)]
        for m in range(1, t + 1):
            acc = Fraction(0)
            for j in range(m - 1, t):
                tail = h.column_sum(j + 1, j + 1, t)
                if tail:
                    acc += tail * table[j][m - 1]
            row.append(acc)
        table.append(row)
    return table


def p_invariant(h: HMatrix, k: int, m: int) -> Fraction:
    """The invariant polynomial P(k, m) of the step matrix.

    P(k, m) is the sum, over all chains
    1 <= j1 <= i1 < j2 <= i2 < ... < jm <= im <= k, of the products
    h_{i1,j1} ... h_{im,jm}; P(k, 0) = 1.  Computed by recursion, not by
    enumeration.
    """
    if not 1 <= k <= h.n_minus_1:
        raise ValueError(f"k={k} outside 1..{h.n_minus_1}")
    if not 0 <= m <= k:
        raise ValueError(f"m={m} outside 0..{k}")
    return _p_table(h, k)[k][m]


def _q_table(h: HMatrix, k: int):
    """Q(k, m, j) for m, j = 1..k as a dict; vacuous entries are absent."""
    table = {}
    for j in range(1, k + 1):
        table[(1, j)] = h.column_sum(j, j, k)
    for m in range(1, k):
        for j in range(1, k - m + 1):
            acc = Fraction(0)
            for ell in range(j + 1, k - m + 2):
                prev = table.get((m, ell))
                if prev:
                    acc += h.column_sum(j, j, ell - 1) * prev
            table[(m + 1, j)] = acc
    return table


def q_partial(h: HMatrix, k: int, m: int, j: int) -> Fraction:
    """The partial invariant Q(k, m, j): the part of P(k, m) whose chains start in column j.

    Vacuous when j > k - m + 1, in which case the value is exactly 0.
    """
    if not 1 <= k <= h.n_minus_1:
        raise ValueError(f"k={k} outside 1..{h.n_minus_1}")
    if not (1 <= m <= k and 1 <= j <= k):
        raise ValueError(f"(m, j)=({m},{j}) outside 1..{k}")
    if j > k - m + 1:
        return Fraction(0)
    return _q_table(h, k)[(m, j)]


def d_value(h: HMatrix, k: int) -> Fraction:
    """The alternating sum D(k) = sum_m (-1)^m P(k-1, m), via its recursion.

    D(1) = 1 and D(k+1) = D(k) - sum_j h_{k,j} D(j).  Defined for
    k = 1..dimension+1.
    """
    if not 1 <= k <= h.n_minus_1 + 1:
        raise ValueError(f"k={k} outside 1..{h.n_minus_1 + 1}")
    d = [None, Fraction(1)]
    for t in range(1, k):
        nxt = d[t]
        for j in range(1, t + 1):
            hij = h.entry(t, j)
            if hij:
                nxt -= hij * d[j]
        d.append(nxt)
    return d[k]


def h_dual(h: HMatrix) -> HMatrix:
    """The anti-diagonal transpose: entry (k, j) becomes entry (N-j, N-k).

    An involution that preserves every terminal invariant P(N-1, m).
    """
    n = h.n
    return HMatrix([
        [h.entry(n - j, n - k) for j in range(1, k + 1)]
        for k in range(1, h.n_minus_1 + 1)
    ])


def q_profile(h: HMatrix) -> QProfile:
    """All terminal partial invariants Q(N-1, k, j) of the matrix as one table."""
    size = h.n_minus_1
    if size == 0:
        return QProfile(1, {})
    table = _q_table(h, size)
    values = {
        (k, j): table[(k, j)]
        for j in range(1, size + 1)
        for k in range(1, size - j + 2)
    }
    return QProfile(h.n, values)


def h_from_q_profile(q: QProfile) -> HMatrix:
    """The unique step matrix with the given terminal partial invariants.

    Requires every anti-diagonal value Q(N-1, N-j, j) to be nonzero (those
    are the diagonal products h_{j,j} ... h_{N-1,N-1}); otherwise raises
    DegenerateProfileError.  Inverse of :func:`q_profile` on matrices with
    nonzero diagonal.

    Column by column, the diagonal entry comes from the ratio of two
    consecutive anti-diagonal values, interior entries invert the partial
    invariant recursion one order at a time, and the last row closes the
    column against Q(N-1, 1, j).
    """
    n = q.n
    size = n - 1
    if size == 0:
        return HMatrix([])
    for j in range(1, size + 1):
        if q.value(n - j, j) == 0:
            raise DegenerateProfileError(f"anti-diagonal value Q({size},{n - j},{j}) is zero")

    rows = [[Fraction(0)] * k for k in range(1, size + 1)]

    def put(i, j, v):
        rows[i - 1][j - 1] = v

    def col_sum(j, lo, hi):
        return sum((rows[i - 1][j - 1] for i in range(lo, hi + 1)), Fraction(0))

    for j in range(1, size + 1):
        if j == size:
            put(size, size, q.value(1, size))
            continue
        put(j, j, q.value(n - j, j) / q.value(n - j - 1, j + 1))
        for i in range(j + 1, size):
            acc = q.value(n - i, j)
            for ell in range(j + 1, i + 1):
                acc -= col_sum(j, j, ell - 1) * q.value(n - i - 1, ell)
            put(i, j, acc / q.value(n - i - 1, i + 1) - col_sum(j, j, i - 1))
        put(size, j, q.value(1, j) - col_sum(j, j, size - 1))

    return HMatrix(rows)
