"""Generators for the named optimal-method families.

The optimal region is carved out by certificate nonnegativity inside the
invariance level set, and its distinguished members have *sparse*
certificates: per column j one keeps either the certificate right below
the diagonal ("top": lambda_{j+1,j} alone survives in that column) or the
one in the last row ("bottom": lambda_{N,j} alone).  Each per-column choice
pins the column of the terminal partial-invariant table down to one degree
of freedom, and the invariance sums close the system, so a sparsity
pattern determines the method uniquely.

Provided here:

* ``ohm`` / ``dual_ohm``        -- the all-top and all-bottom methods,
* ``self_dual_mixed``           -- top below a split column, bottom above,
* ``second_mixed``              -- the opposite split,
* ``strange3``                  -- the exceptional 3-step method whose
                                   anti-diagonal transpose is *not* optimal,
* ``q_from_sparsity``           -- the general top/bottom pipeline,
* ``anytime_extend`` / ``is_ohm_tail`` -- the unique per-iterate-optimal
                                   continuation of an optimal prefix.
"""

from dataclasses import dataclass
from fractions import Fraction

from .algebra import HMatrix, QProfile, h_from_q_profile
from .certify import certify
from .combinatorics import binom

TOP = "top"
BOTTOM = "bottom"


class DegeneratePatternError(ValueError):
    """A sparsity pattern whose induced profile hits a zero anti-diagonal value."""


def ohm(n: int) -> HMatrix:
    """Interpolated-anchor method: h_{k,j} = -j/(k(k+1)) below, k/(k+1) on the diagonal.

    Realizes y_{k+1} = y_0/(k+2) + (k+1) T y_k/(k+2); the unique method that
    is optimal at every iterate, not only the terminal one.
    """
    if n < 2:
        raise ValueError("horizon must be at least 2")
    return HMatrix([
        [Fraction(-j, k * (k + 1)) if j < k else Fraction(k, k + 1) for j in range(1, k + 1)]
        for k in range(1, n)
    ])


def dual_ohm(n: int) -> HMatrix:
    """Anti-diagonal transpose of :func:`ohm`, written in closed form.

    h_{k,j} = -(N-k)/((N-j)(N-j+1)) below the diagonal, (N-k)/(N-k+1) on it.
    """
    if n < 2:
        raise ValueError("horizon must be at least 2")
    return HMatrix([
        [
            Fraction(-(n - k), (n - j) * (n - j + 1)) if j < k else Fraction(n - k, n - k + 1)
            for j in range(1, k + 1)
        ]
        for k in range(1, n)
    ])


def self_dual_mixed(n: int, n_prime: int) -> HMatrix:
    """Block method: top sparsity for columns j < n', bottom for j >= n'.

    Upper-left block is ohm(n') shortened by one row, lower-right is the
    anti-diagonal transpose of ohm(n - n') shortened by one row, and the
    bridging row/column through index n' is

        h_{n',n'} = n'(n - n')/n,
        h_{n',j}  = j (1/n - 1/n'),          j < n',
        h_{k,n'}  = (n - k)(1/n - 1/(n-n')), k > n'.

    For even n with n' = n/2 the result equals its own anti-diagonal
    transpose.
    """
    if not 2 <= n_prime <= n - 2:
        raise ValueError(f"split index must satisfy 2 <= n' <= {n - 2}")
    top = ohm(n_prime)
    bottom = dual_ohm(n - n_prime)
    rows = []
    for k in range(1, n):
        row = [Fraction(0)] * k
        for j in range(1, k + 1):
            if k < n_prime:
                row[j - 1] = top.entry(k, j)
            elif k == n_prime:
                if j < n_prime:
                    row[j - 1] = j * (Fraction(1, n) - Fraction(1, n_prime))
                else:
                    row[j - 1] = Fraction(n_prime * (n - n_prime), n)
            else:
                if j == n_prime:
                    row[j - 1] = (n - k) * (Fraction(1, n) - Fraction(1, n - n_prime))
                elif j > n_prime:
                    row[j - 1] = bottom.entry(k - n_prime, j - n_prime)
        rows.append(row)
    return HMatrix(rows)


def second_mixed(n: int, n_prime: int) -> HMatrix:
    """Block method: bottom sparsity for columns j < n', top for j >= n'.

    Upper-left corner agrees with dual_ohm(n), lower-right with ohm(n - n' + 1),
    and the first n' - 1 columns are constant below row n' - 1:

        h_{k,j} = -(n - n' + 1) / (2 (n-j)(n-j+1)),  k >= n', j <= n' - 1.
    """
    if not 2 <= n_prime <= n - 2:
        raise ValueError(f"split index must satisfy 2 <= n' <= {n - 2}")
    rows = []
    for k in range(1, n):
        row = []
        for j in range(1, k + 1):
            if j == k <= n_prime - 1:
                v = Fraction(n - k, n - k + 1)
            elif j < k <= n_prime - 1:
                v = Fraction(-(n - k), (n - j) * (n - j + 1))
            elif j == k:
                v = Fraction(k - n_prime + 1, k - n_prime + 2)
            elif n_prime <= j:
                v = Fraction(-(j - n_prime + 1), (k - n_prime + 1) * (k - n_prime + 2))
            else:
                v = Fraction(-(n - n_prime + 1), 2 * (n - j) * (n - j + 1))
            row.append(v)
        rows.append(row)
    return HMatrix(rows)


def strange3() -> HMatrix:
    """The exceptional 3-step optimal method.

    Its certificate pattern keeps lambda_{3,1}, lambda_{4,2}, lambda_{4,3}
    (zeroing lambda_{2,1}, lambda_{3,2}, lambda_{4,1}), which is neither a
    top/bottom mixture nor closed under the anti-diagonal transpose: the
    transposed matrix satisfies invariance but picks up a negative
    certificate, so it is not optimal.
    """
    return HMatrix([
        [Fraction(3, 4)],
        [Fraction(-1, 4), Fraction(4, 7)],
        [Fraction(-1, 12), Fraction(-1, 14), Fraction(7, 12)],
    ])


@dataclass(frozen=True)
class SparsityChoice:
    """A per-column choice of certificate sparsity, TOP or BOTTOM, for j = 1..n-2."""

    n: int
    pattern: tuple

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("sparsity patterns need a horizon of at least 3")
        pat = tuple(self.pattern)
        if len(pat) != self.n - 2:
            raise ValueError(f"pattern must cover columns 1..{self.n - 2}")
        for entry in pat:
            if entry not in (TOP, BOTTOM):
                raise ValueError(f"pattern entries must be {TOP!r} or {BOTTOM!r}, got {entry!r}")
        object.__setattr__(self, "pattern", pat)

    def choice(self, j: int) -> str:
        if not 1 <= j <= self.n - 2:
            raise ValueError(f"column {j} outside 1..{self.n - 2}")
        return self.pattern[j - 1]

    @classmethod
    def all_top(cls, n: int) -> "SparsityChoice":
        return cls(n, (TOP,) * (n - 2))

    @classmethod
    def all_bottom(cls, n: int) -> "SparsityChoice":
        return cls(n, (BOTTOM,) * (n - 2))

    @classmethod
    def split(cls, n: int, n_prime: int, low: str, high: str) -> "SparsityChoice":
        """``low`` for columns j < n_prime, ``high`` for j >= n_prime."""
        return cls(n, tuple(low if j < n_prime else high for j in range(1, n - 1)))


def q_from_sparsity(choice: SparsityChoice) -> QProfile:
    """The unique terminal partial-invariant profile realizing a sparsity choice.

    Per column j the choice fixes the ratios
        Q(N-1, k, j) = c_{k,j} Q(N-1, N-j, j),    k = 1..N-j-1,
    with c_{k,j} = C(N-j-1, k-1) for TOP and (N-j+1)/(k+1) * C(N-j-1, k-1)
    for BOTTOM.  Seeding with Q(N-1, N-1, 1) = 1/N and alternating with the
    invariance sums closes the whole table column by column.  A zero
    anti-diagonal value encountered on the way (impossible for top/bottom
    mixtures, surfaced rather than patched) raises DegeneratePatternError.
    """
    n = choice.n
    values = {(n - 1, 1): Fraction(1, n)}
    for j in range(1, n):
        anchor = values[(n - j, j)]
        if anchor == 0:
            raise DegeneratePatternError(f"anti-diagonal value at column {j} vanished")
        if j <= n - 2:
            kind = choice.choice(j)
            for k in range(1, n - j):
                c = Fraction(binom(n - j - 1, k - 1))
                if kind == BOTTOM:
                    c *= Fraction(n - j + 1, k + 1)
                values[(k, j)] = c * anchor
        if j < n - 1:
            m = n - j - 1
            closing = Fraction(binom(n, m + 1), n)
            for i in range(1, j + 1):
                closing -= values[(m, i)]
            values[(m, j + 1)] = closing
    return QProfile(n, values)


def h_from_sparsity(choice: SparsityChoice) -> HMatrix:
    """Matrix form of :func:`q_from_sparsity`."""
    return h_from_q_profile(q_from_sparsity(choice))


def anytime_extend(h: HMatrix, target: int) -> HMatrix:
    """Extend an optimal prefix so every added iterate is optimal too.

    Each appended row is forced:
        h_{r,r} = r/(r+1),
        h_{r,m} = -(h_{m,m} + ... + h_{r-1,m}) / (r+1),  m < r,
    which realizes y_r = y_0/(r+1) + r T y_{r-1}/(r+1) on top of whatever
    prefix came before.  Requires the prefix itself to certify optimal
    (the per-iterate guarantee for the tail leans on the prefix's
    certificate identity) and target > current dimension.
    """
    if not certify(h).is_optimal:
        raise ValueError("prefix does not certify optimal; cannot extend")
    if target <= h.n_minus_1:
        raise ValueError(f"target {target} must exceed the current dimension {h.n_minus_1}")
    rows = [list(row) for row in h.rows]
    for r in range(h.n_minus_1 + 1, target + 1):
        row = []
        for m in range(1, r):
            col = sum((rows[i - 1][m - 1] for i in range(m, r)), Fraction(0))
            row.append(Fraction(-1, r + 1) * col)
        row.append(Fraction(r, r + 1))
        rows.append(row)
    return HMatrix(rows)


def is_ohm_tail(h: HMatrix, from_row: int) -> bool:
    """Whether every row at index >= from_row matches the forced extension formulas."""
    for r in range(max(from_row, 1), h.n_minus_1 + 1):
        if h.entry(r, r) != Fraction(r, r + 1):
            return False
        for m in range(1, r):
            col = sum((h.entry(i, m) for i in range(m, r)), Fraction(0))
            if h.entry(r, m) != Fraction(-1, r + 1) * col:
                return False
    return True
