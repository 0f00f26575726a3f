"""Exact binomial coefficients, including the generalized negative-argument case."""

import math


def binom(n: int, k: int) -> int:
    """Binomial coefficient C(n, k) over the integers.

    Conventions: C(n, k) = 0 for k < 0, and for 0 <= n < k.  Negative upper
    argument follows the generalized definition
    C(n, k) = (-1)^k * C(k - n - 1, k), so that identities such as the
    Vandermonde convolution hold verbatim for all integer arguments.
    """
    if k < 0:
        return 0
    if n >= 0:
        return math.comb(n, k) if k <= n else 0
    return (-1) ** k * math.comb(k - n - 1, k)
