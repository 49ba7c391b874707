"""Real-valued special functions backing the bound-state model.

Log-gamma, Beta, rising factorials, terminating hypergeometric sums and
Jacobi polynomials.  Everything is a pure function of its arguments; the
Jacobi weight (1-x)^a (1+x)^b is only an orthogonality statement for
a, b > -1, while pointwise evaluation is defined for any real a, b.
"""

import math

__all__ = [
    "ln_gamma",
    "beta",
    "pochhammer",
    "hyp_terminating",
    "jacobi_p",
]


def ln_gamma(x: float) -> float:
    """Natural logarithm of the Gamma function for x > 0."""
    x = float(x)
    if math.isnan(x) or math.isinf(x) or x <= 0.0:
        raise ValueError(f"ln_gamma requires a finite x > 0, got {x!r}")
    return math.lgamma(x)


def beta(x: float, y: float) -> float:
    """Euler Beta function B(x, y) = Gamma(x)Gamma(y)/Gamma(x+y), x, y > 0.

    Evaluated in log space so large arguments do not overflow.
    """
    return math.exp(ln_gamma(x) + ln_gamma(y) - ln_gamma(x + y))


def pochhammer(a: float, k: int) -> float:
    """Rising factorial (a)_k = a (a+1) ... (a+k-1), with (a)_0 = 1.

    Computed as a direct product, not a gamma ratio, so negative-integer
    bases terminate at exactly zero instead of hitting gamma poles.
    """
    if k != int(k) or k < 0:
        raise ValueError(f"pochhammer order must be a nonnegative integer, got {k!r}")
    out = 1.0
    for i in range(int(k)):
        out *= a + i
    return out


def hyp_terminating(n: int, b: float, c: float, s: float) -> float:
    """2F1(-n, b; c; s) evaluated as the exact finite sum over k = 0..n.

    c must not be zero or a negative integer above -n, otherwise a
    denominator Pochhammer (c)_k vanishes before the series terminates.
    """
    if n != int(n) or n < 0:
        raise ValueError(f"series order must be a nonnegative integer, got {n!r}")
    n = int(n)
    c_round = round(c)
    if abs(c - c_round) < 1e-12 and c_round <= 0 and -c_round <= n - 1:
        raise ValueError(f"denominator Pochhammer vanishes: c = {c!r} with n = {n}")
    total = 1.0
    term = 1.0
    for k in range(n):
        denom = (c + k) * (k + 1)
        if denom == 0.0:
            raise ValueError(f"denominator Pochhammer vanishes at k = {k + 1}")
        term *= (k - n) * (b + k) / denom * s
        total += term
    return total


def jacobi_p(n: int, a: float, b: float, x):
    """Jacobi polynomial P_n^(a,b)(x) by the three-term recurrence in degree.

    x may be a scalar or a numpy array; the recurrence is elementwise.
    """
    if n != int(n) or n < 0:
        raise ValueError(f"degree must be a nonnegative integer, got {n!r}")
    n = int(n)
    one = x * 0.0 + 1.0
    if n == 0:
        return one
    p_prev = one
    p_cur = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x
    for k in range(2, n + 1):
        s = 2.0 * k + a + b
        ak = 2.0 * k * (k + a + b) * (s - 2.0)
        bk = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b)
        ck = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s
        p_cur, p_prev = (bk * p_cur - ck * p_prev) / ak, p_cur
    return p_cur
