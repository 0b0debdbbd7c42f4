"""Confluent hypergeometric (Kummer) function M(a, b, x) for real arguments.

Only the regime used by the radial wavefunctions is covered: ``b > 0`` and
``0 <= x <= 700``.  Inside it the defining power series converges for every
``a``.  When ``a`` is a non-positive integer the series terminates and the
polynomial branch is used instead.

For ``a < 0`` the leading terms alternate in sign and can be many orders of
magnitude larger than the sum, which costs plain double precision most of its
digits near the zeros of M.  Both branches therefore accumulate in
double-double arithmetic (a pair ``hi + lo`` carrying about 32 digits, built
from the error-free transformations of Dekker and Knuth) and round once at
the end.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "KummerArgs",
    "KummerDomainError",
    "KummerOverflowError",
    "KummerConvergenceError",
    "X_MAX",
    "kummer_1f1",
    "kummer_polynomial",
]

X_MAX = 700.0
INTEGER_TOL = 1e-9
SERIES_RTOL = 1e-16
SERIES_QUIET_TERMS = 3
SERIES_MAX_TERMS = 10_000


class KummerDomainError(ValueError):
    pass


class KummerOverflowError(OverflowError):
    pass


class KummerConvergenceError(ArithmeticError):
    pass


class KummerArgs:
    """Argument triple ``(a, b, x)`` of M(a, b, x), checked on construction."""

    __slots__ = ("a", "b", "x")

    def __init__(self, a: float, b: float, x: float):
        a, b, x = float(a), float(b), float(x)
        if not b > 0.0:
            raise KummerDomainError(f"b must be positive, got {b!r}")
        if not (x >= 0.0 and math.isfinite(x)):
            raise KummerDomainError(f"x must be finite and non-negative, got {x!r}")
        if x > X_MAX:
            raise KummerOverflowError(f"x={x!r} exceeds the overflow guard {X_MAX}")
        self.a, self.b, self.x = a, b, x

    def __repr__(self):
        return f"KummerArgs(a={self.a!r}, b={self.b!r}, x={self.x!r})"

    def __eq__(self, other):
        if not isinstance(other, KummerArgs):
            return NotImplemented
        return (self.a, self.b, self.x) == (other.a, other.b, other.x)


# --- double-double helpers; work elementwise on floats and numpy arrays ------

_SPLITTER = 134217729.0  # 2**27 + 1


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _quick_two_sum(a, b):
    s = a + b
    return s, b - (s - a)


def _split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def _two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _dd_add(x, y):
    s, e = _two_sum(x[0], y[0])
    t, f = _two_sum(x[1], y[1])
    s, e = _quick_two_sum(s, e + t)
    return _quick_two_sum(s, e + f)


def _dd_mul(x, y):
    p, e = _two_prod(x[0], y[0])
    return _quick_two_sum(p, e + (x[0] * y[1] + x[1] * y[0]))


def _dd_div(x, y):
    q1 = x[0] / y[0]
    r = _dd_add(x, _dd_mul((-q1, 0.0 * q1), y))
    q2 = r[0] / y[0]
    r = _dd_add(r, _dd_mul((-q2, 0.0 * q2), y))
    q3 = r[0] / y[0]
    return _dd_add(_quick_two_sum(q1, q2), (q3, 0.0 * q3))


def _ratio(top, x, b, j):
    """``(top + j) x / ((b + j) (j + 1))`` as a double-double."""
    num = _dd_mul(_two_sum(top, float(j)), (x, 0.0 * x))
    den = _dd_mul(_two_sum(b, float(j)), (float(j + 1), 0.0))
    return _dd_div(num, den)


def _as_terminating_degree(a: float) -> int | None:
    n = round(-a)
    if n >= 0 and abs(a + n) <= INTEGER_TOL:
        return int(n)
    return None


def kummer_1f1(args: KummerArgs | float, b: float | None = None, x: float | None = None) -> float:
    """Evaluate M(a, b, x).

    Accepts either a :class:`KummerArgs` or the three numbers positionally.

    Examples
    --------
    >>> kummer_1f1(1.0, 1.0, 1.0)  # doctest: +ELLIPSIS
    2.718281828459...
    >>> kummer_1f1(KummerArgs(-2, 1, 1))
    -0.5
    """
    if not isinstance(args, KummerArgs):
        args = KummerArgs(args, b, x)
    a, b, x = args.a, args.b, args.x

    n = _as_terminating_degree(a)
    if n is not None:
        return float(kummer_polynomial(n, b, x))
    if x == 0.0:
        return 1.0

    total = (1.0, 0.0)
    term = (1.0, 0.0)
    quiet = 0
    for j in range(SERIES_MAX_TERMS):
        term = _dd_mul(term, _ratio(a, x, b, j))
        total = _dd_add(total, term)
        if abs(term[0]) < SERIES_RTOL * abs(total[0]):
            quiet += 1
            if quiet >= SERIES_QUIET_TERMS:
                return float(total[0] + total[1])
        else:
            quiet = 0
    raise KummerConvergenceError(
        f"series for M({a}, {b}, {x}) did not converge in {SERIES_MAX_TERMS} terms"
    )


def kummer_polynomial(n: int, b: float, x):
    """Degree-``n`` polynomial M(-n, b, x) by nested (Horner) evaluation.

    ``x`` may be a scalar or a numpy array; the result has the same shape.
    """
    if int(n) != n or n < 0:
        raise KummerDomainError(f"n must be a non-negative integer, got {n!r}")
    n = int(n)
    b = float(b)
    if not b > 0.0:
        raise KummerDomainError(f"b must be positive, got {b!r}")

    scalar = np.ndim(x) == 0
    x = np.asarray(x, dtype=float)
    acc = (np.ones_like(x), np.zeros_like(x))
    one = (1.0, 0.0)
    # nested form 1 + c_1 x (1 + c_2 x (...)), c_{j+1}/c_j = (j - n) / ((b + j)(j + 1))
    for j in range(n - 1, -1, -1):
        acc = _dd_add(one, _dd_mul(acc, _ratio(float(-n), x, b, j)))
    out = acc[0] + acc[1]
    return float(out) if scalar else out
