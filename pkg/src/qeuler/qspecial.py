"""q-bracket values, the weight-0 q-Euler numbers and polynomials, exact
beta values, and the classical Euler-number recurrence used as an
independent cross-check of the q -> 1 limit.

The number table is driven by the umbral recurrence

    (1 + q) * E[n] + q * sum_{l<n} C(n, l) * E[l] = 0,      E[0] = 1,

and the polynomial table by the binomial convolution

    E_n(x) = sum_{l<=n} C(n, l) * x^l * E[n - l].

Both tables are memoized; fills are pure and idempotent, so concurrent
readers under the GIL are safe.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import comb, factorial

from .exactarith import (
    RF_ONE,
    RF_ONE_PLUS_Q,
    RF_Q,
    RF_ZERO,
    PolyQ,
    RatFuncQ,
    XPolyQ,
)


class DomainError(ValueError):
    """Argument outside the integer domain an operation is defined on."""


class InternalInconsistency(RuntimeError):
    """Two routes that must agree produced different values (a code bug)."""


def binom(n: int, r: int) -> int:
    """Binomial coefficient with C(n, r) = 0 for r < 0 or r > n.

    The zero convention is load-bearing: identity summations rely on it to
    make printed bounds and full-range bounds interchangeable.
    """
    if r < 0 or r > n or n < 0:
        return 0
    return comb(n, r)


def q_bracket(n: int, reciprocal: bool = False) -> RatFuncQ:
    """The q-deformation (1 - q^n) / (1 - q) of the integer n.

    For n >= 0 this is the polynomial 1 + q + ... + q^(n-1); negative n
    gives -[(-n)]_q / q^(-n).  With ``reciprocal=True`` the base is 1/q,
    kept inside the same field: e.g. the reciprocal bracket of 2 is
    (1 + q)/q.
    """
    if reciprocal:
        if n == 0:
            return RF_ZERO
        if n > 0:
            return q_bracket(n) / RF_Q ** (n - 1)
        return -q_bracket(-n, reciprocal=True) * RF_Q ** (-n)
    if n == 0:
        return RF_ZERO
    if n > 0:
        return RatFuncQ(PolyQ([1] * n))
    return -q_bracket(-n) / RF_Q ** (-n)


TWO_Q = RF_ONE_PLUS_Q                     # bracket of 2
TWO_Q_RECIP = RatFuncQ(PolyQ((1, 1)), PolyQ((0, 1)))   # (1 + q)/q

_lock = threading.Lock()
_numbers: list[RatFuncQ] = [RF_ONE]
_polys: list[XPolyQ] = [XPolyQ.one()]


def euler_number(n: int) -> RatFuncQ:
    """The nth weight-0 q-Euler number as a reduced rational function.

    E[0] = 1, E[1] = -q/(1+q), E[2] = q(q-1)/(1+q)^2, ...; the denominator
    of E[n] always divides (1+q)^n.
    """
    if n < 0:
        raise DomainError("index must be >= 0")
    if n < len(_numbers):
        return _numbers[n]
    with _lock:
        while len(_numbers) <= n:
            m = len(_numbers)
            s = RF_ZERO
            for l in range(m):
                s = s + _numbers[l] * Fraction(comb(m, l))
            _numbers.append(s * RatFuncQ(PolyQ((0, -1)), PolyQ((1, 1))))
    return _numbers[n]


def euler_poly(n: int) -> XPolyQ:
    """The nth weight-0 q-Euler polynomial: binomial convolution of the
    number table against powers of x.  Monic of degree n in x; its constant
    term is euler_number(n)."""
    if n < 0:
        raise DomainError("index must be >= 0")
    if n < len(_polys):
        return _polys[n]
    euler_number(n)
    with _lock:
        while len(_polys) <= n:
            m = len(_polys)
            coeffs = [euler_number(m - l) * Fraction(comb(m, l)) for l in range(m + 1)]
            _polys.append(XPolyQ(coeffs))
    return _polys[n]


def euler_poly_integral01(n: int) -> RatFuncQ:
    """Integral of the nth q-Euler polynomial over [0, 1].

    Computed two independent ways, the termwise antiderivative and the
    closed form -(1+q)/q * E[n+1] / (n+1); raises InternalInconsistency if
    they disagree (they cannot, unless the implementation is broken).
    """
    termwise = euler_poly(n).integral01()
    closed = -TWO_Q_RECIP * euler_number(n + 1) * Fraction(1, n + 1)
    if termwise != closed:
        raise InternalInconsistency(
            f"unit-interval integral routes disagree at n={n}: "
            f"{termwise} vs {closed}"
        )
    return termwise


def beta_exact(a: int, b: int) -> Fraction:
    """Exact beta value at positive integers: (a-1)! (b-1)! / (a+b-1)!."""
    if a < 1 or b < 1:
        raise DomainError("beta arguments must be integers >= 1")
    return Fraction(factorial(a - 1) * factorial(b - 1), factorial(a + b - 1))


_classical: list[Fraction] = [Fraction(1)]


def classical_euler_number(n: int) -> Fraction:
    """Euler-polynomial-at-zero numbers from the classical recurrence
    sum_{l<=n} C(n, l) E_l + E_n = 0 (n >= 1), E_0 = 1.

    Deliberately independent of euler_number: this is the q -> 1 oracle.
    """
    if n < 0:
        raise DomainError("index must be >= 0")
    with _lock:
        while len(_classical) <= n:
            m = len(_classical)
            s = sum(comb(m, l) * _classical[l] for l in range(m))
            _classical.append(-s / 2)
    return _classical[n]
