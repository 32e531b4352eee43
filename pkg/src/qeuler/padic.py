"""Fixed-precision p-adic numbers with explicit valuation tracking.

A nonzero value is stored as p^v * u with the unit u known modulo p^K
(K relative digits); the dedicated zero state records only an absolute
precision A, meaning "congruent to 0 modulo p^A".  All reported precisions
are conservative lower bounds: cancellation and division can shrink them
but never silently fabricate digits.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import inf
from typing import Union

from .exactarith import DivisionByZero

DEFAULT_GUARD = 4


class PadicError(ArithmeticError):
    pass


class PrecisionExhausted(PadicError):
    """An operation left no known digits in the result."""


def is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def int_valuation(n: int, p: int):
    """(v, u) with n = p^v * u, p not dividing u; n must be nonzero."""
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def rational_valuation(r: Fraction, p: int) -> int:
    """v_p of a nonzero rational."""
    r = Fraction(r)
    if r == 0:
        raise ValueError("valuation of zero")
    vn = int_valuation(r.numerator, p)[0] if r.numerator % p == 0 else 0
    vd = int_valuation(r.denominator, p)[0] if r.denominator % p == 0 else 0
    return vn - vd


@dataclass(frozen=True)
class PadicApprox:
    """A p-adic number known to finite precision.

    Nonzero: value = p^valuation * unit, with unit in [1, p^precision)
    coprime to p; the value is known modulo p^(valuation + precision).
    Zero: unit is None and ``precision`` is the absolute exponent A with
    |value|_p <= p^(-A).
    """

    p: int
    valuation: int
    unit: Union[int, None]
    precision: int

    def __post_init__(self):
        if not is_odd_prime(self.p):
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if self.unit is None:
            if self.precision < 0:
                raise ValueError("zero element needs absolute precision >= 0")
            object.__setattr__(self, "valuation", 0)
        else:
            if self.precision < 1:
                raise ValueError("nonzero element needs >= 1 known digit")
            if not (1 <= self.unit < self.p ** self.precision):
                raise ValueError("unit out of range for stated precision")
            if self.unit % self.p == 0:
                raise ValueError("unit must be coprime to p")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, p: int, abs_precision: int) -> "PadicApprox":
        return cls(p, 0, None, max(abs_precision, 0))

    @classmethod
    def from_residue(cls, value: int, p: int, abs_exponent: int) -> "PadicApprox":
        """Classify an integer known modulo p^abs_exponent."""
        m = p ** abs_exponent
        value %= m
        if value == 0:
            return cls.zero(p, abs_exponent)
        v, u = int_valuation(value, p)
        k = abs_exponent - v
        return cls(p, v, u % p ** k, k)

    @classmethod
    def from_rational(cls, r, p: int, precision: int) -> "PadicApprox":
        """Embed an exact rational with `precision` relative digits."""
        r = Fraction(r)
        if precision < 1:
            raise ValueError("precision must be >= 1")
        if r == 0:
            return cls.zero(p, precision)
        vn, un = (int_valuation(r.numerator, p)
                  if r.numerator % p == 0 else (0, r.numerator))
        vd, ud = (int_valuation(r.denominator, p)
                  if r.denominator % p == 0 else (0, r.denominator))
        m = p ** precision
        unit = un * pow(ud, -1, m) % m
        return cls(p, vn - vd, unit, precision)

    @classmethod
    def from_int(cls, n: int, p: int, precision: int) -> "PadicApprox":
        return cls.from_rational(Fraction(n), p, precision)

    # -- basic queries -----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.unit is None

    @property
    def abs_precision(self) -> int:
        """Exponent A such that the value is known modulo p^A."""
        if self.unit is None:
            return self.precision
        return self.valuation + self.precision

    def residue(self) -> int:
        """The known value modulo p^abs_precision, for valuation >= 0."""
        if self.unit is None:
            return 0
        if self.valuation < 0:
            raise ValueError("no integer residue at negative valuation")
        return self.p ** self.valuation * self.unit

    def norm_exponent(self):
        """v_p of the value; +inf for the zero state (capped knowledge)."""
        return inf if self.unit is None else self.valuation

    def shift_by_power(self, e: int) -> "PadicApprox":
        """Exact multiplication by p^e."""
        if self.unit is None:
            if self.precision + e < 0:
                raise PrecisionExhausted("shift leaves no known digits")
            return PadicApprox.zero(self.p, self.precision + e)
        return PadicApprox(self.p, self.valuation + e, self.unit, self.precision)

    def truncate_abs(self, abs_exponent: int) -> "PadicApprox":
        """Forget digits beyond p^abs_exponent (never adds digits)."""
        if abs_exponent >= self.abs_precision:
            return self
        if self.unit is None or self.valuation >= abs_exponent:
            if abs_exponent < 0:
                raise PrecisionExhausted("truncation leaves no known digits")
            return PadicApprox.zero(self.p, abs_exponent)
        k = abs_exponent - self.valuation
        return PadicApprox(self.p, self.valuation,
                           self.unit % self.p ** k, k)

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "PadicApprox"):
        if not isinstance(other, PadicApprox):
            raise TypeError("expected a PadicApprox")
        if self.p != other.p:
            raise ValueError("mixed primes")

    def __neg__(self) -> "PadicApprox":
        if self.unit is None:
            return self
        m = self.p ** self.precision
        return PadicApprox(self.p, self.valuation, (-self.unit) % m, self.precision)

    def __add__(self, other: "PadicApprox") -> "PadicApprox":
        self._check(other)
        m = min(self.abs_precision, other.abs_precision)
        # align negative valuations by working with the values times p^-shift
        shift = min([0] + [x.valuation for x in (self, other)
                           if x.unit is not None])
        if m - shift <= 0:
            raise PrecisionExhausted("no shared digits in addition")
        mod = self.p ** (m - shift)
        total = 0
        for x in (self, other):
            if x.unit is not None:
                total += x.unit * self.p ** (x.valuation - shift)
        total %= mod
        return PadicApprox.from_residue(total, self.p, m - shift).shift_by_power(shift)

    def __sub__(self, other: "PadicApprox") -> "PadicApprox":
        return self + (-other)

    def __mul__(self, other: "PadicApprox") -> "PadicApprox":
        self._check(other)
        if self.unit is None or other.unit is None:
            if self.unit is None and other.unit is None:
                a = self.precision + other.precision
            elif self.unit is None:
                a = self.precision + other.valuation
            else:
                a = other.precision + self.valuation
            return PadicApprox.zero(self.p, a)
        k = min(self.precision, other.precision)
        u = self.unit * other.unit % self.p ** k
        return PadicApprox(self.p, self.valuation + other.valuation, u, k)

    def __truediv__(self, other: "PadicApprox") -> "PadicApprox":
        self._check(other)
        if other.unit is None:
            raise DivisionByZero("division by a value indistinguishable from zero")
        if self.unit is None:
            a = self.precision - other.valuation
            if a <= 0:
                raise PrecisionExhausted("division leaves no known digits")
            return PadicApprox.zero(self.p, a)
        k = min(self.precision, other.precision)
        u = self.unit * pow(other.unit, -1, self.p ** k) % self.p ** k
        return PadicApprox(self.p, self.valuation - other.valuation, u, k)

    def pow_int(self, e: int) -> "PadicApprox":
        """Nonnegative integer power; e = 0 gives 1 at this precision."""
        if e < 0:
            raise ValueError("exponent must be >= 0")
        if e == 0:
            k = self.precision if self.unit is not None else max(self.precision, 1)
            return PadicApprox(self.p, 0, 1, max(k, 1))
        if self.unit is None:
            return PadicApprox.zero(self.p, self.precision * e)
        k = self.precision
        u = pow(self.unit, e, self.p ** k)
        return PadicApprox(self.p, self.valuation * e, u, k)

    def __str__(self) -> str:
        if self.unit is None:
            return f"O({self.p}^{self.precision})"
        tail = f"O({self.p}^{self.valuation + self.precision})"
        if self.valuation == 0:
            return f"{self.unit} + {tail}"
        return f"{self.unit}*{self.p}^{self.valuation} + {tail}"

    def __repr__(self) -> str:
        return f"PadicApprox('{self}')"

    # -- serialization -----------------------------------------------------

    def as_dict(self) -> dict:
        if self.unit is None:
            return {"p": self.p, "zero": True, "abs_precision": self.precision}
        return {"p": self.p, "valuation": self.valuation,
                "unit": self.unit, "precision": self.precision}

    @classmethod
    def from_dict(cls, d: dict) -> "PadicApprox":
        if d.get("zero"):
            return cls.zero(d["p"], d["abs_precision"])
        return cls(d["p"], d["valuation"], d["unit"], d["precision"])


def padic_from_rational(r, p: int, precision: int) -> PadicApprox:
    """Embed an exact rational into Q_p with `precision` relative digits."""
    return PadicApprox.from_rational(r, p, precision)


def padic_arith(a: PadicApprox, b: PadicApprox, op: str) -> PadicApprox:
    """Interval-style p-adic arithmetic dispatch: op in {add, sub, mul, div}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def padic_pow(a: PadicApprox, e: int) -> PadicApprox:
    return a.pow_int(e)


def padic_distance(a: PadicApprox, b: PadicApprox):
    """v_p(a - b), or +inf when the two are indistinguishable at the
    available precision."""
    d = a - b
    return inf if d.is_zero else d.valuation


@dataclass(frozen=True)
class PrecisionBudget:
    """Target digits plus guard digits, with the level-dependent surcharge
    needed when a Riemann-sum normalizer carries positive valuation."""

    target: int
    guard: int = DEFAULT_GUARD
    level_surcharge: bool = True

    def __post_init__(self):
        if self.target < 1:
            raise ValueError("target precision must be >= 1")
        if self.guard < 2:
            raise ValueError("guard must be >= 2")

    def working_exponent(self, level: int, bosonic: bool) -> int:
        extra = level if (bosonic and self.level_surcharge) else 0
        return self.target + self.guard + extra
