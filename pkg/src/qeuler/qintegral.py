"""Riemann-sum evaluation of the bosonic and fermionic p-adic q-integrals
for shifted-monomial integrands (x0 + xi)^n, with adaptive level control.

A level-N sum runs over xi < p^N with weight t^xi, where t is q (bosonic)
or -q (fermionic), and divides by the bracket of p^N in base t.  The
bosonic normalizer has valuation N whenever v_p(q - 1) >= 1, so bosonic
summation is carried at modulus p^(K + guard + N); the fermionic
normalizer is a unit.  Precision never comes from assumptions: the final
division is done in tracked PadicApprox arithmetic, so an under-budgeted
modulus shows up as reduced achieved precision, not as a wrong value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import inf
from typing import Optional, Tuple, Union

from .padic import (
    DEFAULT_GUARD,
    PadicApprox,
    PrecisionBudget,
    PrecisionExhausted,
    is_odd_prime,
    padic_distance,
    rational_valuation,
)

KIND_BOSONIC = "bosonic"
KIND_FERMIONIC = "fermionic"

DEFAULT_MAX_LEVEL = 12
DEFAULT_COST_CAP = 10 ** 6


class QIntegralError(ArithmeticError):
    pass


class CostCapExceeded(QIntegralError):
    """A requested level would exceed the configured term limit."""


class ConvergenceNotReached(QIntegralError):
    """The level cap was hit before two consecutive stable levels.

    The partial result, with its honest achieved precision, is attached
    as ``result``.
    """

    def __init__(self, result: "IntegralResult"):
        super().__init__(
            f"no stabilization within {result.levels_used} levels "
            f"(achieved precision {result.achieved_precision})"
        )
        self.result = result


@dataclass(frozen=True)
class IntegralRequest:
    """One shifted-monomial integrand (x0 + xi)^n against d(mu_q) or
    d(mu_-q), with q supplied as an exact rational so the symbolic and
    numeric paths share it bit for bit."""

    kind: str
    exponent: int
    shift: Fraction = Fraction(0)
    p: int = 3
    q: Fraction = Fraction(4)
    target: int = 4
    guard: int = DEFAULT_GUARD
    level_surcharge: bool = True
    max_level: int = DEFAULT_MAX_LEVEL
    cost_cap: int = DEFAULT_COST_CAP

    def __post_init__(self):
        if self.kind not in (KIND_BOSONIC, KIND_FERMIONIC):
            raise ValueError(f"unknown integral kind {self.kind!r}")
        if self.exponent < 0:
            raise ValueError("exponent must be >= 0")
        if not is_odd_prime(self.p):
            raise ValueError(f"p must be an odd prime, got {self.p}")
        object.__setattr__(self, "shift", Fraction(self.shift))
        object.__setattr__(self, "q", Fraction(self.q))
        if self.q != 1 and rational_valuation(self.q - 1, self.p) < 1:
            raise ValueError("q must satisfy v_p(q - 1) >= 1")
        if self.shift.denominator % self.p == 0:
            raise ValueError("shift must be a p-integral rational")
        if self.target < 1:
            raise ValueError("target precision must be >= 1")
        self.budget()  # validates guard

    def budget(self) -> PrecisionBudget:
        return PrecisionBudget(self.target, self.guard, self.level_surcharge)

    @property
    def bosonic(self) -> bool:
        return self.kind == KIND_BOSONIC


LevelTrace = Tuple[int, PadicApprox, Union[int, float, None]]


@dataclass(frozen=True)
class IntegralResult:
    value: PadicApprox
    achieved_precision: int
    levels_used: int
    converged: bool
    trace: Tuple[LevelTrace, ...]

    def as_dict(self) -> dict:
        return {
            "value": self.value.as_dict(),
            "achieved_precision": self.achieved_precision,
            "levels_used": self.levels_used,
            "converged": self.converged,
            "trace": [
                {
                    "level": lv,
                    "value": val.as_dict(),
                    "distance": ("inf" if d == inf else d),
                }
                for lv, val, d in self.trace
            ],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "IntegralResult":
        trace = tuple(
            (
                row["level"],
                PadicApprox.from_dict(row["value"]),
                (inf if row["distance"] == "inf" else row["distance"]),
            )
            for row in d["trace"]
        )
        return cls(
            value=PadicApprox.from_dict(d["value"]),
            achieved_precision=d["achieved_precision"],
            levels_used=d["levels_used"],
            converged=d["converged"],
            trace=trace,
        )


def _residue_of_rational(r: Fraction, p: int, modulus: int) -> int:
    num = r.numerator % modulus
    den = r.denominator
    if den == 1:
        return num
    return num * pow(den, -1, modulus) % modulus


def _normalizer(req: IntegralRequest, level: int, work: int) -> PadicApprox:
    """The bracket of p^level in base t = +/- q, as a tracked PadicApprox.

    Computed from (t^m - 1)/(t - 1) at a modulus padded by the numerator's
    expected valuation, so the quotient keeps `work` relative digits.
    """
    p = req.p
    t = req.q if req.bosonic else -req.q
    m = p ** level
    if t == 1:
        return PadicApprox(p, level, 1, work)
    if t == -1:
        return PadicApprox(p, 0, 1, work)
    v1 = rational_valuation(t - 1, p)
    pad = v1 + level if req.bosonic else 0
    w2 = work + pad
    big = p ** w2
    t_res = _residue_of_rational(t, p, big)
    u = (pow(t_res, m, big) - 1) % big
    numerator = PadicApprox.from_residue(u, p, w2)
    denominator = PadicApprox.from_rational(t - 1, p, w2)
    return numerator / denominator


def riemann_level(req: IntegralRequest, level: int, chunks: int = 1) -> PadicApprox:
    """The exact level-N Riemann sum, as a PadicApprox.

    The summation runs at the budget's working modulus for this level; the
    optional chunked mode splits the xi range and combines partial sums,
    bit-identically to the sequential loop.
    """
    if level < 1:
        raise ValueError("level must be >= 1")
    p = req.p
    terms = p ** level
    if terms > req.cost_cap:
        raise CostCapExceeded(
            f"level {level} needs {terms} terms, cap is {req.cost_cap}"
        )
    work = req.budget().working_exponent(level, req.bosonic)
    modulus = p ** work
    t = req.q if req.bosonic else -req.q
    t_res = _residue_of_rational(t, p, modulus)
    x0_res = _residue_of_rational(req.shift, p, modulus)
    n = req.exponent

    chunks = max(1, min(chunks, terms))
    bounds = [terms * i // chunks for i in range(chunks + 1)]
    total = 0
    for c in range(chunks):
        lo, hi = bounds[c], bounds[c + 1]
        acc = 0
        tp = pow(t_res, lo, modulus)
        for xi in range(lo, hi):
            acc = (acc + pow((x0_res + xi) % modulus, n, modulus) * tp) % modulus
            tp = tp * t_res % modulus
        total = (total + acc) % modulus

    summed = PadicApprox.from_residue(total, p, work)
    return summed / _normalizer(req, level, work)


def integrate(req: IntegralRequest, chunks: int = 1) -> IntegralResult:
    """Adaptive evaluation: levels 1, 2, ... until the distance between
    consecutive levels stays at or above the target for two successive
    steps.  Raises ConvergenceNotReached (carrying the partial result) if
    the level or cost cap is hit first."""
    trace = []
    prev: Optional[PadicApprox] = None
    value: Optional[PadicApprox] = None
    stable = 0
    level = 0
    capped = False
    for level in range(1, req.max_level + 1):
        if req.p ** level > req.cost_cap:
            level -= 1
            capped = True
            break
        try:
            value = riemann_level(req, level, chunks=chunks)
        except PrecisionExhausted:
            # an under-budgeted modulus ran out of digits at this depth
            level -= 1
            value = prev
            capped = True
            break
        dist = padic_distance(value, prev) if prev is not None else None
        trace.append((level, value, dist))
        if dist is not None and dist >= req.target:
            stable += 1
        elif dist is not None:
            stable = 0
        prev = value
        if stable >= 2:
            break
    if value is None:
        raise QIntegralError("no level could be evaluated under the cost cap")

    tail = [d for _, _, d in trace[-2:] if d is not None]
    achieved = min(
        [req.target, value.abs_precision] + [d for d in tail if d != inf]
    )
    achieved = max(int(achieved), 0)
    reported = value.truncate_abs(achieved) if achieved > 0 else value
    result = IntegralResult(
        value=reported,
        achieved_precision=achieved,
        levels_used=level,
        converged=stable >= 2,
        trace=tuple(trace),
    )
    if not result.converged or capped:
        raise ConvergenceNotReached(result)
    return result


def bernoulli_number_padic(n: int, p: int = 3, q: Optional[Fraction] = None,
                           target: int = 4, **kwargs) -> PadicApprox:
    """The nth weight-0 q-Bernoulli number: bosonic integral of xi^n.

    Defined only as a Riemann-sum limit; propagates ConvergenceNotReached.
    """
    if q is None:
        q = Fraction(1 + p)
    req = IntegralRequest(KIND_BOSONIC, n, Fraction(0), p, q, target, **kwargs)
    return integrate(req).value


def euler_number_padic(n: int, p: int = 3, q: Optional[Fraction] = None,
                       target: int = 4, **kwargs) -> PadicApprox:
    """The nth weight-0 q-Euler number, numerically: fermionic integral of
    xi^n.  Cross-checks the exact table when q is embedded."""
    if q is None:
        q = Fraction(1 + p)
    req = IntegralRequest(KIND_FERMIONIC, n, Fraction(0), p, q, target, **kwargs)
    return integrate(req).value
