"""Exact and p-adic computation for the weight-0 q-Euler and q-Bernoulli
families, with a mechanically verified identity catalog."""

from .exactarith import (
    DivisionByZero,
    PoleError,
    PolyQ,
    RatFuncQ,
    Rational,
    XPolyQ,
    poly_gcd,
    ratfunc_arith,
    ratfunc_eval,
)
from .identities import (
    IdentityId,
    NumericContext,
    VerificationResult,
    verify,
    verify_grid,
)
from .padic import (
    PadicApprox,
    PrecisionBudget,
    PrecisionExhausted,
    padic_arith,
    padic_distance,
    padic_from_rational,
    padic_pow,
)
from .qintegral import (
    ConvergenceNotReached,
    CostCapExceeded,
    IntegralRequest,
    IntegralResult,
    bernoulli_number_padic,
    euler_number_padic,
    integrate,
    riemann_level,
)
from .qspecial import (
    DomainError,
    InternalInconsistency,
    beta_exact,
    binom,
    classical_euler_number,
    euler_number,
    euler_poly,
    euler_poly_integral01,
    q_bracket,
)
from .report import Report, ResultCache

__version__ = "0.1.0"

__all__ = [
    "DivisionByZero", "PoleError", "PolyQ", "RatFuncQ", "Rational", "XPolyQ",
    "poly_gcd", "ratfunc_arith", "ratfunc_eval",
    "IdentityId", "NumericContext", "VerificationResult", "verify", "verify_grid",
    "PadicApprox", "PrecisionBudget", "PrecisionExhausted",
    "padic_arith", "padic_distance", "padic_from_rational", "padic_pow",
    "ConvergenceNotReached", "CostCapExceeded", "IntegralRequest",
    "IntegralResult", "bernoulli_number_padic", "euler_number_padic",
    "integrate", "riemann_level",
    "DomainError", "InternalInconsistency", "beta_exact", "binom",
    "classical_euler_number", "euler_number", "euler_poly",
    "euler_poly_integral01", "q_bracket",
    "Report", "ResultCache",
    "__version__",
]
