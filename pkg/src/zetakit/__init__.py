"""zetakit: Hurwitz, Dirichlet, Lerch and Epstein zeta-functions and the Riemann critical line."""

from .characters import DirichletCharacter, enumerate_characters, gauss_sum, kronecker_character
from .critical_line import count_zeros_rvm, find_zeros, hardy_z, rs_theta, xi_completed
from .dirichlet import class_number_analytic, dirichlet_l, reduced_forms_count
from .epstein import Characteristics, GramMatrix, epstein_zeta, epstein_zeta_char
from .errors import (
    ArgTrackingError,
    ConvergenceError,
    DomainError,
    LimitError,
    NotPrimitiveError,
    PoleError,
    QuadratureError,
    RealityError,
    RoundingError,
    ZetaError,
)
from .hurwitz import EvalResult, ResidueClass, hurwitz_special_value, hurwitz_zeta, riemann_zeta
from .lerch import LerchParams, lerch_zeta
from .primes import PrimeSieve, euler_product_zeta, mertens_sum, sieve
from .special import bernoulli_number, bernoulli_polynomial

__version__ = "0.1.0"

__all__ = [
    "ArgTrackingError",
    "Characteristics",
    "ConvergenceError",
    "DirichletCharacter",
    "DomainError",
    "EvalResult",
    "GramMatrix",
    "LerchParams",
    "LimitError",
    "NotPrimitiveError",
    "PoleError",
    "PrimeSieve",
    "QuadratureError",
    "RealityError",
    "ResidueClass",
    "RoundingError",
    "ZetaError",
    "bernoulli_number",
    "bernoulli_polynomial",
    "class_number_analytic",
    "count_zeros_rvm",
    "dirichlet_l",
    "enumerate_characters",
    "epstein_zeta",
    "epstein_zeta_char",
    "euler_product_zeta",
    "find_zeros",
    "gauss_sum",
    "hardy_z",
    "hurwitz_special_value",
    "hurwitz_zeta",
    "kronecker_character",
    "lerch_zeta",
    "mertens_sum",
    "reduced_forms_count",
    "riemann_zeta",
    "rs_theta",
    "sieve",
    "xi_completed",
]
