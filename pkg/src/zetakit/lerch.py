"""Lerch zeta-function L(lam, alpha, s) = sum_{m>=0} e^{2 pi i lam m} (m + alpha)^{-s}.

Non-integral lam goes through the twisted-sum kernel (head sum plus a Boole
expansion of the tail), which is entire in s; for Re s < -1/2 the value is
taken from the Lerch functional equation, whose right side then lives at
Re > 3/2 where the kernel has no cancellation. Integral lam is the Hurwitz
zeta-function.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from ._twisted import frac, twisted_sum
from .errors import DomainError, PoleError, QuadratureError
from .hurwitz import EvalResult, hurwitz_zeta
from .special import gamma, loggamma

__all__ = [
    "LerchParams",
    "lerch_zeta",
    "lerch_fe_residual",
    "lerch_mellin_integral",
    "lipschitz_fe_residual",
    "LipschitzKroneckerCheck",
    "lipschitz_kronecker_check",
]

_REFLECT_BELOW = -0.5
_LOG_2PI = math.log(2.0 * math.pi)


@dataclass(frozen=True)
class LerchParams:
    lam: float
    alpha: float

    def __post_init__(self):
        if not (math.isfinite(self.lam) and 0.0 < self.alpha <= 1.0):
            raise DomainError(f"need finite lambda and alpha in (0, 1], got {self.lam}, {self.alpha}")

    @property
    def integral(self) -> bool:
        return self.lam == math.floor(self.lam)


def _lerch(lam: float, alpha: float, s: complex) -> tuple[complex, float]:
    lam = frac(lam)
    if lam == 0.0:
        if s == 1:
            raise PoleError("L(lam, alpha, s) has a pole at s = 1 for integral lam")
        r = hurwitz_zeta(s, alpha)
        return r.value, r.err_estimate
    if s.real >= _REFLECT_BELOW:
        return twisted_sum(lam, alpha, s)
    # L(lam, alpha, 1 - w) with w = 1 - s, Re w > 3/2
    w = 1.0 - s
    base = loggamma(w) - w * _LOG_2PI
    c1 = cmath.exp(base + 0.5j * math.pi * w - 2j * math.pi * frac(alpha * lam))
    c2 = cmath.exp(base - 0.5j * math.pi * w + 2j * math.pi * frac(alpha * (1.0 - lam)))
    v1, e1 = _lerch(-alpha, lam, w)
    v2, e2 = _lerch(alpha, 1.0 - lam, w)
    value = c1 * v1 + c2 * v2
    rounding = 8.0 * 2.2e-16 * (1.0 + abs(w)) * (abs(c1 * v1) + abs(c2 * v2))
    return value, abs(c1) * e1 + abs(c2) * e2 + rounding


def lerch_zeta(p: LerchParams, s: complex) -> EvalResult:
    """L(lam, alpha, s); entire in s unless lam is an integer (then a pole at s = 1)."""
    value, err = _lerch(p.lam, p.alpha, complex(s))
    return EvalResult(value, err)


def lerch_mellin_integral(p: LerchParams, s: complex) -> complex:
    """Gamma(s) L(lam, alpha, s) by quadrature of int_0^inf x^{s-1} e^{-alpha x}/(1 - e^{2 pi i lam - x}) dx.

    Valid for Re s > 0 and non-integral lam; slow, kept as an independent check.
    """
    s = complex(s)
    if p.integral or not s.real > 0.0:
        raise DomainError("the Mellin integral needs Re s > 0 and non-integral lambda")
    z = cmath.exp(2j * math.pi * frac(p.lam))

    def integrand(x: float) -> complex:
        return cmath.exp((s - 1.0) * math.log(x) - p.alpha * x) / (1.0 - z * math.exp(-x))

    def part(x: float, im: bool) -> float:
        v = integrand(x)
        return v.imag if im else v.real

    total = 0j
    for lo, hi in ((0.0, 1.0), (1.0, np.inf)):
        for im in (False, True):
            val, err, info, *msg = integrate.quad(part, lo, hi, args=(im,), limit=400, epsabs=1e-13, epsrel=1e-12, full_output=1)
            if msg and err > 1e-8:
                raise QuadratureError(f"Mellin quadrature failed: {msg[0]}")
            total += 1j * val if im else val
    return total


def lerch_fe_residual(p: LerchParams, s: complex) -> float:
    """|L(lam, alpha, 1-s) - (2 pi)^{-s} Gamma(s) [e^{pi i s/2 - 2 pi i alpha lam} L(-alpha, lam, s)
    + e^{-pi i s/2 + 2 pi i alpha (1 - lam)} L(alpha, 1 - lam, s)]| for 0 < lam < 1, 0 < Re s < 1."""
    s = complex(s)
    lam, alpha = p.lam, p.alpha
    if not (0.0 < lam < 1.0 and 0.0 < s.real < 1.0):
        raise DomainError("the Lerch functional equation is checked for lam in (0, 1) and Re s in (0, 1)")
    lhs, _ = _lerch(lam, alpha, 1.0 - s)
    v1, _ = _lerch(-alpha, lam, s)
    v2, _ = _lerch(alpha, 1.0 - lam, s)
    rhs = cmath.exp(-s * _LOG_2PI) * gamma(s) * (
        cmath.exp(0.5j * math.pi * s - 2j * math.pi * alpha * lam) * v1
        + cmath.exp(-0.5j * math.pi * s + 2j * math.pi * alpha * (1.0 - lam)) * v2
    )
    return abs(lhs - rhs)


def _bilateral(twist: float, shift: float, s: complex) -> complex:
    """sum_{n in Z} e^{2 pi i twist n} |n + shift|^{-s}, symmetric summation, twist and shift not integers."""
    j = math.floor(shift)
    b = shift - j
    upper, _ = _lerch(twist, b, s)
    lower, _ = _lerch(-twist, 1.0 - b, s)
    return cmath.exp(-2j * math.pi * frac(twist * j)) * (upper + cmath.exp(-2j * math.pi * twist) * lower)


def lipschitz_fe_residual(u: float, v: float, s: complex, *, gamma_placement: str = "derived") -> float:
    """Residual of the Lipschitz identity between the bilateral sums
    A(s) = sum_n e^{-2 pi i v (n+u)} ((n+u)^2 pi)^{-s/2} and
    B(s) = sum_n e^{2 pi i n u} ((n+v)^2 pi)^{-(1-s)/2}, for 0 < Re s < 1.

    ``gamma_placement="derived"`` checks Gamma(s/2) A = Gamma((1-s)/2) B, which is
    what the Mellin transform of the theta relation
    sum_n e^{-pi x (n+u)^2 - 2 pi i v (n+u)} = x^{-1/2} sum_n e^{-pi (n+v)^2 / x + 2 pi i n u}
    yields. ``"printed"`` swaps the two gamma factors; the two agree only at s = 1/2.
    """
    s = complex(s)
    if not 0.0 < s.real < 1.0:
        raise DomainError("the identity is checked on 0 < Re s < 1")
    if u == math.floor(u) or v == math.floor(v):
        raise DomainError("u and v must not be integers")
    if gamma_placement not in ("derived", "printed"):
        raise DomainError(f"unknown gamma placement {gamma_placement!r}")
    # sum_n e^{-2 pi i v (n+u)} |n+u|^{-s} = e^{-2 pi i v u} * bilateral(-v, u, s)
    a_sum = cmath.exp(-2j * math.pi * frac(v * u)) * _bilateral(-v, u, s) * cmath.exp(-0.5 * s * math.log(math.pi))
    b_sum = _bilateral(u, v, 1.0 - s) * cmath.exp(-0.5 * (1.0 - s) * math.log(math.pi))
    g_a, g_b = gamma(s / 2.0), gamma((1.0 - s) / 2.0)
    if gamma_placement == "printed":
        g_a, g_b = g_b, g_a
    return abs(g_a * a_sum - g_b * b_sum)


@dataclass(frozen=True)
class LipschitzKroneckerCheck:
    """Principal value of sum_m e^{2 pi i m lam}/(m - alpha) beside two closed forms."""

    lam: float
    alpha: float
    lhs: complex
    printed: complex
    standard: complex

    @property
    def candidates(self) -> dict[str, complex]:
        return {"printed": self.printed, "standard": self.standard}

    def matching(self, tol: float = 1e-6) -> list[str]:
        return [name for name, value in self.candidates.items() if abs(value - self.lhs) <= tol * max(1.0, abs(self.lhs))]

    def __iter__(self):
        return iter((self.lhs, [self.printed, self.standard]))


def lipschitz_kronecker_check(lam: float, alpha: float) -> LipschitzKroneckerCheck:
    """Evaluate the bilateral series through Lerch values at s = 1.

    With alpha = k + b, 0 < b < 1, the symmetric sum splits as
    e^{2 pi i lam k} [e^{2 pi i lam} L(lam, 1 - b, 1) - L(-lam, b, 1)].
    The printed candidate is 2 pi i e^{2 pi i alpha lam}/(1 - e^{pi i alpha lam}),
    the standard one 2 pi i e^{2 pi i alpha lam}/(1 - e^{2 pi i alpha}).
    """
    if not 0.0 < lam < 1.0:
        raise DomainError(f"lambda must lie in (0, 1), got {lam}")
    if alpha == math.floor(alpha):
        raise DomainError("alpha must not be an integer")
    k = math.floor(alpha)
    b = alpha - k
    up, _ = _lerch(lam, 1.0 - b, 1.0 + 0j)
    down, _ = _lerch(-lam, b, 1.0 + 0j)
    lhs = cmath.exp(2j * math.pi * frac(lam * k)) * (cmath.exp(2j * math.pi * lam) * up - down)
    numer = 2j * math.pi * cmath.exp(2j * math.pi * alpha * lam)
    printed = numer / (1.0 - cmath.exp(1j * math.pi * alpha * lam))
    standard = numer / (1.0 - cmath.exp(2j * math.pi * alpha))
    return LipschitzKroneckerCheck(lam, alpha, lhs, printed, standard)
