"""Hurwitz zeta-function, residue-class series, and exact special values.

The continuation uses Euler-Maclaurin summation. The kernel can return the
regular part zeta(s, alpha) - 1/(s-1), which stays finite at s = 1; sums of
residue-class series whose principal parts cancel (non-principal Dirichlet
L-functions) are assembled from it without a 0 * inf step.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._twisted import twisted_sum
from .errors import DomainError, PoleError
from .special import bernoulli_number, bernoulli_polynomial, gamma, loggamma

__all__ = [
    "EvalResult",
    "ResidueClass",
    "hurwitz_zeta",
    "hurwitz_regular",
    "residue_class_zeta",
    "hurwitz_special_value",
    "riemann_even_value",
    "riemann_zeta",
    "hurwitz_formula_residual",
]

_EPS = 2.220446049250313e-16
DEFAULT_TERMS = 12
_TERM_LADDER = (12, 16, 20, 26, 32, 39)
_TARGET = 1e-17
_MAX_N = 1_000_000
_REFLECT_BELOW = -0.5
_LOOSE = 1e-13
_LOG_2PI = math.log(2.0 * math.pi)
# relative precision of longdouble against double: ~5e-4 with x87 extended, 1 without
_LD_RATIO = float(np.finfo(np.longdouble).eps) / _EPS
_TWO_PI_LD = 2 * np.longdouble("3.14159265358979323846264338327950288")


@dataclass(frozen=True)
class EvalResult:
    value: complex
    err_estimate: float

    def __post_init__(self):
        if not (cmath.isfinite(self.value) and math.isfinite(self.err_estimate)):
            raise ArithmeticError(f"non-finite evaluation result {self.value!r}")
        if self.err_estimate < 0:
            raise ValueError("err_estimate must be nonnegative")

    def __complex__(self) -> complex:
        return self.value


@dataclass(frozen=True)
class ResidueClass:
    a: int
    m: int

    def __post_init__(self):
        if not (isinstance(self.a, int) and isinstance(self.m, int)):
            raise DomainError("residue class entries must be integers")
        if not 1 <= self.a <= self.m:
            raise DomainError(f"need 1 <= a <= m, got a={self.a}, m={self.m}")


# B_2j / (2j)! as floats, j = 1..40
_EM_COEFF = [0.0] + [
    float(bernoulli_number(2 * j) / math.factorial(2 * j)) for j in range(1, 41)
]


def _exprel(w: complex) -> complex:
    """(e^w - 1)/w, accurate near w = 0."""
    if abs(w) < 1e-5:
        return 1.0 + w / 2.0 + w * w / 6.0
    x, y = w.real, w.imag
    em1 = complex(math.expm1(x) * math.cos(y) - 2.0 * math.sin(0.5 * y) ** 2, math.exp(x) * math.sin(y))
    return em1 / w


def _poch_abs(s: complex, n: int) -> float:
    p = 1.0
    for k in range(n):
        p *= abs(s + k)
    return p


def _choose_n(s: complex, alpha: float, terms: int) -> int | None:
    """Smallest N making the first omitted correction term negligible."""
    sigma = s.real
    c = abs(_EM_COEFF[terms + 1]) * _poch_abs(s, 2 * terms + 1)
    if c == 0.0:
        return 0  # the correction series terminates: exact for s = 0, -1, -2, ...
    expo = sigma + 2 * terms + 1
    if expo <= 1.0:
        return None
    scale = max(1.0, alpha ** (-sigma))
    base = (c / (_TARGET * scale)) ** (1.0 / expo)
    return max(int(math.ceil(abs(s) / math.pi)), int(math.ceil(base - alpha)))


def _plan(s: complex, alpha: float, terms: int | None) -> tuple[int, int]:
    """Pick (N, M). With ``terms`` unset, M grows until N reaches its floor |s|/pi.

    A large N with Re s << 0 sums terms of size N^{-Re s} that cancel, so the
    smallest admissible N is preferred.
    """
    candidates = [terms] if terms is not None else _TERM_LADDER
    best = None
    for m in candidates:
        n = _choose_n(s, alpha, m)
        if n is None:
            continue
        if best is None or n < best[0]:
            best = (n, m)
        if n <= math.ceil(abs(s) / math.pi):
            break
    if best is None or best[0] > _MAX_N:
        raise DomainError(f"s = {s} is outside the range of the Euler-Maclaurin kernel")
    return best


def _powers(x: np.ndarray, s: complex) -> tuple[np.ndarray, np.ndarray]:
    """x^{-s} for a longdouble array x, with per-term rounding in ulps.

    The phase t log x is formed in extended precision where the platform has
    it, so large |Im s| does not turn the rounding of log x into phase error.
    """
    log_x = np.log(x)
    phase = np.remainder(-np.longdouble(s.imag) * log_x, _TWO_PI_LD)
    mag = np.exp(-s.real * log_x.astype(float))
    powers = mag * np.exp(1j * phase.astype(float))
    weights = 2.0 + abs(s.real) * np.abs(log_x.astype(float)) + abs(s.imag) * np.abs(log_x.astype(float)) * _LD_RATIO
    return powers, weights


def _em_kernel(s: complex, alpha: float, terms: int | None, regular: bool) -> tuple[complex, float]:
    """Euler-Maclaurin for zeta(s, alpha), alpha > 0.

    With ``regular`` the value returned is zeta(s, alpha) - 1/(s-1), finite at s = 1.
    Returns (value, err_estimate).
    """
    n, terms = _plan(s, alpha, terms)
    s_abs = abs(s)
    powers, weights = _powers(np.arange(n + 1, dtype=np.longdouble) + np.longdouble(alpha), s)
    # numpy sums pairwise, so rounding grows like log(n) rather than n
    head = complex(powers[:n].sum())
    absum = float(np.sum(np.abs(powers[:n]) * (weights[:n] + math.log2(max(n, 1)))))
    a = n + alpha
    log_a = math.log(a)
    pw = complex(powers[n])  # a^{-s}
    if regular:
        # (a^{1-s} - 1)/(s - 1) = -log(a) * exprel((1-s) log a)
        integral = -log_a * _exprel((1.0 - s) * log_a)
    else:
        if s == 1:
            raise PoleError("zeta(s, alpha) has a pole at s = 1")
        integral = pw * a / (s - 1.0)
    total = head + integral + 0.5 * pw
    absum += (abs(integral) + 0.5 * abs(pw)) * (float(weights[n]) + s_abs * abs(log_a) * _LD_RATIO)
    inv_a2 = 1.0 / (a * a)
    poch = s  # s (s+1) ... (s+2j-2)
    powj = pw / a
    for j in range(1, terms + 1):
        t = _EM_COEFF[j] * poch * powj
        total += t
        absum += abs(t)
        poch *= (s + 2 * j - 1) * (s + 2 * j)
        powj *= inv_a2
    tail = abs(_EM_COEFF[terms + 1] * poch * powj)
    return total, 2.0 * tail + 4.0 * _EPS * absum


def _reflected(s: complex, alpha: float) -> tuple[complex, float]:
    """zeta(s, alpha) for Re s < 0 and 0 < alpha <= 1 from periodic zeta values at w = 1 - s.

    zeta(s, alpha) = Gamma(w) (2 pi)^{-w} [e^{-i pi w/2} F(alpha, w) + e^{i pi w/2} F(-alpha, w)]
    with F(x, w) = sum_{n>=1} e^{2 pi i n x} n^{-w}. Summing the twisted series at
    Re w > 1 avoids the cancellation Euler-Maclaurin suffers for Re s << 0.
    """
    w = 1.0 - s
    base = loggamma(w) - w * _LOG_2PI
    z_up = base + 0.5j * math.pi * w
    z_down = base - 0.5j * math.pi * w
    up = cmath.exp(z_up)
    down = cmath.exp(z_down)
    # an exponent z known to ~|z| ulps makes e^z carry that relative error;
    # the twisted sums add about |w| ulps through their own powers
    rounding = 4.0 * _EPS * (4.0 + max(abs(z_up), abs(z_down)) + abs(w))
    if alpha == 1.0:
        z, zerr = _em_kernel(w, 1.0, None, regular=False)
        return (up + down) * z, (abs(up) + abs(down)) * (zerr + rounding * abs(z))
    plus, perr = twisted_sum(alpha, 1.0, w)
    minus, merr = twisted_sum(-alpha, 1.0, w)
    ph = cmath.exp(2j * math.pi * alpha)
    value = down * ph * plus + up * minus / ph
    err = abs(down) * perr + abs(up) * merr
    err += rounding * (abs(down * plus) + abs(up * minus))
    return value, err


def _kernel(s: complex, alpha: float, terms: int | None, regular: bool) -> tuple[complex, float]:
    terminating = s.imag == 0.0 and s.real <= 0.0 and s.real == math.floor(s.real)
    if terms is None and s.real < _REFLECT_BELOW and not terminating:
        try:
            value, err = _reflected(s, alpha)
        except DomainError:
            pass
        else:
            if regular:
                value -= 1.0 / (s - 1.0)
            if err <= _LOOSE * abs(value):
                return value, err
            # high up the strip the gamma factors round badly while the direct
            # sum cancels little, so the better of the two estimates wins
            try:
                em_value, em_err = _em_kernel(s, alpha, None, regular)
            except DomainError:
                return value, err
            return (em_value, em_err) if em_err < err else (value, err)
    return _em_kernel(s, alpha, terms, regular)


def _reduce_alpha(s: complex, alpha: float) -> tuple[float, complex, float]:
    """Map alpha > 1 into (0, 1]: zeta(s, alpha) = zeta(s, alpha0) - sum_{j<k} (alpha0 + j)^{-s}."""
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    if alpha <= 1.0:
        return alpha, 0.0j, 0.0
    k = int(math.ceil(alpha) - 1)
    alpha0 = alpha - k
    if alpha0 <= 0.0:
        alpha0 += 1.0
        k -= 1
    corr = 0.0j
    absum = 0.0
    for j in range(k):
        t = (alpha0 + j) ** (-s)
        corr -= t
        absum += abs(t)
    return alpha0, corr, 4.0 * _EPS * absum


def hurwitz_zeta(s: complex, alpha: float, *, terms: int | None = None) -> EvalResult:
    """zeta(s, alpha) = sum_{m >= 0} (m + alpha)^{-s}, continued to s != 1."""
    s = complex(s)
    if s == 1:
        raise PoleError("zeta(s, alpha) has a pole at s = 1")
    alpha0, corr, corr_err = _reduce_alpha(s, float(alpha))
    value, err = _kernel(s, alpha0, terms, regular=False)
    return EvalResult(value + corr, err + corr_err)


def hurwitz_regular(s: complex, alpha: float, *, terms: int | None = None) -> EvalResult:
    """zeta(s, alpha) - 1/(s - 1); entire in s. At s = 1 this is -digamma(alpha)."""
    s = complex(s)
    alpha0, corr, corr_err = _reduce_alpha(s, float(alpha))
    value, err = _kernel(s, alpha0, terms, regular=True)
    return EvalResult(value + corr, err + corr_err)


def riemann_zeta(s: complex) -> EvalResult:
    return hurwitz_zeta(s, 1.0)


def residue_class_zeta(s: complex, rc: ResidueClass) -> EvalResult:
    """f(s, a) = sum_{n = a mod m} n^{-s} = m^{-s} zeta(s, a/m)."""
    s = complex(s)
    if s == 1:
        raise PoleError("f(s, a) has a pole at s = 1 (residue 1/m)")
    scale = cmath.exp(-s * math.log(rc.m))
    r = hurwitz_zeta(s, rc.a / rc.m)
    return EvalResult(scale * r.value, abs(scale) * r.err_estimate)


def hurwitz_special_value(n: int, alpha: Fraction | int) -> Fraction:
    """zeta(-n, alpha) = -B_{n+1}(alpha)/(n+1), exact for rational alpha."""
    if n < 0:
        raise DomainError(f"n must be nonnegative, got {n}")
    alpha = Fraction(alpha)
    if not 0 < alpha <= 1:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha}")
    return -bernoulli_polynomial(n + 1)(alpha) / (n + 1)


def riemann_even_value(k: int) -> Fraction:
    """Rational c with zeta(2k) = c * pi^(2k)."""
    if k < 1:
        raise DomainError(f"k must be positive, got {k}")
    b = bernoulli_number(2 * k)
    return (-1) ** (k - 1) * Fraction(2 ** (2 * k)) * b / (2 * math.factorial(2 * k))


def _is_gamma_pole(s: complex) -> bool:
    return s.imag == 0.0 and s.real <= 0.0 and s.real == math.floor(s.real)


def hurwitz_formula_residual(s: complex, rc: ResidueClass) -> float:
    """|f(1-s, a) - (1/pi)(2pi/m)^{1-s} Gamma(s) sum_b cos(2pi ab/m - pi s/2) f(s, b)|."""
    s = complex(s)
    if s == 0 or s == 1 or _is_gamma_pole(s):
        raise PoleError(f"s = {s} is outside the checkable domain")
    m, a = rc.m, rc.a
    lhs = residue_class_zeta(1.0 - s, rc).value
    acc = 0.0j
    for b in range(1, m + 1):
        # 2ab/m reduced mod 2 keeps the cosine argument small
        phase = math.pi * (Fraction(2 * a * b, m) % 2)
        acc += cmath.cos(phase - math.pi * s / 2.0) * residue_class_zeta(s, ResidueClass(b, m)).value
    rhs = cmath.exp((1.0 - s) * math.log(2.0 * math.pi / m)) * gamma(s) * acc / math.pi
    return abs(lhs - rhs)
