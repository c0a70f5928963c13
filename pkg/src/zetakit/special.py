"""Gamma, upper incomplete gamma, and exact Bernoulli arithmetic.

Complex values are plain Python ``complex``; exact rationals are
``fractions.Fraction``.
"""

from __future__ import annotations

import cmath
import math
import threading
from functools import lru_cache
from fractions import Fraction
from math import comb
from typing import Iterable

from .errors import ConvergenceError, DomainError, PoleError

__all__ = [
    "RationalPolynomial",
    "bernoulli_number",
    "bernoulli_polynomial",
    "gamma",
    "loggamma",
    "rgamma",
    "upper_incomplete_gamma",
    "sinpi",
    "cospi",
]

_EPS = 2.220446049250313e-16
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


# ---------------------------------------------------------------------------
# Bernoulli numbers and polynomials

_bern_lock = threading.Lock()
_bern_cache: list[Fraction] = [Fraction(1)]


def bernoulli_number(n: int) -> Fraction:
    """Exact B_n with B_1 = -1/2 (generating function t/(e^t - 1))."""
    if n < 0:
        raise DomainError(f"bernoulli_number needs n >= 0, got {n}")
    if n < len(_bern_cache):
        return _bern_cache[n]
    with _bern_lock:
        cache = _bern_cache
        for k in range(len(cache), n + 1):
            if k > 1 and k % 2 == 1:
                cache.append(Fraction(0))
                continue
            acc = sum((comb(k + 1, j) * cache[j] for j in range(k)), Fraction(0))
            cache.append(-acc / (k + 1))
        return cache[n]


class RationalPolynomial:
    """Polynomial with exact rational coefficients; ``coefficients[i]`` multiplies X**i."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable[Fraction | int]):
        coeffs = [Fraction(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coefficients: tuple[Fraction, ...] = tuple(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalPolynomial):
            return self.coefficients == other.coefficients
        if isinstance(other, (int, Fraction)):
            return self.coefficients == RationalPolynomial([other]).coefficients
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coefficients)

    def __add__(self, other: RationalPolynomial) -> RationalPolynomial:
        a, b = self.coefficients, other.coefficients
        n = max(len(a), len(b))
        return RationalPolynomial(
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
        )

    def __neg__(self) -> RationalPolynomial:
        return RationalPolynomial(-c for c in self.coefficients)

    def __sub__(self, other: RationalPolynomial) -> RationalPolynomial:
        return self + (-other)

    def __mul__(self, other) -> RationalPolynomial:
        if isinstance(other, (int, Fraction)):
            return RationalPolynomial(c * other for c in self.coefficients)
        a, b = self.coefficients, other.coefficients
        if not a or not b:
            return RationalPolynomial([])
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def compose(self, inner: RationalPolynomial) -> RationalPolynomial:
        """Return self(inner(X))."""
        acc = RationalPolynomial([])
        for c in reversed(self.coefficients):
            acc = acc * inner + RationalPolynomial([c])
        return acc

    def __repr__(self) -> str:
        if not self.coefficients:
            return "RationalPolynomial(0)"
        terms = []
        for i, c in reversed(list(enumerate(self.coefficients))):
            if c == 0:
                continue
            mono = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
            terms.append(f"({c})" + (f"*{mono}" if mono else ""))
        return "RationalPolynomial(" + " + ".join(terms) + ")"


def bernoulli_polynomial(n: int) -> RationalPolynomial:
    """B_n(X) = sum_k C(n,k) B_k X^(n-k); B_n(0) = B_n."""
    if n < 0:
        raise DomainError(f"bernoulli_polynomial needs n >= 0, got {n}")
    coeffs = [Fraction(0)] * (n + 1)
    for k in range(n + 1):
        coeffs[n - k] = comb(n, k) * bernoulli_number(k)
    return RationalPolynomial(coeffs)


# ---------------------------------------------------------------------------
# Gamma

# Stirling coefficients B_2k / (2k(2k-1)), k = 1..10
_STIRLING = [float(bernoulli_number(2 * k) / (2 * k * (2 * k - 1))) for k in range(1, 11)]
_STIRLING_MIN_MODULUS = 12.0


def sinpi(z: complex) -> complex:
    """sin(pi z) with exact argument reduction in the real part."""
    z = complex(z)
    x, y = z.real, z.imag
    sx, cx = _sincospi_real(x)
    return complex(sx * math.cosh(math.pi * y), cx * math.sinh(math.pi * y))


def cospi(z: complex) -> complex:
    z = complex(z)
    x, y = z.real, z.imag
    sx, cx = _sincospi_real(x)
    return complex(cx * math.cosh(math.pi * y), -sx * math.sinh(math.pi * y))


def _sincospi_real(x: float) -> tuple[float, float]:
    r = x - 2.0 * round(x / 2.0)  # exact, r in [-1, 1]
    if r > 0.5:
        s, c = math.sin(math.pi * (1.0 - r)), -math.cos(math.pi * (1.0 - r))
    elif r < -0.5:
        s, c = -math.sin(math.pi * (1.0 + r)), -math.cos(math.pi * (1.0 + r))
    else:
        s, c = math.sin(math.pi * r), math.cos(math.pi * r)
    return s, c


def _is_nonpositive_integer(z: complex) -> bool:
    return z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real)


def loggamma(z: complex) -> complex:
    """Analytic log Gamma on Re z > 0 (the branch continuous from the real axis).

    Stirling series after upward shifting; the shift is undone by a sum of
    principal logarithms, which keeps the branch continuous.
    """
    z = complex(z)
    if z.real <= 0.0:
        raise DomainError("loggamma is provided for Re z > 0 only")
    shift = 0.0j
    w = z
    while abs(w) < _STIRLING_MIN_MODULUS:
        shift += cmath.log(w)
        w += 1.0
    inv = 1.0 / w
    inv2 = inv * inv
    series = 0.0j
    p = inv
    for c in _STIRLING:
        series += c * p
        p *= inv2
    return (w - 0.5) * cmath.log(w) - w + _HALF_LOG_2PI + series - shift


def gamma(s: complex) -> complex:
    """Gamma(s); PoleError at s = 0, -1, -2, ..."""
    s = complex(s)
    if _is_nonpositive_integer(s):
        raise PoleError(f"Gamma has a pole at s = {s.real:g}")
    if s.real < 0.5:
        return math.pi / (sinpi(s) * cmath.exp(loggamma(1.0 - s)))
    return cmath.exp(loggamma(s))


def rgamma(s: complex) -> complex:
    """1/Gamma(s), entire; exact zero at nonpositive integers."""
    s = complex(s)
    if _is_nonpositive_integer(s):
        return 0.0j
    if s.real < 0.5:
        return sinpi(s) * cmath.exp(loggamma(1.0 - s)) / math.pi
    return cmath.exp(-loggamma(s))


# ---------------------------------------------------------------------------
# Upper incomplete gamma

_MAX_SERIES = 2000
_MAX_CF = 20000
_FPMIN = 1e-300


def _lower_series(a: complex, x: float) -> complex:
    """gamma(a, x) = x^a e^-x sum_n x^n / (a (a+1) ... (a+n))."""
    term = 1.0 / a
    total = term
    ap = a
    for _ in range(_MAX_SERIES):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _EPS * 0.5:
            return total * cmath.exp(a * math.log(x) - x)
    raise ConvergenceError(f"incomplete gamma series failed for a={a}, x={x}")


def _upper_cf(a: complex, x: float) -> complex:
    """Gamma(a, x) by the Legendre continued fraction (modified Lentz)."""
    b = x + 1.0 - a
    c = 1.0 / _FPMIN
    d = 1.0 / b if b != 0 else 1.0 / _FPMIN
    h = d
    for i in range(1, _MAX_CF):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = b + an / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h * cmath.exp(a * math.log(x) - x)
    raise ConvergenceError(f"incomplete gamma continued fraction failed for a={a}, x={x}")


@lru_cache(maxsize=1)
def _zeta_at_integers() -> tuple[float, ...]:
    from .hurwitz import riemann_zeta

    return (0.0, 0.0) + tuple(riemann_zeta(k).value.real for k in range(2, 40))


def _log1p_over(u: complex) -> complex:
    """log(1 + u)/u, accurate near u = 0."""
    if abs(u) > 1e-4:
        return cmath.log(1.0 + u) / u
    return 1.0 - u / 2.0 + u * u / 3.0


def _upper_small_x(a: complex, x: float) -> complex:
    """Gamma(a, x) = Gamma(a) - sum_k (-1)^k x^(a+k) / (k! (a+k)) for x < 1 and Re a <= 1/4.

    Near a pole a = -n of Gamma the k = n term cancels it. With eps = a + n the
    pair is (-1)^n/n! * x^eps * (e^G - 1)/eps, where
    G = log Gamma(1+eps) - sum_{j<=n} log(1 - eps/j) - eps log x vanishes at eps = 0.
    """
    n = round(-a.real)
    eps = a + n
    paired = n >= 0 and abs(eps) < 0.25
    log_x = math.log(x)
    total = 0.0j
    term = 1.0 + 0.0j  # (-x)^k / k!
    for k in range(_MAX_SERIES):
        if not (paired and k == n):
            t = term / (a + k)
            total += t
            if k > n + 1 and abs(t) < _EPS * 0.5 * abs(total):
                break
        term *= -x / (k + 1)
    else:
        raise ConvergenceError(f"incomplete gamma small-x series failed for a={a}, x={x}")
    rest = -cmath.exp(a * log_x) * total
    if not paired:
        return gamma(a) + rest
    zeta_k = _zeta_at_integers()
    # log Gamma(1 + eps)/eps = -euler_gamma + sum_{k>=2} (-1)^k zeta(k) eps^(k-1)/k
    g_over = -0.5772156649015329 + 0.0j
    ek = 1.0 + 0.0j
    for k in range(2, 40):
        ek *= -eps
        g_over -= zeta_k[k] * ek / k
    g_over += sum(_log1p_over(-eps / j) / j for j in range(1, n + 1)) - log_x
    g = g_over * eps
    em1_over_g = 1.0 + g / 2.0 + g * g / 6.0 if abs(g) < 1e-5 else (cmath.exp(g) - 1.0) / g
    pair = (-1) ** n / math.factorial(n) * cmath.exp(eps * log_x) * g_over * em1_over_g
    return pair + rest


def upper_incomplete_gamma(s: complex, x: float, *, gamma_s: complex | None = None) -> complex:
    """Gamma(s, x) = int_x^inf t^(s-1) e^-t dt for x > 0 and any complex s.

    Series for x < |s| + 1 when Re s > 1/4, continued fraction otherwise. For
    Re s <= 1/4 the series route Gamma(s) - gamma(s, x) cancels badly (and
    breaks at the poles of Gamma), while the fraction stays accurate except
    for small x, where it converges slowly and a pole-aware series takes over.
    ``gamma_s`` lets callers sweeping many x at fixed s pass Gamma(s).
    """
    s = complex(s)
    x = float(x)
    if not x > 0.0:
        raise DomainError(f"upper_incomplete_gamma needs x > 0, got {x}")
    if s.real > 0.25 and x < abs(s) + 1.0:
        g = gamma(s) if gamma_s is None else gamma_s
        return g - _lower_series(s, x)
    if s.real <= 0.25 and x < 1.0:
        return _upper_small_x(s, x)
    return _upper_cf(s, x)
