"""Twisted power sums  T(lam, a0, w) = sum_{m>=0} e^{2 pi i lam m} (m + a0)^{-w}  for lam not in Z.

A head of N terms is summed directly; the tail sum_m z^m (m + a)^{-w}, a = N + a0,
is replaced by the expansion sum_n g_n f^(n)(0) with f(x) = (x + a)^{-w} and
g_n the Taylor coefficients of 1/(1 - z e^t) (Boole summation). The expansion
is asymptotic in a; its terms shrink like (|w + n| / (rho a))^n where
rho = 2 pi dist(lam, Z) is the distance from t = 0 to the nearest pole of
1/(1 - z e^t). The result is entire in w.

For lam close to an integer the head would be enormous, and the sum is
instead expanded around z = 1:
    T = z^{-a0} [Gamma(1 - w) (-log z)^{w-1} + sum_k zeta(w - k, a0) (log z)^k / k!]
with log z = 2 pi i lam, lam the signed twist.
"""

from __future__ import annotations

import cmath
import math
from functools import lru_cache

import numpy as np

from .errors import DomainError

_EPS = 2.220446049250313e-16
_TARGET = 1e-17
_LADDER = (16, 24, 32, 44, 60)
_MAX_HEAD = 2_000_000
_NEAR_TWIST = 0.1
_LD_RATIO = float(np.finfo(np.longdouble).eps) / _EPS
_TWO_PI_LD = 2 * np.longdouble("3.14159265358979323846264338327950288")
_NEAR_INTEGER_W = 0.05


def frac(x: float) -> float:
    """x mod 1 in [0, 1)."""
    r = x - math.floor(x)
    return 0.0 if r >= 1.0 else r


@lru_cache(maxsize=256)
def boole_coefficients(lam: float, count: int) -> tuple[complex, ...]:
    """Taylor coefficients g_0..g_{count-1} of 1/(1 - z e^t), z = e^{2 pi i lam}."""
    z = cmath.exp(2j * math.pi * lam)
    # 1 - z written without cancellation for lam near an integer
    d0 = -2j * math.sin(math.pi * lam) * cmath.exp(1j * math.pi * lam)
    d = [d0] + [-z / math.factorial(k) for k in range(1, count)]
    g = [1.0 / d0]
    for n in range(1, count):
        acc = 0.0j
        for k in range(1, n + 1):
            acc += d[k] * g[n - k]
        g.append(-acc / d0)
    return tuple(g)


def _plan(lam: float, a0: float, w: complex) -> tuple[int, int, float]:
    dist = min(lam, 1.0 - lam)
    rho = 2.0 * math.pi * dist
    sigma = w.real
    log_scale = max(0.0, -sigma * math.log(a0))
    log_target = math.log(_TARGET) + log_scale
    best = None
    for k in _LADDER:
        # |g_k| ~ rho^{-k-1}; |poch(w, k)| <= prod |w + j|; worked in logs
        # because both factors overflow when lam is close to an integer
        terms = [abs(w + j) for j in range(k)]
        if any(t == 0.0 for t in terms):
            a_need = 2.0 * (abs(w) + k) / rho
        else:
            expo = sigma + k
            if expo <= 1.0:
                continue
            log_c = sum(math.log(t) for t in terms) - (k + 1) * math.log(rho)
            a_need = max(2.0 * (abs(w) + k) / rho, math.exp(min(700.0, (log_c - log_target) / expo)))
        if a_need - a0 > _MAX_HEAD:
            continue
        n = max(0, int(math.ceil(a_need - a0)))
        if best is None or n + k < best[0] + best[1]:
            best = (n, k, rho)
    if best is None:
        raise DomainError(f"twisted sum out of range: lam={lam}, w={w}")
    return best


def _log1p_ratio(u: complex) -> complex:
    """log(1 + u)/u, accurate near u = 0."""
    if abs(u) > 1e-3:
        return cmath.log(1.0 + u) / u
    return 1.0 - u / 2.0 + u * u / 3.0 - u**3 / 4.0


def _polar_pair(eps: complex, n: int, log_z: complex) -> complex:
    """Gamma(1-w)(-log z)^{w-1} + (log z)^{n-1}/((n-1)! eps), w = n + eps, without cancellation.

    The pole of Gamma(1 - w) at w = n cancels that of the Hurwitz term with
    index n - 1. Writing Gamma(1-w)(-log z)^eps ... as e^{G(eps)} with G(0) = 0
    leaves the pair equal to -(log z)^{n-1}/(n-1)! * (e^G - 1)/eps.
    """
    from .special import gamma

    log_neg = cmath.log(-log_z)
    if abs(eps) > 0.05:
        return gamma(1.0 - n - eps) * cmath.exp((n - 1 + eps) * log_neg) + log_z ** (n - 1) / (math.factorial(n - 1) * eps)
    # log Gamma(1 - eps)/eps = euler_gamma + sum_{k>=2} zeta(k) eps^{k-1}/k
    zeta_k = _zeta_integers()
    lg = 0.5772156649015329 + 0.0j
    ek = 1.0 + 0.0j
    for k in range(2, 30):
        ek *= eps
        lg += zeta_k[k] * ek / k
    g_over = lg + log_neg - sum(_log1p_ratio(eps / j) / j for j in range(1, n))
    g = g_over * eps
    em1_over_g = 1.0 + g / 2.0 + g * g / 6.0 if abs(g) < 1e-5 else (cmath.exp(g) - 1.0) / g
    return -(log_z ** (n - 1)) / math.factorial(n - 1) * g_over * em1_over_g


@lru_cache(maxsize=1)
def _zeta_integers() -> tuple[float, ...]:
    from .hurwitz import riemann_zeta

    return (0.0, 0.0) + tuple(riemann_zeta(k).value.real for k in range(2, 30))


def _near_integer_twist(signed: float, a0: float, w: complex) -> tuple[complex, float]:
    from .hurwitz import hurwitz_regular, hurwitz_zeta
    from .special import gamma

    log_z = 2j * math.pi * signed
    n = round(w.real)
    pole = n - 1 if n >= 1 and abs(w - n) < _NEAR_INTEGER_W else None
    if pole is None:
        value = gamma(1.0 - w) * cmath.exp((w - 1.0) * cmath.log(-log_z))
    else:
        value = _polar_pair(w - n, n, log_z)
    absum = abs(value) * (1.0 + abs(w) * abs(cmath.log(-log_z)))
    err = 0.0
    power = 1.0 + 0.0j
    prev = False
    for k in range(80):
        r = hurwitz_regular(w - k, a0) if k == pole else hurwitz_zeta(w - k, a0)
        t = r.value * power
        value += t
        absum += abs(t)
        err += r.err_estimate * abs(power)
        # two small terms in a row: zeta(-2m, 1) = 0 would stop a single test early
        small = abs(t) < _TARGET * abs(value)
        if k > 2 and (pole is None or k > pole) and small and prev:
            break
        prev = small
        power *= log_z / (k + 1)
    else:
        raise DomainError(f"near-integer twist expansion did not converge: lam={signed}, w={w}")
    # |z^{-a0}| = 1
    shift = cmath.exp(-a0 * log_z)
    return shift * value, 2.0 * abs(t) + err + 16.0 * _EPS * (1.0 + abs(w)) * (absum + abs(value))


def twisted_sum(lam: float, a0: float, w: complex) -> tuple[complex, float]:
    """Return (value, err_estimate) of sum_{m>=0} e^{2 pi i lam m} (m + a0)^{-w}."""
    lam = frac(lam)
    if lam == 0.0:
        raise DomainError("twisted_sum needs a non-integral twist")
    if not a0 > 0:
        raise DomainError(f"shift must be positive, got {a0}")
    w = complex(w)
    # the signed twist nearest zero keeps lam * m small, so its rounding
    # does not feed into the phases
    signed = lam - 1.0 if lam > 0.5 else lam
    # the expansion's terms shrink roughly like (|lam| |w|)^k
    if abs(signed) * (1.0 + abs(w)) < _NEAR_TWIST:
        return _near_integer_twist(signed, a0, w)
    n, k, _ = _plan(lam, a0, w)
    wabs = abs(w)
    m = np.arange(n, dtype=np.longdouble)
    log_ld = np.log(m + np.longdouble(a0))
    log_x = log_ld.astype(float)
    # the phase is reduced in extended precision where available, so a large
    # |Im w| does not amplify the rounding of log x
    phase = np.remainder(_TWO_PI_LD * (np.longdouble(signed) * m) - np.longdouble(w.imag) * log_ld, _TWO_PI_LD)
    terms = np.exp(-w.real * log_x) * np.exp(1j * phase.astype(float))
    # numpy sums pairwise, so rounding grows like log(n) rather than n
    head = complex(terms.sum())
    # each power carries about |Re w log x| ulps plus the phase residue; the sum adds log2(n) more
    weights = 3.0 + math.log2(max(n, 1)) + abs(w.real) * np.abs(log_x) + (abs(w.imag) * np.abs(log_x) + 2.0 * math.pi * n) * _LD_RATIO
    absum = float(np.sum(np.abs(terms) * weights))
    zn = cmath.exp(2j * math.pi * (signed * n))
    a = n + a0
    log_a = math.log(a)
    g = boole_coefficients(lam, k + 2)
    deriv = cmath.exp(-w * log_a)  # f(0) = a^{-w}
    absum += abs(deriv) * (1.0 + wabs * abs(log_a))
    tail = 0.0j
    for j in range(k + 1):
        t = g[j] * deriv
        tail += t
        absum += abs(t)
        deriv *= -(w + j) / a
    omitted = abs(g[k + 1] * deriv)
    value = head + zn * tail
    return value, 2.0 * omitted + 4.0 * _EPS * (absum + abs(value))
