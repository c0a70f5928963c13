"""The Riemann zeta-function on the critical line and related real-zero theorems.

theta(t), Hardy's Z(t), the completed Xi(t) with its theta-series integral,
sign-change zero location, Riemann-von Mangoldt counting by continuous
argument tracking, the cosine transform U(z) of an alternating Fourier kernel,
Polya's Xi*(t) and finite Hadamard-type products.
"""

from __future__ import annotations

import cmath
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import integrate

from .errors import ArgTrackingError, DomainError, QuadratureError, RealityError
from .hurwitz import hurwitz_regular, riemann_zeta
from .special import loggamma

__all__ = [
    "ZeroRecord",
    "FourierKernel",
    "LaguerrePolyaSpec",
    "rs_theta",
    "hardy_z",
    "xi_completed",
    "xi_integral",
    "xi_integral_residual",
    "find_zeros",
    "count_zeros_rvm",
    "landau_integrals",
    "hurwitz_cosine_transform",
    "argument_principle_count",
    "cosine_transform_census",
    "polya_xi_star",
    "laguerre_polya_eval",
    "GRID_STEP",
]

GRID_STEP = 0.05
_BISECT_TOL = 1e-9
_LOG_PI = math.log(math.pi)


@dataclass(frozen=True)
class ZeroRecord:
    ordinate: float
    bracket: tuple[float, float]
    refined: bool = True


@dataclass(frozen=True)
class FourierKernel:
    """Coefficients of f(t) = a_0/2 + sum_k a_k cos(k pi t), alternating in sign from a_0 > 0."""

    coefficients: tuple[float, ...]

    def __post_init__(self):
        a = tuple(float(x) for x in self.coefficients)
        object.__setattr__(self, "coefficients", a)
        if not a:
            raise DomainError("a kernel needs at least a_0")
        for k, x in enumerate(a):
            if not (x > 0 if k % 2 == 0 else x < 0):
                raise DomainError(f"coefficient a_{k} = {x} breaks the alternating sign pattern")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1


@dataclass(frozen=True)
class LaguerrePolyaSpec:
    """E(s) = s^d exp(a + b s + c s^2) prod_n (1 - s/s_n) exp(s/s_n)."""

    d: int = 0
    a: float = 0.0
    b: float = 0.0
    c: float = 0.0
    zeros: tuple[float, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "zeros", tuple(float(z) for z in self.zeros))
        if self.d < 0:
            raise DomainError("d must be nonnegative")
        if self.c > 0:
            raise DomainError("c must be nonpositive")
        if any(z == 0 or not math.isfinite(z) for z in self.zeros):
            raise DomainError("zeros must be finite and nonzero")


# ---------------------------------------------------------------------------
# theta, Z, Xi


def rs_theta(t: float) -> float:
    """theta(t) = Im log Gamma(1/4 + it/2) - (t/2) log pi on the branch with theta(0) = 0."""
    t = float(t)
    return loggamma(complex(0.25, 0.5 * t)).imag - 0.5 * t * _LOG_PI


def hardy_z(t: float) -> float:
    """Z(t) = e^{i theta(t)} zeta(1/2 + it), real for real t."""
    t = float(t)
    v = cmath.exp(1j * rs_theta(t)) * riemann_zeta(complex(0.5, t)).value
    if abs(v.imag) > 1e-8 * (1.0 + abs(v.real)):
        raise RealityError(f"Z({t}) has imaginary part {v.imag:.3e}")
    return v.real


def xi_completed(t: complex) -> complex:
    """Xi(t) = (1/2) s (s-1) pi^{-s/2} Gamma(s/2) zeta(s) at s = 1/2 + it.

    Written as pi^{-s/2} Gamma(1 + s/2) [(s-1) zeta_reg(s) + 1] with
    zeta_reg = zeta - 1/(s-1), which is finite at s = 0 and s = 1; the half
    plane Re s < 1/2 is reached through Xi(t) = Xi(-t).
    """
    t = complex(t)
    s = 0.5 + 1j * t
    if s.real < 0.5:
        s = 1.0 - s
    reg = hurwitz_regular(s, 1.0).value
    return cmath.exp(-0.5 * s * _LOG_PI + loggamma(1.0 + 0.5 * s)) * ((s - 1.0) * reg + 1.0)


def _psi(x: float, terms: int = 20) -> float:
    return math.fsum(math.exp(-math.pi * n * n * x) for n in range(1, terms + 1))


def xi_integral(t: float) -> float:
    """1/2 - (t^2 + 1/4) int_1^inf x^{-3/4} cos(t log(x)/2) psi(x) dx with psi(x) = sum_{n>=1} e^{-pi n^2 x}.

    With x = e^u the integrand is e^{u/4} psi(e^u) cos(t u/2), negligible past u = 5.
    """
    t = float(t)
    if abs(t) > 60:
        raise DomainError("the quadrature is supported for |t| <= 60")
    val, err, *info = integrate.quad(
        lambda u: math.exp(0.25 * u) * _psi(math.exp(u)),
        0.0,
        5.0,
        weight="cos",
        wvar=0.5 * t,
        epsabs=1e-15,
        epsrel=1e-13,
        limit=200,
        full_output=1,
    )
    if err > 1e-10:
        raise QuadratureError(f"Xi integral did not converge (error {err:.2e})")
    return 0.5 - (t * t + 0.25) * val


def xi_integral_residual(t: float) -> float:
    return abs(xi_completed(t).real - xi_integral(t))


# ---------------------------------------------------------------------------
# zeros


def _grid(t_lo: float, t_hi: float, step: float) -> list[float]:
    """Endpoints plus the multiples of ``step`` strictly between them.

    Anchoring interior points to a global lattice makes scans of adjacent
    intervals see the same brackets.
    """
    k0 = math.floor(t_lo / step) + 1
    k1 = math.ceil(t_hi / step) - 1
    return [t_lo] + [k * step for k in range(k0, k1 + 1) if t_lo < k * step < t_hi] + [t_hi]


def _bisect(f: Callable[[float], float], lo: float, hi: float, flo: float) -> tuple[float, float]:
    while hi - lo > _BISECT_TOL:
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid, mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return lo, hi


def _scan(t_lo: float, t_hi: float, step: float) -> list[ZeroRecord]:
    pts = _grid(t_lo, t_hi, step)
    vals = [hardy_z(t) for t in pts]
    out = []
    for (a, fa), (b, fb) in zip(zip(pts, vals), zip(pts[1:], vals[1:])):
        if fa == 0.0 and a > t_lo:
            out.append(ZeroRecord(a, (a, a)))
        elif fa * fb < 0:
            lo, hi = _bisect(hardy_z, a, b, fa)
            out.append(ZeroRecord(0.5 * (lo + hi), (lo, hi)))
    return out


def find_zeros(t_lo: float, t_hi: float, *, step: float = GRID_STEP, workers: int | None = None) -> list[ZeroRecord]:
    """Sign changes of Z on a grid of spacing ``step``, each refined by bisection to 1e-9.

    Close pairs of zeros inside one grid cell are missed; ``count_zeros_rvm``
    is the independent check. ``workers`` > 1 scans chunks in separate processes.
    """
    t_lo, t_hi = float(t_lo), float(t_hi)
    if not 0.0 <= t_lo < t_hi:
        raise DomainError(f"need 0 <= t_lo < t_hi, got {t_lo}, {t_hi}")
    if not 0 < step <= GRID_STEP:
        raise DomainError(f"grid step must lie in (0, {GRID_STEP}]")
    if not workers or workers <= 1:
        return _scan(t_lo, t_hi, step)
    chunk = max(step, math.ceil((t_hi - t_lo) / workers / step) * step)
    edges = [t_lo] + [t_lo + k * chunk for k in range(1, workers) if t_lo + k * chunk < t_hi] + [t_hi]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(_scan, edges[:-1], edges[1:], [step] * (len(edges) - 1))
        records = [r for part in parts for r in part]
    return sorted(records, key=lambda r: r.ordinate)


def _track_arg(f: Callable[[complex], complex], path: Sequence[complex], step: float) -> float:
    """Continuous change of arg f along a polyline, halving steps while jumps exceed pi/2."""
    total = 0.0
    for a, b in zip(path, path[1:]):
        length = abs(b - a)
        n = max(1, math.ceil(length / step))
        z0 = a
        f0 = f(z0)
        pos = 0.0
        h = 1.0 / n
        while pos < 1.0:
            h = min(h, 1.0 - pos)
            z1 = a + (pos + h) * (b - a)
            f1 = f(z1)
            if f0 == 0 or f1 == 0:
                raise ArgTrackingError(f"function vanishes on the contour near {z1}")
            jump = cmath.phase(f1 / f0)
            if abs(jump) > math.pi / 2:
                if h * length < 1e-9:
                    raise ArgTrackingError(f"argument jump not resolved near {z1}")
                h *= 0.5
                continue
            total += jump
            pos += h
            f0 = f1
            h = min(2.0 * h, 1.0 / n)
    return total


def count_zeros_rvm(T: float) -> int:
    """N(T) = theta(T)/pi + 1 + (1/pi) Delta arg zeta along 2 -> 2 + iT -> 1/2 + iT."""
    T = float(T)
    if not T > 0:
        raise DomainError("T must be positive")
    path = [complex(2.0, 0.0), complex(2.0, T), complex(0.5, T)]
    dz = _track_arg(lambda s: riemann_zeta(s).value, path, 0.25)
    n = rs_theta(T) / math.pi + 1.0 + dz / math.pi
    k = round(n)
    if abs(n - k) > 0.25:
        raise ArgTrackingError(f"N({T}) = {n:.4f} is not close to an integer; is T a zero ordinate?")
    return k


def landau_integrals(T: float, *, step: float = 0.005) -> tuple[float, float]:
    """(int_T^{2T} Z dt, int_T^{2T} |Z| dt) by the composite trapezoidal rule."""
    n = max(2, math.ceil(T / step))
    ts = np.linspace(T, 2 * T, n + 1)
    z = np.array([hardy_z(t) for t in ts])
    return float(integrate.trapezoid(z, ts)), float(integrate.trapezoid(np.abs(z), ts))


# ---------------------------------------------------------------------------
# Hurwitz's cosine transform


def _sinc(z: complex) -> complex:
    if abs(z) < 1e-4:
        z2 = z * z
        return 1.0 - z2 / 6.0 + z2 * z2 / 120.0
    return cmath.sin(z) / z


def hurwitz_cosine_transform(kernel: FourierKernel, z: complex) -> complex:
    """U(z) = int_0^1 f(t) cos(zt) dt for f(t) = a_0/2 + sum a_k cos(k pi t).

    Termwise, int_0^1 cos(k pi t) cos(zt) dt = (sinc(z - k pi) + sinc(z + k pi))/2.
    """
    z = complex(z)
    a = kernel.coefficients
    total = 0.5 * a[0] * _sinc(z)
    for k in range(1, len(a)):
        total += 0.5 * a[k] * (_sinc(z - k * math.pi) + _sinc(z + k * math.pi))
    return total


def argument_principle_count(f: Callable[[complex], complex], x0: float, x1: float, y0: float, y1: float, *, step: float = 0.05) -> int:
    """Zeros of an entire f inside the rectangle [x0, x1] x [y0, y1], by winding number."""
    corners = [complex(x0, y0), complex(x1, y0), complex(x1, y1), complex(x0, y1), complex(x0, y0)]
    winding = _track_arg(f, corners, step) / (2 * math.pi)
    n = round(winding)
    if abs(winding - n) > 1e-6:
        raise ArgTrackingError(f"winding number {winding} is not an integer")
    return n


@dataclass(frozen=True)
class CosineCensus:
    """Zeros of U on the real segment (0, x_max] against the argument-principle count.

    The rectangle is |Re z| <= x_max, |Im z| <= height with x_max = (K + 3/2) pi,
    whose edges avoid the zeros; U is even, so it holds twice the positive zeros.
    """

    degree: int
    real_zeros: tuple[float, ...]
    rectangle_count: int
    per_interval: tuple[int, ...]

    @property
    def all_real(self) -> bool:
        return self.rectangle_count == 2 * len(self.real_zeros)

    @property
    def one_per_interval(self) -> bool:
        return all(c == 1 for c in self.per_interval)


def cosine_transform_census(kernel: FourierKernel, *, height: float = 5.0, grid: int = 400) -> CosineCensus:
    """Bracket the real zeros of U and compare with a contour count.

    With a finite kernel of degree K, U(n pi) = 0 for every n > K, so the
    intervals are taken half-open, (k pi, (k+1) pi], k = 0..K.
    """
    K = kernel.degree
    x_max = (K + 1.5) * math.pi

    def u_real(x: float) -> float:
        return hurwitz_cosine_transform(kernel, x).real

    zeros = []
    per_interval = []
    for k in range(K + 1):
        lo, hi = k * math.pi, (k + 1) * math.pi
        xs = np.linspace(lo, hi, grid + 1)
        # keep the open left end off the grid; include the right end
        xs[0] = lo + 1e-9 * math.pi
        vals = [u_real(x) for x in xs]
        found = 0
        for i in range(grid):
            if vals[i + 1] == 0.0 or abs(vals[i + 1]) < 1e-13 and i + 1 == grid:
                zeros.append(float(xs[i + 1]))
                found += 1
            elif vals[i] * vals[i + 1] < 0:
                r, _ = _bisect(u_real, float(xs[i]), float(xs[i + 1]), vals[i])
                zeros.append(r)
                found += 1
        per_interval.append(found)
    count = argument_principle_count(lambda z: hurwitz_cosine_transform(kernel, z), -x_max, x_max, -height, height)
    return CosineCensus(K, tuple(zeros), count, tuple(per_interval))


# ---------------------------------------------------------------------------
# Polya's Xi* and Hadamard products


def polya_xi_star(t: float) -> float:
    """4 pi^2 int_0^inf cosh(9u/2) exp(-2 pi cosh 2u) cos(ut) du; the integrand is below 1e-300 past u = 3."""
    t = float(t)
    if abs(t) > 60:
        raise DomainError("the quadrature is supported for |t| <= 60")
    val, err, *info = integrate.quad(
        lambda u: math.cosh(4.5 * u) * math.exp(-2.0 * math.pi * math.cosh(2.0 * u)),
        0.0,
        3.0,
        weight="cos",
        wvar=t,
        epsabs=1e-20,
        epsrel=1e-13,
        limit=200,
        full_output=1,
    )
    if err > 1e-12:
        raise QuadratureError(f"Xi* quadrature did not converge (error {err:.2e})")
    return 4.0 * math.pi**2 * val


def laguerre_polya_eval(product: LaguerrePolyaSpec, s: complex) -> complex:
    s = complex(s)
    value = s**product.d * cmath.exp(product.a + product.b * s + product.c * s * s)
    for zn in product.zeros:
        r = s / zn
        value *= (1.0 - r) * cmath.exp(r)
    return value
