"""Epstein zeta-functions of positive-definite quadratic forms, with characteristics.

The basic object is the lattice sum

    C(w; Q, g, h) = sum'_{m in Z^p} e^{2 pi i m.h} q(m + g)^{-w},   q(x) = x^T Q x,

where the prime drops m = -g when g is integral. Epstein's Z|g,h|(s) is
C(s/2) and the plain zeta(s, Q) is C(s) with g = h = 0.

Continuation splits the Mellin integral of the theta series at t = 1 and
applies Poisson summation to the piece on (0, 1):

    pi^{-w} Gamma(w) C(w) = A(w) + eps d B(w) + eps d c0*/(w - p/2) - c0/w

    A = sum'_m e^{2 pi i m.h} G(w, pi q(m+g)),
    B = sum'_k e^{-2 pi i k.g} G(p/2 - w, pi q*(k+h)),   G(a, x) = x^{-a} Gamma(a, x),

with q* the form of Q^{-1}, d = det(Q)^{-1/2}, eps = e^{-2 pi i g.h}, c0 the
excluded term e^{2 pi i m0.h} (m0 = -g) if g is integral and c0* = e^{-2 pi i k0.g}
(k0 = -h) if h is integral, both zero otherwise. So C has a pole only at w = p/2
and only for integral h; at w = 0 it is finite (-c0).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import DomainError, PoleError
from .hurwitz import EvalResult
from .special import gamma, rgamma, upper_incomplete_gamma

__all__ = [
    "GramMatrix",
    "Characteristics",
    "epstein_zeta",
    "epstein_zeta_char",
    "epstein_lattice_sum",
    "epstein_completed",
    "epstein_direct_sum",
    "epstein_fe_residual",
    "epstein_matrix_fe_residual",
    "adjoint_pair_f",
    "adjoint_pair_F",
    "adjoint_pair_residual",
    "MAX_DIMENSION",
]

MAX_DIMENSION = 4
_EPS = 2.220446049250313e-16
_GAMMA_REL = 1e-13  # relative accuracy of the incomplete gamma kernel
_SHELL = 8.0


class GramMatrix:
    """Symmetric positive-definite p x p matrix with cached determinant and inverse."""

    def __init__(self, entries):
        a = np.array(entries, dtype=float)
        if a.ndim == 0:
            a = a.reshape(1, 1)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DomainError("a Gram matrix must be square")
        p = a.shape[0]
        if not 1 <= p <= MAX_DIMENSION:
            raise DomainError(f"dimension {p} outside 1..{MAX_DIMENSION}")
        if not np.all(np.isfinite(a)):
            raise DomainError("Gram matrix entries must be finite")
        scale = max(1.0, float(np.max(np.abs(a))))
        if np.max(np.abs(a - a.T)) > 1e-14 * scale:
            raise DomainError("Gram matrix is not symmetric")
        a = 0.5 * (a + a.T)
        if any(np.linalg.det(a[:k, :k]) <= 0 for k in range(1, p + 1)):
            raise DomainError("Gram matrix is not positive definite")
        a.setflags(write=False)
        self.entries = a
        self.p = p

    @classmethod
    def identity(cls, p: int) -> GramMatrix:
        return cls(np.eye(p))

    @cached_property
    def det(self) -> float:
        return float(np.linalg.det(self.entries))

    @cached_property
    def inverse(self) -> GramMatrix:
        return GramMatrix(np.linalg.inv(self.entries))

    @cached_property
    def adjugate(self) -> GramMatrix:
        """The adjoint form: det(Q) Q^{-1}."""
        return GramMatrix(self.det * np.linalg.inv(self.entries))

    def scaled(self, c: float) -> GramMatrix:
        return GramMatrix(c * self.entries)

    def transformed(self, u) -> GramMatrix:
        """U^T Q U."""
        u = np.asarray(u, dtype=float)
        return GramMatrix(u.T @ self.entries @ u)

    def __call__(self, x) -> float:
        x = np.asarray(x, dtype=float)
        return float(x @ self.entries @ x)

    def __repr__(self) -> str:
        return f"GramMatrix({self.entries.tolist()})"


def _vector(v, p: int) -> tuple[float, ...]:
    out = tuple(float(x) for x in (v if v is not None else [0.0] * p))
    if len(out) != p or not all(math.isfinite(x) for x in out):
        raise DomainError(f"characteristic must be a finite {p}-vector")
    return out


@dataclass(frozen=True)
class Characteristics:
    g: tuple[float, ...]
    h: tuple[float, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "g", tuple(float(x) for x in self.g))
        h = self.h if self.h else (0.0,) * len(self.g)
        object.__setattr__(self, "h", tuple(float(x) for x in h))
        if len(self.g) != len(self.h):
            raise DomainError("g and h must have the same length")
        if not all(math.isfinite(x) for x in self.g + self.h):
            raise DomainError("characteristics must be finite")

    @classmethod
    def zero(cls, p: int) -> Characteristics:
        return cls((0.0,) * p, (0.0,) * p)

    @property
    def g_integral(self) -> bool:
        return all(x == round(x) for x in self.g)

    @property
    def h_integral(self) -> bool:
        return all(x == round(x) for x in self.h)


def _dot_frac(a, b) -> float:
    return math.fsum(x * y for x, y in zip(a, b)) % 1.0


def _lattice(Q: GramMatrix, shift: tuple[float, ...], x_max: float):
    """Points m (integer vectors) with pi q(m + shift) <= x_max, excluding q = 0.

    Returns (m array, x = pi q(m + shift) array).
    """
    p = Q.p
    inv_diag = np.diag(Q.inverse.entries)
    radius = np.sqrt(x_max / math.pi * inv_diag)
    axes = [np.arange(math.floor(-c - r), math.ceil(-c + r) + 1) for c, r in zip(shift, radius)]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, p)
    y = grid + np.asarray(shift)
    x = math.pi * np.einsum("ij,jk,ik->i", y, Q.entries, y)
    keep = (x <= x_max) & (x > 0.0)
    return grid[keep].astype(float), x[keep]


def _gamma_sum(a: complex, Q: GramMatrix, shift, twist, x_max: float) -> tuple[complex, float, float]:
    """sum' e^{2 pi i m.twist} G(a, pi q(m+shift)) over pi q <= x_max.

    Returns (sum, sum of |terms|, estimate of the omitted tail).
    """
    m, x = _lattice(Q, shift, x_max)
    phases = np.exp(2j * math.pi * np.mod(m @ np.asarray(twist), 1.0))
    # equal x values share G(a, x): group them
    order = np.argsort(x, kind="stable")
    x, phases = x[order], phases[order]
    uniq, start = np.unique(x, return_index=True)
    grouped = np.add.reduceat(phases, start) if len(x) else np.zeros(0, complex)
    counts = np.diff(np.append(start, len(x)))
    total = 0j
    absum = 0.0
    shell = 0.0
    for xv, ph, cnt in zip(uniq.tolist(), grouped.tolist(), counts.tolist()):
        gv = upper_incomplete_gamma(a, xv) * cmath.exp(-a * math.log(xv))
        total += gv * ph
        mag = abs(gv) * cnt
        absum += mag
        if xv > x_max - _SHELL:
            shell += mag
    # beyond x_max the terms fall off like e^{-x}; the next shell is about e^{-8} of the last
    tail = 2.0 * math.exp(-_SHELL) * shell
    return total, absum, tail


def _cutoff(w: complex, p: int) -> float:
    return 44.0 + 2.0 * abs(w) + 2.0 * p


@dataclass(frozen=True)
class _Split:
    c: float  # det normalisation, C(w; Q) = c^w C(w; cQ)
    inner: complex  # A + eps B + eps c0*/(w - p/2) for the normalised form
    c0: complex
    inner_err: float


def _split(w: complex, Q: GramMatrix, ch: Characteristics | None) -> _Split:
    p = Q.p
    ch = ch or Characteristics.zero(p)
    if len(ch.g) != p:
        raise DomainError("characteristics do not match the dimension")
    if ch.h_integral and w == p / 2:
        raise PoleError(f"pole at w = {p / 2} (h integral)")
    c = Q.det ** (-1.0 / p)
    Qn = Q.scaled(c)
    g, h = ch.g, ch.h
    x_max = _cutoff(w, p)
    a_sum, a_abs, a_tail = _gamma_sum(w, Qn, g, h, x_max)
    b_sum, b_abs, b_tail = _gamma_sum(p / 2 - w, Qn.inverse, h, tuple(-x for x in g), x_max)
    eps = cmath.exp(-2j * math.pi * _dot_frac(g, h))
    c0 = cmath.exp(2j * math.pi * _dot_frac([-x for x in g], h)) if ch.g_integral else 0j
    inner = a_sum + eps * b_sum
    if ch.h_integral:
        c0s = cmath.exp(-2j * math.pi * _dot_frac([-x for x in h], g))
        inner += eps * c0s / (w - p / 2)
    err = a_tail + b_tail + (_GAMMA_REL + 8 * _EPS * (1 + abs(w))) * (a_abs + b_abs)
    return _Split(c, inner, c0, err)


def epstein_lattice_sum(w: complex, Q: GramMatrix, ch: Characteristics | None = None) -> EvalResult:
    """C(w; Q, g, h) = sum' e^{2 pi i m.h} q(m+g)^{-w}, continued to all w (pole at p/2 iff h integral)."""
    w = complex(w)
    sp = _split(w, Q, ch)
    rg = rgamma(w)
    pref = cmath.exp(w * math.log(math.pi * sp.c))  # (pi c)^w
    value = pref * (rg * sp.inner - sp.c0 * rgamma(w + 1.0))
    err = abs(pref) * (abs(rg) * sp.inner_err + 8 * _EPS * abs(sp.c0))
    return EvalResult(value, err + 4 * _EPS * abs(value))


def epstein_completed(w: complex, Q: GramMatrix, ch: Characteristics | None = None) -> EvalResult:
    """pi^{-w} Gamma(w) C(w; Q, g, h); finite at the poles of Gamma except w = 0 when g is integral."""
    w = complex(w)
    sp = _split(w, Q, ch)
    if sp.c0 and w == 0:
        raise PoleError("the completed function has a pole at w = 0 for integral g")
    body = sp.inner - (sp.c0 / w if sp.c0 else 0j)
    scale = cmath.exp(w * math.log(sp.c))
    value = scale * body
    return EvalResult(value, abs(scale) * sp.inner_err + 4 * _EPS * abs(value))


def epstein_zeta(s: complex, Q: GramMatrix) -> EvalResult:
    """zeta(s, Q) = sum_{m != 0} q(m)^{-s}; simple pole at s = p/2."""
    s = complex(s)
    if s == Q.p / 2:
        raise PoleError(f"zeta(s, Q) has a pole at s = {Q.p / 2}")
    return epstein_lattice_sum(s, Q)


def epstein_zeta_char(s: complex, Q: GramMatrix, ch: Characteristics) -> EvalResult:
    """Z|g,h|(s) = sum' e^{2 pi i m.h} q(m+g)^{-s/2}; entire unless h is integral (pole at s = p)."""
    s = complex(s)
    if ch.h_integral and s == Q.p:
        raise PoleError(f"Z|g,h|(s) has a pole at s = {Q.p} for integral h")
    return epstein_lattice_sum(s / 2.0, Q, ch)


def epstein_direct_sum(s: complex, Q: GramMatrix, ch: Characteristics | None = None, *, radius: int = 60) -> EvalResult:
    """Truncated lattice sum of Z|g,h|(s) over the box |m_i + g_i| <= radius, with a tail bound.

    Needs Re s > p. The bound integrates (lambda_min r^2)^{-Re s/2} over r > radius.
    """
    s = complex(s)
    p = Q.p
    ch = ch or Characteristics.zero(p)
    if not s.real > p:
        raise DomainError("the direct sum converges only for Re s > p")
    axes = [np.arange(math.floor(-gi - radius), math.ceil(-gi + radius) + 1) for gi in ch.g]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, p).astype(float)
    y = grid + np.asarray(ch.g)
    inside = np.all(np.abs(y) <= radius, axis=1)
    grid, y = grid[inside], y[inside]
    q = np.einsum("ij,jk,ik->i", y, Q.entries, y)
    keep = q > 0
    grid, q = grid[keep], q[keep]
    phase = 2j * math.pi * np.mod(grid @ np.asarray(ch.h), 1.0)
    terms = np.exp(phase - 0.5 * s * np.log(q))
    value = complex(np.sum(terms))
    lam_min = float(np.min(np.linalg.eigvalsh(Q.entries)))
    sigma = s.real
    area = 2 * math.pi ** (p / 2) / math.gamma(p / 2)  # surface of the unit sphere in R^p
    tail = area * lam_min ** (-sigma / 2) * radius ** (p - sigma) / (sigma - p)
    return EvalResult(value, tail + 1e-15 * float(np.sum(np.abs(terms))))


def epstein_fe_residual(s: complex, Q: GramMatrix, ch: Characteristics) -> float:
    """|e^{2 pi i g.h} pi^{-s/2} Gamma(s/2) Z|g,h|(s)_Q - det^{-1/2} pi^{(s-p)/2} Gamma((p-s)/2) Z|h,-g|(p-s)_{Q^{-1}}|.

    Both sides are completed functions, evaluated directly, so the poles of the
    gamma factors alone do not obstruct the check.
    """
    s = complex(s)
    p = Q.p
    dual = Characteristics(ch.h, tuple(-x for x in ch.g))
    lhs = cmath.exp(2j * math.pi * _dot_frac(ch.g, ch.h)) * epstein_completed(s / 2, Q, ch).value
    rhs = Q.det**-0.5 * epstein_completed((p - s) / 2, Q.inverse, dual).value
    return abs(lhs - rhs)


def epstein_matrix_fe_residual(s: complex, Q: GramMatrix, *, det_exponent: float = -0.5) -> float:
    """|pi^{-s} Gamma(s) zeta(s, Q) - det(Q)^{det_exponent} pi^{s-p/2} Gamma(p/2-s) zeta(p/2-s, Q^{-1})|."""
    s = complex(s)
    p = Q.p
    if s == 0 or s == p / 2:
        raise PoleError(f"s = {s} is a pole of the completed function")
    lhs = epstein_completed(s, Q).value
    rhs = Q.det**det_exponent * epstein_completed(p / 2 - s, Q.inverse).value
    return abs(lhs - rhs)


# Adjoint-pair normalisation: exponent s on the form itself, adjoint form det(Q) Q^{-1}.


def adjoint_pair_f(s: complex, Q: GramMatrix, u, v) -> complex:
    """f(s) = Gamma(s) (D/pi^2)^{s/2} sum e^{2 pi i n.v} / q(n+u)^s, D = det Q."""
    s = complex(s)
    ch = Characteristics(_vector(u, Q.p), _vector(v, Q.p))
    core = epstein_lattice_sum(s, Q, ch).value
    return gamma(s) * cmath.exp(0.5 * s * math.log(Q.det / math.pi**2)) * core


def adjoint_pair_F(s: complex, Q: GramMatrix, u, v) -> complex:
    """F(s) = Gamma(s) (D^{p-1}/pi^2)^{s/2} sum e^{-2 pi i n.u} / q_adj(n+v)^s."""
    s = complex(s)
    p = Q.p
    u, v = _vector(u, p), _vector(v, p)
    ch = Characteristics(v, tuple(-x for x in u))
    core = epstein_lattice_sum(s, Q.adjugate, ch).value
    return gamma(s) * cmath.exp(0.5 * s * math.log(Q.det ** (p - 1) / math.pi**2)) * core


def adjoint_pair_residual(s: complex, Q: GramMatrix, u, v) -> float:
    """|f(p/2 - s) - e^{-2 pi i u.v} D^{(p-1)/2} F(s)|; an identity only when D = 1."""
    s = complex(s)
    p = Q.p
    u, v = _vector(u, p), _vector(v, p)
    lhs = adjoint_pair_f(p / 2 - s, Q, u, v)
    rhs = cmath.exp(-2j * math.pi * _dot_frac(u, v)) * Q.det ** ((p - 1) / 2) * adjoint_pair_F(s, Q, u, v)
    return abs(lhs - rhs)
