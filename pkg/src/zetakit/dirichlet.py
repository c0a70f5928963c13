"""Dirichlet L-functions, their functional equations, primes in progressions
and the analytic class number formula for imaginary quadratic fields."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .characters import (
    DirichletCharacter,
    enumerate_characters,
    euler_phi,
    factorize,
    gauss_sum,
    is_fundamental_discriminant,
    kronecker_character,
)
from .errors import DomainError, NotPrimitiveError, PoleError, RoundingError
from .hurwitz import EvalResult, hurwitz_regular, hurwitz_zeta
from .primes import shared_sieve
from .special import gamma, rgamma, upper_incomplete_gamma

__all__ = [
    "QuadraticFormClass",
    "dirichlet_l",
    "euler_product_truncation",
    "quadratic_f",
    "dirichlet_fe_residual",
    "schloemilch_fe_residual",
    "quadratic_f_fe_residual",
    "reduced_forms",
    "reduced_forms_count",
    "class_number_analytic",
    "ProgressionCheck",
    "progression_sum_check",
    "PROGRESSION_PRIME_LIMIT",
]

PROGRESSION_PRIME_LIMIT = 10**6


def _is_gamma_pole(z: complex) -> bool:
    return z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real)


def dirichlet_l(s: complex, chi: DirichletCharacter) -> EvalResult:
    """L(s, chi) = m^{-s} sum_a chi(a) zeta(s, a/m).

    For non-principal chi the values chi(a) sum to zero, so the regular parts
    zeta(s, a/m) - 1/(s-1) can be summed instead; the poles cancel exactly and
    s = 1 needs no special treatment.
    """
    s = complex(s)
    m = chi.modulus
    principal = chi.is_principal
    if principal and s == 1:
        raise PoleError("L(s, chi) has a pole at s = 1 for principal chi")
    kernel = hurwitz_zeta if principal else hurwitz_regular
    total = 0j
    err = 0.0
    for a in range(1, m + 1):
        c = chi(a)
        if c == 0:
            continue
        r = kernel(s, a / m)
        total += c * r.value
        err += r.err_estimate
    scale = cmath.exp(-s * math.log(m))
    return EvalResult(scale * total, abs(scale) * err)


def euler_product_truncation(s: complex, chi: DirichletCharacter, P: int) -> complex:
    """prod_{p <= P} (1 - chi(p) p^{-s})^{-1} for Re s > 1."""
    s = complex(s)
    if not s.real > 1.0:
        raise DomainError(f"the Euler product needs Re s > 1, got {s}")
    if P < 2:
        return 1 + 0j
    log_sum = 0j
    for p in shared_sieve(max(int(P), 2)).primes_up_to(P).tolist():
        c = chi(p)
        if c != 0:
            log_sum += -cmath.log(1.0 - c * cmath.exp(-s * math.log(p)))
    return cmath.exp(log_sum)


def _check_quadratic_d(D: int) -> None:
    if not (isinstance(D, int) and D > 1 and D % 4 == 1 and all(k == 1 for k in factorize(D).values())):
        raise DomainError(f"D must be a squarefree integer > 1 with D = 1 mod 4, got {D}")


def quadratic_f(s: complex, D: int) -> EvalResult:
    """F(s, D) = sum_{n >= 1} (D/n) n^{-s} for squarefree D = 1 mod 4, D > 1.

    The symbol is the Kronecker symbol, so n = 2 contributes (D/2) = +-1; with
    that reading F is L(s, chi_D) for the even primitive character mod D and
    satisfies the reflection formula of ``quadratic_f_fe_residual``.
    """
    _check_quadratic_d(D)
    return dirichlet_l(s, kronecker_character(D))


def _completed(s: complex, chi: DirichletCharacter, delta: int) -> complex:
    m = chi.modulus
    w = (s + delta) / 2.0
    return cmath.exp(w * math.log(m / math.pi)) * gamma(w) * dirichlet_l(s, chi).value


def dirichlet_fe_residual(s: complex, chi: DirichletCharacter) -> float:
    """|Lambda(s, chi) - eps(chi) Lambda(1 - s, conj chi)| for primitive chi.

    Lambda(s, chi) = (m/pi)^{(s+d)/2} Gamma((s+d)/2) L(s, chi), d = 0 for even and
    1 for odd chi, and eps(chi) = tau(chi) / (i^d sqrt m).
    """
    s = complex(s)
    if not chi.is_primitive:
        raise NotPrimitiveError(f"character mod {chi.modulus} has conductor {chi.conductor}")
    delta = 0 if chi.parity == 1 else 1
    if _is_gamma_pole((s + delta) / 2.0) or _is_gamma_pole((1.0 - s + delta) / 2.0):
        raise PoleError(f"s = {s} hits a pole of the gamma factor")
    if chi.is_principal and s in (0, 1):
        raise PoleError("the completed zeta-function has poles at s = 0, 1")
    eps = gauss_sum(chi) / ((1j) ** delta * math.sqrt(chi.modulus))
    lhs = _completed(s, chi, delta)
    rhs = eps * _completed(1.0 - s, chi.conjugate(), delta)
    return abs(lhs - rhs)


def schloemilch_fe_residual(s: complex) -> float:
    """|L(1-s) - (2/pi)^s Gamma(s) sin(pi s/2) L(s)| for the non-principal character mod 4."""
    s = complex(s)
    if _is_gamma_pole(s):
        raise PoleError(f"Gamma has a pole at s = {s}")
    chi = kronecker_character(-4)
    lhs = dirichlet_l(1.0 - s, chi).value
    rhs = cmath.exp(s * math.log(2.0 / math.pi)) * gamma(s) * cmath.sin(math.pi * s / 2.0) * dirichlet_l(s, chi).value
    return abs(lhs - rhs)


def quadratic_f_fe_residual(s: complex, D: int) -> float:
    """|F(1-s, D) - (D/pi)^{s-1/2} Gamma(s/2)/Gamma((1-s)/2) F(s, D)|."""
    s = complex(s)
    _check_quadratic_d(D)
    if _is_gamma_pole(s / 2.0):
        raise PoleError(f"Gamma(s/2) has a pole at s = {s}")
    lhs = quadratic_f(1.0 - s, D).value
    factor = cmath.exp((s - 0.5) * math.log(D / math.pi)) * gamma(s / 2.0) * rgamma((1.0 - s) / 2.0)
    return abs(lhs - factor * quadratic_f(s, D).value)


@dataclass(frozen=True)
class QuadraticFormClass:
    """The positive-definite binary form a X^2 + b XY + c Y^2."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        if not self.a > 0 or self.discriminant >= 0:
            raise DomainError(f"({self.a}, {self.b}, {self.c}) is not positive definite")

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not abs(b) <= a <= c:
            return False
        if abs(b) == a or a == c:
            return b >= 0
        return True


def _require_negative_fundamental(D: int) -> None:
    if not (isinstance(D, int) and D < 0 and is_fundamental_discriminant(D)):
        raise DomainError(f"{D} is not a negative fundamental discriminant")


def reduced_forms(D: int) -> list[QuadraticFormClass]:
    """All reduced forms of discriminant D; |b| <= a <= sqrt(|D|/3)."""
    _require_negative_fundamental(D)
    out = []
    a_max = math.isqrt(-D // 3)
    for a in range(1, a_max + 1):
        for b in range(-a, a + 1):
            num = b * b - D
            if num % (4 * a):
                continue
            f = QuadraticFormClass(a, b, num // (4 * a))
            if f.is_reduced:
                out.append(f)
    return out


def reduced_forms_count(D: int) -> int:
    return len(reduced_forms(D))


def class_number_analytic(D: int) -> int:
    """h(D) = (w / 2 pi) sqrt(|D|) L(1, chi_D), rounded; w counts the units."""
    _require_negative_fundamental(D)
    units = {-3: 6, -4: 4}.get(D, 2)
    value = units / (2.0 * math.pi) * math.sqrt(-D) * dirichlet_l(1, kronecker_character(D)).value.real
    h = round(value)
    if abs(value - h) > 0.1 or h < 1:
        raise RoundingError(f"h({D}) evaluated to {value}, not near an integer")
    return h


@dataclass(frozen=True)
class ProgressionCheck:
    """Both sides of the prime-progression relation and what separates them.

    ``lhs`` sums p^{-s} over primes p = a mod m up to ``prime_limit``; ``rhs`` is
    (1/phi(m)) (log zeta(s) + sum_{chi != chi0} conj(chi(a)) log L(s, chi)).
    They differ by a function bounded as s -> 1+. The three correction terms
    account for it: the Euler factors of p | m inside log zeta, the prime-power
    terms p^{-ks} (k >= 2) and an estimate of the primes above the limit.
    """

    a: int
    m: int
    s: float
    lhs: float
    rhs: float
    divisor_correction: float
    prime_power_correction: float
    tail_estimate: float
    prime_limit: int

    @property
    def difference(self) -> float:
        return self.lhs - self.rhs

    @property
    def corrected_difference(self) -> float:
        """lhs + tail - (rhs - divisor part - prime powers)."""
        return self.lhs + self.tail_estimate - (self.rhs - self.divisor_correction - self.prime_power_correction)

    def __iter__(self):
        return iter((self.lhs, self.rhs))


def _e1(x: float) -> float:
    """Exponential integral E_1(x), x > 0."""
    return upper_incomplete_gamma(0.0, x).real


def progression_sum_check(a: int, m: int, s: float, *, prime_limit: int = PROGRESSION_PRIME_LIMIT) -> ProgressionCheck:
    if m < 1 or math.gcd(a, m) != 1:
        raise DomainError(f"need gcd(a, m) = 1, got a={a}, m={m}")
    s = float(s)
    if not 1.0 < s <= 2.0:
        raise DomainError(f"s must lie in (1, 2], got {s}")
    phi = euler_phi(m)
    sv = shared_sieve(prime_limit)
    ps = sv.primes_up_to(prime_limit).tolist()
    lhs = math.fsum(p ** (-s) for p in ps if p % m == a % m)

    rhs_acc = 0j
    for chi in enumerate_characters(m):
        if chi.is_principal:
            rhs_acc += cmath.log(hurwitz_zeta(s, 1.0).value)
        else:
            rhs_acc += chi(a).conjugate() * cmath.log(dirichlet_l(s, chi).value)
    rhs = (rhs_acc / phi).real

    divisor = math.fsum(-math.log1p(-(p ** (-s))) for p in factorize(m)) / phi if m > 1 else 0.0
    # prime powers p^k = a mod m, k >= 2, p not dividing m
    powers = []
    for p in ps:
        if m % p == 0:
            continue
        pk = p * p
        k = 2
        term = pk ** (-s)
        if term < 1e-20:
            break
        while term > 1e-20:
            if pk % m == a % m:
                powers.append(term / k)
            pk *= p
            k += 1
            term = float(pk) ** (-s)
    prime_powers = math.fsum(powers)
    # primes above the limit: density 1/(phi log x), integral is E_1((s-1) log P)/phi
    tail = _e1((s - 1.0) * math.log(prime_limit)) / phi
    return ProgressionCheck(a, m, s, lhs, rhs, divisor, prime_powers, tail, prime_limit)
