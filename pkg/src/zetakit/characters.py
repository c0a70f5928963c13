"""Dirichlet characters as exact value tables, the Kronecker symbol and Gauss sums.

A character value on a unit is stored as an angle q in [0, 1) (a Fraction),
standing for e^{2 pi i q}; ``None`` marks n with gcd(n, m) > 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product

from .errors import DomainError, NotPrimitiveError
from .special import cospi, sinpi

__all__ = [
    "DirichletCharacter",
    "enumerate_characters",
    "principal_character",
    "conductor",
    "primitive_inducing",
    "kronecker_symbol",
    "kronecker_character",
    "is_fundamental_discriminant",
    "gauss_sum",
    "root_of_unity",
    "euler_phi",
    "factorize",
]


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of a positive integer by trial division."""
    if n < 1:
        raise DomainError(f"cannot factor {n}")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def euler_phi(n: int) -> int:
    result = n
    for p in factorize(n):
        result -= result // p
    return result


def root_of_unity(q: Fraction) -> complex:
    """e^{2 pi i q}, exact at multiples of 1/4."""
    q = q % 1
    quarter = q * 4
    if quarter.denominator == 1:
        return (1 + 0j, 1j, -1 + 0j, -1j)[int(quarter)]
    x = 2 * q
    return complex(cospi(float(x)).real, sinpi(float(x)).real)


def _primitive_root(p: int) -> int:
    """Smallest primitive root modulo an odd prime p."""
    order = p - 1
    factors = list(factorize(order))
    for g in range(2, p):
        if all(pow(g, order // q, p) != 1 for q in factors):
            return g
    raise AssertionError("unreachable: every odd prime has a primitive root")


def _cyclic_generators(m: int) -> list[tuple[int, int]]:
    """Generators (mod m) and orders of a cyclic decomposition of (Z/mZ)*."""
    gens: list[tuple[int, int]] = []
    for p, k in sorted(factorize(m).items()) if m > 1 else []:
        pk = p**k
        rest = m // pk
        local: list[tuple[int, int]] = []
        if p == 2:
            if k >= 2:
                local.append((pk - 1, 2))
            if k >= 3:
                local.append((5, 2 ** (k - 2)))
        else:
            g = _primitive_root(p)
            if k > 1 and pow(g, p - 1, p * p) == 1:
                g += p
            local.append((g, (p - 1) * p ** (k - 1)))
        for g, order in local:
            # CRT lift: g mod p^k, 1 mod the rest
            lifted = (g * rest * pow(rest, -1, pk) + pk * pow(pk, -1, rest)) % m if rest > 1 else g % m
            gens.append((lifted, order))
    return gens


@lru_cache(maxsize=64)
def _unit_logs(m: int) -> tuple[tuple[tuple[int, int], ...], dict[int, tuple[int, ...]]]:
    gens = tuple(_cyclic_generators(m))
    logs: dict[int, tuple[int, ...]] = {}
    for exps in product(*(range(order) for _, order in gens)):
        a = 1
        for (g, _), e in zip(gens, exps):
            a = a * pow(g, e, m) % m
        logs[a % m] = exps
    if m == 1:
        logs = {0: ()}
    return gens, logs


@dataclass(frozen=True)
class DirichletCharacter:
    """A character mod ``modulus``; ``angles[n % modulus]`` is q with chi(n) = e^{2 pi i q}, or None."""

    modulus: int
    angles: tuple[Fraction | None, ...]

    def __post_init__(self):
        if self.modulus < 1 or len(self.angles) != self.modulus:
            raise DomainError("value table length must equal the modulus")

    def __call__(self, n: int) -> complex:
        q = self.angles[n % self.modulus]
        return 0j if q is None else root_of_unity(q)

    def angle(self, n: int) -> Fraction | None:
        return self.angles[n % self.modulus]

    @cached_property
    def values(self) -> tuple[complex, ...]:
        return tuple(self(n) for n in range(self.modulus))

    @property
    def is_principal(self) -> bool:
        return all(q is None or q == 0 for q in self.angles)

    @property
    def parity(self) -> int:
        """chi(-1) as +1 or -1."""
        return 1 if self.angles[-1 % self.modulus] == 0 else -1

    @property
    def is_real(self) -> bool:
        return all(q is None or q.denominator <= 2 for q in self.angles)

    @property
    def order(self) -> int:
        return math.lcm(*(q.denominator for q in self.angles if q is not None))

    @cached_property
    def conductor(self) -> int:
        m = self.modulus
        for f in sorted(d for d in range(1, m + 1) if m % d == 0):
            if all(
                self.angles[a] == 0
                for a in range(1, m, f)
                if self.angles[a] is not None
            ):
                return f
        return m

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    def __mul__(self, other: DirichletCharacter) -> DirichletCharacter:
        if other.modulus != self.modulus:
            raise DomainError("characters must share a modulus")
        return DirichletCharacter(
            self.modulus,
            tuple(None if p is None or q is None else (p + q) % 1 for p, q in zip(self.angles, other.angles)),
        )

    def conjugate(self) -> DirichletCharacter:
        return DirichletCharacter(self.modulus, tuple(None if q is None else (-q) % 1 for q in self.angles))

    def __repr__(self) -> str:
        kind = "principal" if self.is_principal else ("real" if self.is_real else "complex")
        return f"DirichletCharacter(modulus={self.modulus}, {kind}, conductor={self.conductor}, parity={self.parity:+d})"


def enumerate_characters(m: int) -> list[DirichletCharacter]:
    """All phi(m) characters mod m; the principal character comes first."""
    if m < 1:
        raise DomainError(f"modulus must be positive, got {m}")
    gens, logs = _unit_logs(m)
    out = []
    for js in product(*(range(order) for _, order in gens)):
        angles: list[Fraction | None] = [None] * m
        for a, exps in logs.items():
            angles[a] = sum((Fraction(j * e, order) for j, e, (_, order) in zip(js, exps, gens)), Fraction(0)) % 1
        out.append(DirichletCharacter(m, tuple(angles)))
    return out


def principal_character(m: int) -> DirichletCharacter:
    return DirichletCharacter(m, tuple(Fraction(0) if math.gcd(n, m) == 1 else None for n in range(m)))


def conductor(chi: DirichletCharacter) -> int:
    return chi.conductor


def primitive_inducing(chi: DirichletCharacter) -> DirichletCharacter:
    """The primitive character mod conductor(chi) that induces chi."""
    f = chi.conductor
    m = chi.modulus
    angles: list[Fraction | None] = [None] * f
    for r in range(f):
        if math.gcd(r, f) != 1:
            continue
        # any n = r mod f coprime to m carries the value
        n = r
        while math.gcd(n, m) != 1:
            n += f
        angles[r] = chi.angles[n % m]
    return DirichletCharacter(f, tuple(angles))


def kronecker_symbol(D: int, n: int) -> int:
    """The Kronecker symbol (D/n) for n >= 1."""
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    result = 1
    while n % 2 == 0:
        n //= 2
        if D % 2 == 0:
            return 0
        if D % 8 in (3, 5):
            result = -result
    # Jacobi symbol (D/n), n odd
    a = D % n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_fundamental_discriminant(D: int) -> bool:
    if D in (0, 1):
        return False
    if D % 4 == 1:
        return all(k == 1 for k in factorize(abs(D)).values())
    if D % 4 == 0:
        r = D // 4
        if r % 4 not in (2, 3):
            return False
        return all(k == 1 for k in factorize(abs(r)).values())
    return False


def kronecker_character(D: int) -> DirichletCharacter:
    """n -> (D/n) as a character mod |D|, for a fundamental discriminant D."""
    if not is_fundamental_discriminant(D):
        raise NotPrimitiveError(f"{D} is not a fundamental discriminant")
    m = abs(D)
    angles = []
    for n in range(m):
        k = kronecker_symbol(D, n if n else m)
        angles.append(None if k == 0 else (Fraction(0) if k == 1 else Fraction(1, 2)))
    return DirichletCharacter(m, tuple(angles))


def gauss_sum(chi: DirichletCharacter) -> complex:
    """tau(chi) = sum_{a mod m} chi(a) e^{2 pi i a/m}, summed with exact angle arithmetic."""
    m = chi.modulus
    total = 0j
    for a in range(m):
        q = chi.angles[a]
        if q is not None:
            total += root_of_unity(q + Fraction(a, m))
    return total
