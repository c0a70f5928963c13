"""Sieve of Eratosthenes and the classical prime sums built on it."""

from __future__ import annotations

import math
from functools import cached_property, lru_cache

import numpy as np

from .errors import DomainError, LimitError

__all__ = [
    "PrimeSieve",
    "sieve",
    "shared_sieve",
    "segmented_prime_count",
    "pnt_ratio",
    "mertens_sum",
    "euler_product_zeta",
    "SIEVE_CAP",
]

SIEVE_CAP = 10**8


class PrimeSieve:
    """Primality flags for 0..limit. Immutable once built."""

    def __init__(self, limit: int):
        limit = int(limit)
        if limit < 2:
            raise DomainError(f"sieve limit must be at least 2, got {limit}")
        if limit > SIEVE_CAP:
            raise LimitError(f"sieve limit {limit} exceeds the cap {SIEVE_CAP}")
        flags = np.ones(limit + 1, dtype=bool)
        flags[:2] = False
        flags[4::2] = False
        for p in range(3, math.isqrt(limit) + 1, 2):
            if flags[p]:
                flags[p * p :: 2 * p] = False
        flags.setflags(write=False)
        self.limit = limit
        self.flags = flags

    def __contains__(self, n: int) -> bool:
        return 0 <= n <= self.limit and bool(self.flags[n])

    @cached_property
    def primes(self) -> np.ndarray:
        out = np.flatnonzero(self.flags)
        out.setflags(write=False)
        return out

    @cached_property
    def _counts(self) -> np.ndarray:
        return np.cumsum(self.flags, dtype=np.int64)

    def pi(self, x: float) -> int:
        """Number of primes <= x."""
        x = math.floor(x)
        if x < 2:
            return 0
        self._check(x)
        return int(self._counts[x])

    def primes_up_to(self, x: float) -> np.ndarray:
        self._check(math.floor(x))
        return self.primes[: self.pi(x)]

    def _check(self, x: int) -> None:
        if x > self.limit:
            raise DomainError(f"x = {x} exceeds the sieve limit {self.limit}")

    def __repr__(self) -> str:
        return f"PrimeSieve(limit={self.limit})"


def sieve(limit: int) -> PrimeSieve:
    return PrimeSieve(limit)


@lru_cache(maxsize=4)
def shared_sieve(limit: int) -> PrimeSieve:
    """A cached sieve for callers that only read from it."""
    return PrimeSieve(limit)


def segmented_prime_count(x: int, segment: int = 1 << 16) -> int:
    """pi(x) by a segmented sieve; independent of PrimeSieve, used as a recount."""
    if x < 2:
        return 0
    root = math.isqrt(x)
    small = [p for p in range(2, root + 1) if all(p % q for q in range(2, math.isqrt(p) + 1))]
    count = 0
    for lo in range(2, x + 1, segment):
        hi = min(lo + segment - 1, x)
        block = np.ones(hi - lo + 1, dtype=bool)
        for p in small:
            if p * p > hi:
                break
            start = max(p * p, ((lo + p - 1) // p) * p)
            block[start - lo :: p] = False
        count += int(block.sum())
    return count


def pnt_ratio(x: int, sv: PrimeSieve) -> float:
    """pi(x) log(x) / x."""
    if x < 2:
        raise DomainError("pnt_ratio needs x >= 2")
    return sv.pi(x) * math.log(x) / x


def mertens_sum(x: int, sv: PrimeSieve) -> float:
    """sum_{p <= x} 1/p - log log x, summed with math.fsum."""
    if x < 3:
        raise DomainError("mertens_sum needs x >= 3")
    ps = sv.primes_up_to(x)
    return math.fsum((1.0 / ps).tolist()) - math.log(math.log(x))


def euler_product_zeta(s: float, sv: PrimeSieve) -> float:
    """prod_{p <= limit} (1 - p^{-s})^{-1}."""
    s = float(s)
    if not s > 1.0:
        raise DomainError(f"the Euler product needs s > 1, got {s}")
    ps = sv.primes.astype(np.float64)
    logs = -np.log1p(-(ps ** (-s)))
    return math.exp(math.fsum(logs.tolist()))
