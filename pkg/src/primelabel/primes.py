"""Primality testing and sieving.

All integers handled here are unsigned 64-bit. ``is_prime`` is a
deterministic Miller-Rabin test; the first twelve primes as bases are
known to be a complete witness set below 3.3e24, which covers the whole
64-bit range.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError, ResourceLimitError

U64_MAX = (1 << 64) - 1

# Default ceiling on sieve size (entries); one byte per entry.
DEFAULT_SIEVE_BUDGET = 2 * 10**9

_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
                 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)


def check_u64(x: int, what: str = "value") -> int:
    if x < 0 or x > U64_MAX:
        raise ResourceLimitError(f"{what} {x} does not fit in 64 bits")
    return x


def checked_add(a: int, b: int) -> int:
    return check_u64(a + b, "sum")


def checked_mul(a: int, b: int) -> int:
    return check_u64(a * b, "product")


def is_prime(x: int) -> bool:
    """Return True iff ``x`` is prime. Deterministic for all x < 2**64."""
    if x > U64_MAX:
        raise ResourceLimitError(f"{x} does not fit in 64 bits")
    if x < 2:
        return False
    for q in _SMALL_PRIMES:
        if x % q == 0:
            return x == q
    if x < 97 * 97:
        return True
    d = x - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _WITNESSES:
        y = pow(a, d, x)
        if y == 1 or y == x - 1:
            continue
        for _ in range(s - 1):
            y = y * y % x
            if y == x - 1:
                break
        else:
            return False
    return True


def smallest_factor(x: int, bound: int = 10**6) -> int | None:
    """Smallest prime factor of ``x`` by trial division up to ``bound``.

    Returns None if ``x`` < 2 or no factor <= bound divides it.
    """
    if x < 2:
        return None
    if x % 2 == 0:
        return 2
    q = 3
    lim = min(bound, math.isqrt(x))
    while q <= lim:
        if x % q == 0:
            return q
        q += 2
    return x if x <= bound * bound else None


def _sieve_array(limit: int) -> np.ndarray:
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for q in range(2, math.isqrt(limit) + 1):
        if flags[q]:
            flags[q * q::q] = False
    return flags


@dataclass(frozen=True)
class PrimeTable:
    """Primality flags for 0..limit. Immutable once built."""

    limit: int
    flags: np.ndarray

    def __contains__(self, k: int) -> bool:
        return 0 <= k <= self.limit and bool(self.flags[k])

    def is_prime(self, k: int) -> bool:
        if not 0 <= k <= self.limit:
            raise InvalidArgumentError(f"{k} outside table range 0..{self.limit}")
        return bool(self.flags[k])

    def primes(self) -> np.ndarray:
        return np.flatnonzero(self.flags)

    def count(self) -> int:
        return int(np.count_nonzero(self.flags))


def sieve(limit: int, budget: int = DEFAULT_SIEVE_BUDGET) -> PrimeTable:
    if limit < 1:
        raise InvalidArgumentError("sieve limit must be positive")
    if limit > budget:
        raise ResourceLimitError(f"sieve limit {limit} exceeds budget {budget}")
    flags = _sieve_array(limit)
    flags.flags.writeable = False
    return PrimeTable(limit, flags)


def primes_up_to(limit: int) -> list[int]:
    if limit < 2:
        return []
    return np.flatnonzero(_sieve_array(limit)).tolist()


def segment_flags(lo: int, hi: int, base_primes: np.ndarray) -> np.ndarray:
    """Primality flags for the half-open window [lo, hi).

    ``base_primes`` must contain every prime up to isqrt(hi - 1).
    """
    seg = np.ones(hi - lo, dtype=bool)
    for q in base_primes.tolist():
        qq = q * q
        if qq >= hi:
            break
        start = max(qq, -(-lo // q) * q)
        seg[start - lo::q] = False
    if lo < 2:
        seg[: 2 - lo] = False
    return seg


def prime_count(k: int) -> int:
    """Number of primes <= k."""
    return len(primes_up_to(k))


def primorial(k: int) -> int:
    """Product of the first ``k`` primes."""
    if k < 0:
        raise InvalidArgumentError("primorial index must be nonnegative")
    result = 1
    found = 0
    q = 2
    while found < k:
        if is_prime(q):
            result = result * q
            if result > U64_MAX:
                raise ResourceLimitError(f"primorial({k}) overflows 64 bits")
            found += 1
        q += 1
    return result
