"""Bounded search for arithmetic progressions of primes.

The search returns the progression minimizing (d, p) lexicographically
inside the budget. Two facts keep it tractable:

* If a prime q <= len does not divide d, the first q terms cover every
  residue class mod q, so one of them equals q and p <= q <= len.
* If p < len, the term p + p*d = p(1 + d) is composite.

Together these force d to be a multiple of the product of primes below
len, and either d is also divisible by len (when len is prime) or p == len.
Only those differences are visited unless ``shortcut=False``.
"""
from __future__ import annotations

import logging
import math
import os
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InvalidArgumentError, PrimeLabelError, ResourceLimitError
from .primes import (U64_MAX, checked_add, checked_mul, is_prime, primes_up_to,
                     segment_flags)

log = logging.getLogger(__name__)

DEFAULT_MAX_D = 10**7
DEFAULT_MAX_P = 10**9
SEGMENT = 1 << 22

CACHE_ENV = "PRIMELABEL_AP_CACHE"


@dataclass(frozen=True)
class PrimeAP:
    """Primes p, p+d, ..., p+(len-1)d. Construct through ``validate_ap``."""

    p: int
    d: int
    len: int

    def term(self, k: int) -> int:
        return self.p + k * self.d

    def terms(self) -> list[int]:
        return [self.term(k) for k in range(self.len)]

    def as_dict(self) -> dict:
        return {"p": self.p, "d": self.d, "len": self.len}


@dataclass(frozen=True)
class SearchBudget:
    max_d: int = DEFAULT_MAX_D
    max_p: int = DEFAULT_MAX_P
    time_limit: float | None = None

    def __post_init__(self):
        if self.max_d < 1 or self.max_p < 1:
            raise InvalidArgumentError("search bounds must be positive")
        if self.time_limit is not None and self.time_limit <= 0:
            raise InvalidArgumentError("time limit must be positive")


class SearchExhausted(PrimeLabelError):
    """No progression exists inside the budget that was searched."""

    def __init__(self, length, budget, p_gt_d=False, timed_out=False):
        self.length = length
        self.budget = budget
        self.p_gt_d = p_gt_d
        self.timed_out = timed_out
        why = "time limit reached" if timed_out else "budget exhausted"
        super().__init__(
            f"no {length}-term prime AP{' with p > d' if p_gt_d else ''} "
            f"with d <= {budget.max_d}, p <= {budget.max_p} ({why})")

    def as_dict(self) -> dict:
        return {"len": self.length, "p_gt_d": self.p_gt_d, "max_d": self.budget.max_d,
                "max_p": self.budget.max_p, "time_limit": self.budget.time_limit,
                "timed_out": self.timed_out}


class InvalidAP(PrimeLabelError, ValueError):
    def __init__(self, p, d, length, failing):
        self.failing = failing
        super().__init__(f"({p}, {d}, {length}) is not a prime AP; composite at indices {failing}")


def ap_failures(p: int, d: int, length: int) -> list[int]:
    """Indices k with p + k*d not prime."""
    if length < 1:
        raise InvalidArgumentError("AP length must be >= 1")
    if p < 1:
        raise InvalidArgumentError("first term must be positive")
    if d < 1:
        raise InvalidArgumentError("common difference must be positive")
    checked_add(p, checked_mul(length - 1, d))
    return [k for k in range(length) if not is_prime(p + k * d)]


def validate_ap(p: int, d: int, length: int) -> PrimeAP:
    """Return a verified PrimeAP or raise InvalidAP listing composite indices."""
    failing = ap_failures(p, d, length)
    if failing:
        raise InvalidAP(p, d, length, failing)
    return PrimeAP(p, d, length)


# -- search -----------------------------------------------------------------

class _Deadline:
    def __init__(self, seconds):
        self.at = None if seconds is None else time.monotonic() + seconds

    def expired(self):
        return self.at is not None and time.monotonic() > self.at


class _Timeout(Exception):
    pass


class _BasePrimes:
    """Sieving primes, grown on demand so huge budgets cost nothing up front."""

    def __init__(self):
        self._lock = threading.Lock()
        self._limit = 0
        self._primes = np.zeros(0, dtype=np.int64)

    def upto(self, hi):
        root = math.isqrt(hi) + 1
        with self._lock:
            if root > self._limit:
                self._limit = max(root, 2 * self._limit)
                self._primes = np.array(primes_up_to(self._limit), dtype=np.int64)
            return self._primes


def _min_p_for_d(d, length, lo, hi, base, deadline):
    """Smallest p in [lo, hi] with p, p+d, ..., p+(length-1)d all prime."""
    span = (length - 1) * d
    a = lo
    while a <= hi:
        if deadline.expired():
            raise _Timeout
        b = min(a + SEGMENT, hi + 1)
        w = b - a
        if span <= 4 * SEGMENT:
            flags = segment_flags(a, b + span, base.upto(b + span))
            ok = flags[:w].copy()
            for k in range(1, length):
                ok &= flags[k * d:k * d + w]
                if not ok.any():
                    break
        else:
            # wide spans: sieve each shifted window separately
            primes = base.upto(b + span)
            ok = segment_flags(a, b, primes)
            for k in range(1, length):
                if not ok.any():
                    break
                ok &= segment_flags(a + k * d, b + k * d, primes)
        hits = np.flatnonzero(ok)
        for h in hits.tolist():
            p = a + h
            # the sieve proposes; the deterministic test decides
            if not ap_failures(p, d, length):
                return p
        a = b
    return None


def _candidate_ds(length, start, max_d, shortcut):
    if not shortcut:
        for d in range(start, max_d + 1):
            yield d, None
        return
    below = 1
    for q in primes_up_to(length - 1):
        below *= q
    full = below * length if is_prime(length) else below
    d = max(below, -(-start // below) * below)
    while d <= max_d:
        # d not divisible by `full` admits only p == length
        yield d, None if d % full == 0 else length
        d += below


def _search(length, budget, min_p, p_gt_d, workers, shortcut):
    if length < 1:
        raise InvalidArgumentError("AP length must be >= 1")
    if min_p < 1:
        raise InvalidArgumentError("min_p must be positive")
    max_term = budget.max_p + (length - 1) * budget.max_d
    if max_term > U64_MAX:
        raise ResourceLimitError("search bounds allow terms beyond 64 bits")
    base = _BasePrimes()
    deadline = _Deadline(budget.time_limit)
    start_d = 2 if p_gt_d else 1

    def solve(item):
        d, only = item
        lo = max(min_p, d + 1) if p_gt_d else min_p
        if only is not None:
            if lo <= only <= budget.max_p and not ap_failures(only, d, length):
                return only
            return None
        if lo > budget.max_p:
            return None
        return _min_p_for_d(d, length, lo, budget.max_p, base, deadline)

    cands = _candidate_ds(length, start_d, budget.max_d, shortcut)
    try:
        if workers <= 1:
            for item in cands:
                if deadline.expired():
                    raise _Timeout
                p = solve(item)
                if p is not None:
                    return validate_ap(p, item[0], length)
        else:
            with ThreadPoolExecutor(workers) as pool:
                while True:
                    batch = [item for _, item in zip(range(workers), cands)]
                    if not batch:
                        break
                    # a batch is a run of consecutive candidate ds; its first hit is the global minimum
                    for item, p in zip(batch, pool.map(solve, batch)):
                        if p is not None:
                            return validate_ap(p, item[0], length)
    except _Timeout:
        raise SearchExhausted(length, budget, p_gt_d, timed_out=True) from None
    raise SearchExhausted(length, budget, p_gt_d)


def find_ap(length: int, budget: SearchBudget | None = None, min_p: int = 1,
            workers: int = 1, shortcut: bool = True) -> PrimeAP:
    """Lexicographically-(d, p) smallest prime AP of ``length`` terms.

    Raises SearchExhausted if none exists within ``budget``.
    """
    return _search(length, budget or SearchBudget(), min_p, False, workers, shortcut)


def find_ap_with_p_gt_d(length: int, budget: SearchBudget | None = None,
                        workers: int = 1, shortcut: bool = True) -> PrimeAP:
    """As ``find_ap`` but only progressions with p > d >= 2.

    These are the ones usable by the windowed K_{m,n} construction: the
    first B-label p - d stays positive and cannot collide with a multiple of d.
    """
    return _search(length, budget or SearchBudget(), 1, True, workers, shortcut)


# -- on-disk cache ----------------------------------------------------------

def default_cache_path() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    root = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(root) / "primelabel" / "ap_cache.txt"


class APCache:
    """Text file of ``len flag p d`` records, re-validated on every load."""

    def __init__(self, path: Path | str | None = None):
        self.path = Path(path) if path is not None else default_cache_path()

    def load(self) -> dict[tuple[int, bool], PrimeAP]:
        entries = {}
        try:
            text = self.path.read_text()
        except FileNotFoundError:
            return entries
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                length, flag, p, d = (int(t) for t in line.split())
                if flag not in (0, 1) or (flag and not p > d >= 2):
                    raise ValueError("bad flag")
                entries[(length, bool(flag))] = validate_ap(p, d, length)
            except (ValueError, PrimeLabelError) as exc:
                log.warning("ignoring corrupt AP cache line %d in %s: %s", lineno, self.path, exc)
        return entries

    def get(self, length: int, p_gt_d: bool, budget: SearchBudget) -> PrimeAP | None:
        ap = self.load().get((length, p_gt_d))
        if ap is not None and ap.d <= budget.max_d and ap.p <= budget.max_p:
            return ap
        return None

    def put(self, ap: PrimeAP, p_gt_d: bool) -> None:
        entries = self.load()
        entries[(ap.len, p_gt_d)] = ap
        self.path.parent.mkdir(parents=True, exist_ok=True)
        lines = [f"{k[0]} {int(k[1])} {v.p} {v.d}" for k, v in sorted(entries.items())]
        tmp = self.path.with_suffix(self.path.suffix + ".tmp")
        tmp.write_text("\n".join(lines) + "\n")
        os.replace(tmp, self.path)


def find_ap_cached(length: int, p_gt_d: bool, budget: SearchBudget | None = None,
                   cache: APCache | None = None, workers: int = 1) -> PrimeAP:
    budget = budget or SearchBudget()
    if cache is not None:
        hit = cache.get(length, p_gt_d, budget)
        if hit is not None:
            return hit
    if p_gt_d:
        ap = find_ap_with_p_gt_d(length, budget, workers=workers)
    else:
        ap = find_ap(length, budget, workers=workers)
    if cache is not None:
        cache.put(ap, p_gt_d)
    return ap
