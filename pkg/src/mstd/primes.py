"""Prime machinery: sieve, tuple admissibility, singular series,
constellation matching, and prime arithmetic progressions.

The pipeline that motivates this module: pick the offset tuple
T = 30 * {0,2,3,4,7,11,12,14} \\ {0} joined with 0 (i.e. the minimal
MSTD pattern dilated by 30), verify T is admissible, scan for shifts n
with every n + b prime, and each match yields an 8-element MSTD set
consisting entirely of primes.  Admissibility plus the singular series
also power the standard tuple-density prediction used to sanity-check
the scan counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .errors import CapacityError, DomainError
from .sets import CONWAY, IntSet

# np.bool_ flags: 1 byte per integer; 2**27 is 128 MiB, a sane guard.
_SIEVE_LIMIT_CAP = 1 << 27

_MATCH_CAP = 1000


def _small_primes(limit: int) -> list[int]:
    """Primes <= limit by a plain vectorized sieve (small limits only)."""
    if limit < 2:
        return []
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return [int(p) for p in np.flatnonzero(flags)]


class PrimeSieve:
    """Boolean prime table on [0, limit] with O(1) membership.

    Marking walks the table in cache-sized segments.  A limit below 2
    yields an empty (but valid) sieve rather than an error.
    """

    __slots__ = ("limit", "flags")

    def __init__(self, limit: int):
        limit = int(limit)
        if limit > _SIEVE_LIMIT_CAP:
            raise CapacityError(f"sieve limit {limit} exceeds cap {_SIEVE_LIMIT_CAP}")
        self.limit = limit
        flags = np.zeros(max(limit + 1, 0), dtype=bool)
        if limit >= 2:
            flags[2:] = True
            base = _small_primes(math.isqrt(limit))
            segment = 1 << 20
            for lo in range(2, limit + 1, segment):
                hi = min(lo + segment, limit + 1)
                for p in base:
                    start = max(p * p, ((lo + p - 1) // p) * p)
                    if start < hi:
                        flags[start:hi:p] = False
        self.flags = flags

    def __contains__(self, n) -> bool:
        n = int(n)
        return 0 <= n <= self.limit and bool(self.flags[n])

    def primes(self) -> np.ndarray:
        return np.flatnonzero(self.flags)

    def count(self) -> int:
        return int(self.flags.sum())


def sieve(limit: int) -> PrimeSieve:
    """Membership oracle plus prime list up to ``limit``."""
    return PrimeSieve(limit)


@dataclass(frozen=True)
class PrimeTuple:
    """Offset pattern (b_1, ..., b_m), stored sorted with b_1 = 0."""

    offsets: tuple[int, ...]

    def __post_init__(self):
        if not self.offsets:
            raise DomainError("tuple needs at least one offset")
        offs = sorted(int(b) for b in self.offsets)
        for a, b in zip(offs, offs[1:]):
            if a == b:
                raise DomainError(f"duplicate offset {a}")
        base = offs[0]
        object.__setattr__(self, "offsets", tuple(b - base for b in offs))

    @property
    def m(self) -> int:
        return len(self.offsets)

    @property
    def spread(self) -> int:
        return self.offsets[-1]


@dataclass(frozen=True)
class AdmissibilityResult:
    admissible: bool
    witness_modulus: int | None
    checked_moduli: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "admissible": self.admissible,
            "witness_modulus": self.witness_modulus,
            "checked_moduli": list(self.checked_moduli),
        }


def is_admissible(t: PrimeTuple) -> AdmissibilityResult:
    """Does the tuple avoid covering all residues mod every k >= 2?

    Only prime moduli p <= m need checking: a composite modulus is
    covered only if each of its prime factors is, and m offsets occupy
    at most m classes, so any p > m has a free class automatically.
    """
    checked = []
    for p in _small_primes(t.m):
        checked.append(p)
        if len({b % p for b in t.offsets}) == p:
            return AdmissibilityResult(False, p, tuple(checked))
    return AdmissibilityResult(True, None, tuple(checked))


@dataclass(frozen=True)
class SingularSeries:
    """Truncated product over primes of (p/(p-1))^(m-1) * (p-v)/(p-1).

    v = v(p) is the number of distinct offset residues mod p.  Beyond
    the offset spread v = m exactly, so the log of the tail is bounded
    by sum of m^2/p^2 < m^2/(P-1); truncation_prime P is chosen to push
    that bound below the requested relative tolerance.
    """

    value: float
    truncation_prime: int
    tail_bound: float
    per_prime_v: dict

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "truncation_prime": self.truncation_prime,
            "tail_bound": self.tail_bound,
            "per_prime_v": {str(p): v for p, v in self.per_prime_v.items()},
        }


def singular_series(t: PrimeTuple, rel_tol: float = 1e-3) -> SingularSeries:
    """Numeric value of the tuple's density constant to ``rel_tol``.

    Zero is exact, not approximate: the value vanishes iff some prime
    p <= m is fully covered, which is checked first and short-circuits.
    """
    if not 0 < rel_tol <= 0.1:
        raise DomainError(f"rel_tol must be in (0, 0.1], got {rel_tol}")
    m = t.m
    per_prime_v = {}
    for p in _small_primes(m):
        v = len({b % p for b in t.offsets})
        per_prime_v[p] = v
        if v == p:
            return SingularSeries(0.0, p, 0.0, per_prime_v)
    if m == 1:
        return SingularSeries(1.0, 2, 0.0, per_prime_v)
    cutoff = max(t.spread + 1, 2 * m + 2, int(m * m / rel_tol) + 2)
    value = 1.0
    for p in _small_primes(cutoff):
        v = len({b % p for b in t.offsets}) if p <= t.spread else m
        value *= (p / (p - 1)) ** (m - 1) * (p - v) / (p - 1)
    return SingularSeries(value, cutoff, m * m / (cutoff - 1), per_prime_v)


def _log_power_integral(x: int, m: int) -> float:
    """Numeric integral of du / (log u)^m from 2 to x."""
    if x <= 2:
        return 0.0
    result, _ = quad(lambda u: math.log(u) ** (-m), 2, x, epsrel=1e-6, limit=200)
    return result


@dataclass(frozen=True)
class MatchReport:
    """Scan outcome for one tuple up to x.

    count is exact (every n in [1, x] with all n + b_i prime); matches
    lists the first ones up to a cap; predicted is the singular series
    times the integral of du/(log u)^m; ratio is count/predicted, None
    when the prediction is zero.
    """

    x: int
    count: int
    matches: tuple[int, ...]
    predicted: float
    ratio: float | None
    series: SingularSeries

    def to_dict(self) -> dict:
        return {
            "x": self.x,
            "count": self.count,
            "matches": list(self.matches),
            "predicted": self.predicted,
            "ratio": self.ratio,
            "series_value": self.series.value,
        }


def match_tuple(
    t: PrimeTuple,
    x: int,
    rel_tol: float = 1e-3,
    match_cap: int = _MATCH_CAP,
) -> MatchReport:
    """Count shifts n <= x with n + b prime for every offset b.

    The scan ANDs shifted views of one sieve table, so cost is a few
    vector passes over x booleans.  Shifts n, not primes, are counted;
    with b_1 normalized to 0 every match n is itself prime.
    """
    x = int(x)
    series = singular_series(t, rel_tol)
    if x < 2:
        return MatchReport(x=x, count=0, matches=(), predicted=0.0, ratio=None, series=series)
    table = PrimeSieve(x + t.spread)
    flags = table.flags
    acc = flags[1 : x + 1].copy()
    for b in t.offsets[1:]:
        acc &= flags[1 + b : x + 1 + b]
    count = int(acc.sum())
    matches = tuple(int(n) for n in (np.flatnonzero(acc) + 1)[:match_cap])
    predicted = series.value * _log_power_integral(x, t.m)
    ratio = count / predicted if predicted > 0 else None
    return MatchReport(
        x=x, count=count, matches=matches, predicted=predicted, ratio=ratio, series=series
    )


def dilated_conway(p: int, s: int) -> IntSet:
    """{p + c*s : c in the minimal MSTD pattern}; MSTD for all p >= 0, s >= 1.

    Sum and difference counts are invariant under x -> p + s*x, so the
    image always classifies MSTD with the same 26/25 census.
    """
    p, s = int(p), int(s)
    if p < 0:
        raise DomainError(f"shift must be nonnegative, got {p}")
    if s < 1:
        raise DomainError(f"dilation factor must be >= 1, got {s}")
    return IntSet((p + c * s for c in CONWAY), diameter_cap=None)


def find_prime_ap(
    length: int,
    start_bound: int,
    max_diff: int | None = None,
) -> tuple[int, int] | None:
    """Smallest-first-term AP of ``length`` primes with first term <= start_bound.

    The difference scan is restricted to multiples of the product of
    primes q <= length with q != first term: for any other q, some term
    p + k*d would be divisible by q.  A prime first term p < length is
    impossible outright (the term p + p*d = p(1+d) is composite), so
    such starts are skipped.  Every candidate is still verified against
    the sieve; the modulus rule only narrows the search.  Returns None
    when no AP exists within the bounds (a normal outcome).
    """
    length = int(length)
    bound = int(start_bound)
    if length < 1:
        raise DomainError(f"AP length must be >= 1, got {length}")
    if bound < 2:
        return None
    if length == 1:
        table = PrimeSieve(bound)
        first = next((int(p) for p in table.primes()), None)
        return None if first is None else (first, 0)
    small = _small_primes(length)
    primorial = math.prod(small)
    if max_diff is None:
        headroom = (_SIEVE_LIMIT_CAP - bound) // (length - 1)
        max_diff = max(min(100 * primorial, headroom), primorial)
    max_diff = int(max_diff)
    limit = bound + (length - 1) * max_diff
    table = PrimeSieve(limit)  # capacity-checked by the sieve itself
    flags = table.flags
    for p in table.primes():
        p = int(p)
        if p > bound:
            break
        if p < length:
            continue
        modulus = math.prod(q for q in small if q != p)
        for d in range(modulus, max_diff + 1, modulus):
            if p + (length - 1) * d > limit:
                break
            if all(flags[p + k * d] for k in range(1, length)):
                return (p, d)
    return None


def mstd_in_ap(ap: tuple[int, int, int]) -> IntSet:
    """Embed the minimal MSTD pattern in an arithmetic progression.

    ap = (first, difference, length); the pattern's offsets reach 14,
    so the progression must have at least 15 terms.  When ap is a prime
    AP the result is an MSTD set consisting entirely of primes.
    """
    first, diff, length = (int(v) for v in ap)
    if length < 15:
        raise DomainError(f"AP length {length} < 15: the pattern needs offsets up to 14")
    if first < 0:
        raise DomainError(f"AP first term must be nonnegative, got {first}")
    if diff < 1:
        raise DomainError(f"AP difference must be >= 1, got {diff}")
    return IntSet((first + c * diff for c in CONWAY), diameter_cap=None)
