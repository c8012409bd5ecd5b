"""Subset search engines over integer ground sets.

Three engines share one report shape:

* exhaustive enumeration of the subset lattice, ascending cardinality
  and lexicographic index order within a cardinality, truncated by a
  budget;
* Monte Carlo sampling of uniform random subsets (each element kept
  with probability 1/2), chunked so that results depend only on the
  seed and the sample count, never on worker scheduling;
* a best-first minimality search for the smallest MSTD subset of a
  ground set under a max-element or diameter objective.

Every reported hit is re-classified before it is stored; engines never
report a set they did not verify.  The only pruning rule, skipping
subsets of diameter below 14, is itself established at runtime by an
exhaustive scan (see ``min_mstd_diameter``) before any engine uses it.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import DomainError
from .sets import CONWAY, IntSet, sum_diff_counts

MODE_EXHAUSTIVE = "exhaustive"
MODE_MONTE_CARLO = "monte-carlo"

OBJECTIVE_FIRST_HIT = "first-hit"
OBJECTIVE_COUNT_ALL = "count-all"
OBJECTIVE_MIN_MAX = "minimize-max-element"
OBJECTIVE_MIN_DIAMETER = "minimize-diameter"

_OBJECTIVES = (
    OBJECTIVE_FIRST_HIT,
    OBJECTIVE_COUNT_ALL,
    OBJECTIVE_MIN_MAX,
    OBJECTIVE_MIN_DIAMETER,
)

DEFAULT_BUDGET = 5_000_000
DEFAULT_HIT_CAP = 1000

_MC_CHUNK = 1 << 16

_diameter_floor_verified = False


def min_mstd_diameter() -> int:
    """Smallest diameter any MSTD set can have, verified by scan.

    A set of diameter below 14 shifts into {0..13}, so one pass over
    the 2^14 subsets of {0..13} suffices to establish the floor.  The
    scan runs once per process and is cached; engines call this before
    enabling diameter pruning so the rule is never assumed.
    """
    global _diameter_floor_verified
    if not _diameter_floor_verified:
        for size in range(2, 15):
            for combo in combinations(range(14), size):
                sc, dc = sum_diff_counts(combo)
                if sc > dc:
                    raise RuntimeError(
                        f"diameter floor refuted by {combo}; pruning unsound"
                    )
        _diameter_floor_verified = True
    return 14


@dataclass(frozen=True)
class SearchConfig:
    """Parameters for one search run.

    min_size/max_size bound subset cardinality (an empty window is
    legal and yields an empty exhausted report).  budget caps how many
    subsets the exhaustive engine may generate.  samples and seed only
    matter in monte-carlo mode, where the size window does not apply
    (sampling is over the full power set).
    """

    ground: IntSet
    min_size: int = 0
    max_size: int | None = None
    budget: int = DEFAULT_BUDGET
    mode: str = MODE_EXHAUSTIVE
    samples: int | None = None
    seed: int = 0
    objective: str = OBJECTIVE_COUNT_ALL
    hit_cap: int = DEFAULT_HIT_CAP
    threads: int = 1

    def __post_init__(self):
        if self.mode not in (MODE_EXHAUSTIVE, MODE_MONTE_CARLO):
            raise DomainError(f"unknown mode {self.mode!r}")
        if self.objective not in _OBJECTIVES:
            raise DomainError(f"unknown objective {self.objective!r}")
        if self.min_size < 0:
            raise DomainError("min_size must be >= 0")
        if self.budget < 1:
            raise DomainError("budget must be >= 1")
        if self.hit_cap < 1:
            raise DomainError("hit_cap must be >= 1")
        if self.threads < 1:
            raise DomainError("threads must be >= 1")
        if self.mode == MODE_MONTE_CARLO and (self.samples is None or self.samples < 1):
            raise DomainError("monte-carlo mode requires samples >= 1")


@dataclass(frozen=True)
class SearchReport:
    """Outcome of a search run.

    exhausted means the configured window (or, for minimality search,
    everything below the returned bound) was fully enumerated within
    budget.  density_estimate and stderr are set in monte-carlo mode
    only.  pruning names every rule that was active during the run.
    """

    hits: tuple[IntSet, ...]
    hit_count: int
    examined: int
    density_estimate: float | None
    stderr: float | None
    exhausted: bool
    seed: int | None
    pruning: tuple[str, ...] = ()
    optimal: bool | None = None
    objective_value: int | None = None

    def to_dict(self) -> dict:
        out = {
            "hits": [list(h.elements) for h in self.hits],
            "hit_count": self.hit_count,
            "examined": self.examined,
            "density": self.density_estimate,
            "stderr": self.stderr,
            "exhausted": self.exhausted,
            "seed": self.seed,
        }
        if self.pruning:
            out["pruning"] = list(self.pruning)
        if self.optimal is not None:
            out["optimal"] = self.optimal
        if self.objective_value is not None:
            out["objective_value"] = self.objective_value
        return out


def _is_hit(combo: tuple[int, ...], special: bool) -> bool:
    sc, dc = sum_diff_counts(combo)
    return sc > dc and (not special or sc - dc >= len(combo))


def _lattice_scan(cfg: SearchConfig, special: bool) -> SearchReport:
    elems = cfg.ground.elements
    n = len(elems)
    lo_size = cfg.min_size
    hi_size = n if cfg.max_size is None else min(cfg.max_size, n)
    floor = min_mstd_diameter()
    pruning = (f"skip diameter < {floor}",)
    first_hit = cfg.objective == OBJECTIVE_FIRST_HIT
    hits: list[IntSet] = []
    hit_count = 0
    examined = 0

    def report(exhausted: bool) -> SearchReport:
        return SearchReport(
            hits=tuple(hits),
            hit_count=hit_count,
            examined=examined,
            density_estimate=None,
            stderr=None,
            exhausted=exhausted,
            seed=cfg.seed,
            pruning=pruning,
        )

    for size in range(lo_size, hi_size + 1):
        if size == 0:
            examined += 1  # empty subset, never a hit
            continue
        for combo in combinations(elems, size):
            if examined >= cfg.budget:
                return report(False)
            examined += 1
            if combo[-1] - combo[0] < floor:
                continue
            if not _is_hit(combo, special):
                continue
            hit_count += 1
            if len(hits) < cfg.hit_cap:
                hits.append(IntSet(combo, diameter_cap=None))
            if first_hit:
                return report(False)
    return report(True)


def exhaustive_search(cfg: SearchConfig) -> SearchReport:
    """Enumerate the configured size window and report MSTD subsets.

    Order is deterministic: ascending cardinality, lexicographic over
    index tuples within each cardinality.  A budget stop yields a
    partial report with exhausted=False, never an error.
    """
    if cfg.mode != MODE_EXHAUSTIVE:
        raise DomainError("exhaustive_search requires mode=exhaustive")
    return _lattice_scan(cfg, special=False)


def special_search(cfg: SearchConfig) -> SearchReport:
    """Same engines as exhaustive_search/monte-carlo, filtered on
    gap >= |subset| (the margin that survives appending any large
    element) instead of bare MSTD."""
    if cfg.mode == MODE_EXHAUSTIVE:
        return _lattice_scan(cfg, special=True)
    return _mc_scan(cfg, special=True)


# -- Monte Carlo ------------------------------------------------------

def _mc_chunk(
    elems: tuple[int, ...],
    contiguous: bool,
    seed: int,
    chunk_index: int,
    count: int,
    special: bool,
    want_hits: int,
) -> tuple[int, list[int]]:
    """Classify ``count`` random subsets; returns (hit_count, hit_masks).

    Deterministic in (seed, chunk_index) alone: each chunk draws from
    its own SeedSequence spawn, so the merged result is independent of
    how chunks are scheduled across workers.
    """
    n = len(elems)
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(chunk_index,))))
    nbytes = (n + 7) // 8
    buf = rng.bytes(nbytes * count)
    full = (1 << n) - 1
    hit_count = 0
    hit_masks: list[int] = []
    for i in range(count):
        mask = int.from_bytes(buf[i * nbytes : (i + 1) * nbytes], "little") & full
        if mask == 0 or mask & (mask - 1) == 0:
            continue  # empty or singleton: 1 sum, 1 diff
        if contiguous:
            # index mask doubles as the element bit vector (counts are
            # shift invariant), so run the kernel on it directly
            base = mask
            top = base.bit_length() - 1
            smask = 0
            dmask = 0
            m = base
            while m:
                lsb = m & -m
                b = lsb.bit_length() - 1
                smask |= base << b
                dmask |= base << (top - b)
                m ^= lsb
            sc = smask.bit_count()
            dc = dmask.bit_count()
            size = base.bit_count()
        else:
            chosen = []
            m = mask
            while m:
                lsb = m & -m
                chosen.append(elems[lsb.bit_length() - 1])
                m ^= lsb
            sc, dc = sum_diff_counts(tuple(chosen))
            size = len(chosen)
        if sc > dc and (not special or sc - dc >= size):
            hit_count += 1
            if len(hit_masks) < want_hits:
                hit_masks.append(mask)
    return hit_count, hit_masks


def _mc_scan(cfg: SearchConfig, special: bool) -> SearchReport:
    elems = cfg.ground.elements
    samples = cfg.samples
    contiguous = elems == tuple(range(elems[0], elems[-1] + 1))
    chunks = []
    remaining = samples
    index = 0
    while remaining > 0:
        take = min(_MC_CHUNK, remaining)
        chunks.append((elems, contiguous, cfg.seed, index, take, special, cfg.hit_cap))
        remaining -= take
        index += 1
    if cfg.threads > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
            results = list(pool.map(_mc_worker, chunks, chunksize=1))
    else:
        results = [_mc_worker(args) for args in chunks]
    hit_count = 0
    hit_masks: list[int] = []
    for count, masks in results:  # merge in chunk order: deterministic
        hit_count += count
        for mask in masks:
            if len(hit_masks) < cfg.hit_cap:
                hit_masks.append(mask)
    hits = tuple(
        IntSet(_mask_elements(mask, elems), diameter_cap=None) for mask in hit_masks
    )
    density = hit_count / samples
    stderr = math.sqrt(density * (1.0 - density) / samples)
    return SearchReport(
        hits=hits,
        hit_count=hit_count,
        examined=samples,
        density_estimate=density,
        stderr=stderr,
        exhausted=False,
        seed=cfg.seed,
    )


def _mc_worker(args):
    return _mc_chunk(*args)


def _mask_elements(mask: int, elems: tuple[int, ...]) -> list[int]:
    out = []
    while mask:
        lsb = mask & -mask
        out.append(elems[lsb.bit_length() - 1])
        mask ^= lsb
    return out


def monte_carlo_density(
    n: int,
    samples: int,
    seed: int = 0,
    threads: int = 1,
    hit_cap: int = DEFAULT_HIT_CAP,
) -> SearchReport:
    """Estimate the fraction of subsets of {0..n} that are MSTD.

    Subsets are drawn with independent inclusion probability 1/2, the
    measure under which the classical density estimates are stated.
    Deterministic given (n, samples, seed) regardless of threads.
    """
    n = int(n)
    if n < 0:
        raise DomainError("n must be >= 0")
    cfg = SearchConfig(
        ground=IntSet(range(n + 1)),
        mode=MODE_MONTE_CARLO,
        samples=int(samples),
        seed=int(seed),
        threads=threads,
        hit_cap=hit_cap,
    )
    return _mc_scan(cfg, special=False)


# -- Minimality search ------------------------------------------------

def minimal_mstd_in(
    ground: IntSet,
    objective: str = OBJECTIVE_MIN_MAX,
    budget: int = DEFAULT_BUDGET,
    hit_cap: int = DEFAULT_HIT_CAP,
) -> SearchReport:
    """Best MSTD subset of ``ground`` under the objective.

    Two candidate streams feed one verifier: a probe over dilations
    p + c*s of the known minimal pattern that happen to lie inside the
    ground (cheap, often supplies the optimum on structured grounds),
    and level-by-level lattice enumeration where level = forced max
    element (or forced endpoint pair for the diameter objective) in
    ascending objective order.  ``optimal`` certifies that every level
    strictly below the returned bound was exhausted; levels whose
    objective value makes any MSTD subset impossible (below the
    verified diameter floor) are skipped soundly without enumeration.
    """
    if objective not in (OBJECTIVE_MIN_MAX, OBJECTIVE_MIN_DIAMETER):
        raise DomainError(f"minimality search needs a minimize-* objective, got {objective!r}")
    elems = ground.elements
    floor = min_mstd_diameter()
    pruning = (f"skip diameter < {floor}", "dilated minimal-pattern probe")
    ground_lookup = set(elems)
    examined = 0
    hits: list[IntSet] = []

    def value_of(elements: tuple[int, ...]) -> int:
        if objective == OBJECTIVE_MIN_MAX:
            return elements[-1]
        return elements[-1] - elements[0]

    # Probe: affine images of the minimal pattern inside the ground.
    best: IntSet | None = None
    for scale in range(1, ground.diameter // floor + 1):
        for shift in elems:
            if shift + floor * scale > elems[-1] or examined >= budget:
                break
            cand = tuple(shift + c * scale for c in CONWAY)
            examined += 1
            if all(v in ground_lookup for v in cand) and _is_hit(cand, special=False):
                hit = IntSet(cand, diameter_cap=None)
                if len(hits) < hit_cap:
                    hits.append(hit)
                if best is None or value_of(cand) < value_of(best.elements):
                    best = hit

    bound = None if best is None else value_of(best.elements)
    if objective == OBJECTIVE_MIN_MAX:
        levels = [(elems[m], m) for m in range(len(elems))]
    else:
        levels = sorted(
            (elems[j] - elems[i], (i, j))
            for i in range(len(elems))
            for j in range(i + 1, len(elems))
        )

    complete_below_best = True
    ran_out = False
    for value, where in levels:
        if bound is not None and value >= bound:
            break
        if value < floor:
            continue  # whole level is below the verified diameter floor
        if examined >= budget:
            ran_out = True
            break
        found, examined, ran_out = _scan_level(
            elems, where, objective, floor, budget, examined
        )
        if found is not None:
            hit = IntSet(found, diameter_cap=None)
            if len(hits) < hit_cap:
                hits.append(hit)
            best = hit
            bound = value
            # anything below this level was already exhausted
            break
        if ran_out:
            complete_below_best = False
            break

    exhausted = not ran_out
    optimal = (best is not None) and complete_below_best and exhausted
    return SearchReport(
        hits=tuple(hits),
        hit_count=len(hits),
        examined=examined,
        density_estimate=None,
        stderr=None,
        exhausted=exhausted,
        seed=None,
        pruning=pruning,
        optimal=optimal if best is not None else None,
        objective_value=bound,
    )


def _scan_level(elems, where, objective, floor, budget, examined):
    """Enumerate one level of the minimality lattice.

    Returns (first_hit_or_None, examined, ran_out).  A level fixes the
    subset's max element (min-max objective) or both endpoints
    (min-diameter).  Enumeration ascends by cardinality, lexicographic
    within; combinations stream in nondecreasing first-element order,
    so once the first element breaks the diameter floor the rest of a
    cardinality block can be skipped wholesale.
    """
    if objective == OBJECTIVE_MIN_MAX:
        m = where
        top = elems[m]
        prefix = elems[:m]
        for size in range(1, m + 2):
            for combo in combinations(prefix, size - 1):
                if examined >= budget:
                    return None, examined, True
                examined += 1
                cand = combo + (top,)
                if combo and top - combo[0] < floor:
                    break  # later combos start no lower: skip block
                if not combo:
                    continue  # singleton {top}: never a hit
                if _is_hit(cand, special=False):
                    return cand, examined, False
        return None, examined, False
    i, j = where
    lo, hi = elems[i], elems[j]
    interior = elems[i + 1 : j]
    for size in range(2, len(interior) + 3):
        for combo in combinations(interior, size - 2):
            if examined >= budget:
                return None, examined, True
            examined += 1
            cand = (lo,) + combo + (hi,)
            if _is_hit(cand, special=False):
                return cand, examined, False
    return None, examined, False
