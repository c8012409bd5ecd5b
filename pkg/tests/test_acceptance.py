"""Acceptance criteria, one test per criterion.

Each test enforces the criterion's exact tolerance and, where one is
stated, its runtime budget, then prints a single summary line (visible
with -s or in captured output).
"""

import random
import time

from mstd import (
    CONWAY,
    IntSet,
    SearchConfig,
    SequenceSpec,
    append_analysis,
    base_expansion,
    certify_no_mstd,
    classify,
    dilated_conway,
    exhaustive_search,
    is_admissible,
    match_tuple,
    materialize,
    monte_carlo_density,
    sum_diff_counts,
    verify_difference_bound,
)
from mstd.primes import PrimeSieve, PrimeTuple

TUPLE_T = PrimeTuple((0, 60, 90, 120, 210, 330, 360, 420))


def report(name, elapsed, detail):
    print(f"{name} PASS ({elapsed:.3f}s): {detail}", flush=True)


def test_criterion_01_conway_counts():
    conway = IntSet(CONWAY)
    timings = []
    for _ in range(5):
        start = time.perf_counter()
        classify(conway)
        timings.append(time.perf_counter() - start)
    best = min(timings)
    c = classify(conway)
    assert (c.sum_count, c.diff_count) == (26, 25)
    assert c.verdict == "mstd"
    assert c.special is False
    assert best < 1e-3, f"classify took {best * 1e3:.3f} ms, budget 1 ms"
    report("criterion-01", best, "conway classifies 26/25 mstd, under 1 ms")


def test_criterion_02_minimal_size_and_diameter():
    start = time.perf_counter()
    small = exhaustive_search(SearchConfig(ground=IntSet(range(15)), max_size=7))
    assert small.hit_count == 0
    assert small.exhausted

    size8 = exhaustive_search(
        SearchConfig(ground=IntSet(range(15)), min_size=8, max_size=8)
    )
    assert CONWAY in [h.elements for h in size8.hits]

    short = exhaustive_search(SearchConfig(ground=IntSet(range(11))))
    assert short.hit_count == 0
    assert short.exhausted
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0, f"{elapsed:.2f}s, budget 5s"
    report(
        "criterion-02", elapsed,
        "no MSTD set below size 8 in {0..14}, conway at size 8, none in {0..10}",
    )


def test_criterion_03_fibonacci():
    start = time.perf_counter()
    cert = certify_no_mstd(SequenceSpec.fibonacci(), 3, 40)
    assert cert.verdict == "certified-no-mstd"

    terms = materialize(SequenceSpec.fibonacci(), 18)
    enum = exhaustive_search(SearchConfig(ground=IntSet(terms), budget=1 << 18))
    assert enum.exhausted
    assert enum.hit_count == 0
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0, f"{elapsed:.2f}s, budget 60s"
    report(
        "criterion-03", elapsed,
        "fibonacci certified, 2^18 subsets of 18 terms all non-MSTD",
    )


def test_criterion_04_shifted_geometric():
    start = time.perf_counter()
    for c, ratio, d in ((1, 2, 0), (2, 3, 5), (1, 3, 1)):
        spec = SequenceSpec.shifted_geometric(c, ratio, d)
        cert = certify_no_mstd(spec, 3, 40)
        assert cert.verdict == "certified-no-mstd", (c, ratio, d)

        terms = materialize(spec, 18)
        enum = exhaustive_search(
            SearchConfig(ground=IntSet(terms, diameter_cap=None), budget=1 << 18)
        )
        assert enum.exhausted
        assert enum.hit_count == 0, (c, ratio, d)
    elapsed = time.perf_counter() - start
    report(
        "criterion-04", elapsed,
        "three shifted geometrics certified and enumerated clean",
    )


def test_criterion_05_special_construction():
    start = time.perf_counter()
    s3 = base_expansion(IntSet(CONWAY), 3)
    c = classify(s3)
    assert len(s3) == 512
    assert (c.sum_count, c.diff_count) == (17576, 15625)
    assert c.special

    threshold = 2 * s3.total
    for x in (threshold, 6_500_000, 8_000_000):
        assert x >= threshold
        change = append_analysis(s3, x)
        assert change.threshold_met
        assert change.after.verdict == "mstd"
        assert change.before.gap - change.after.gap == len(s3) - 1  # 511
    elapsed = time.perf_counter() - start
    report(
        "criterion-05", elapsed,
        "S3 is (512, 17576, 15625) special; three appends each drop gap by 511",
    )


def test_criterion_06_tuple_t_pipeline():
    start = time.perf_counter()
    adm = is_admissible(TUPLE_T)
    assert adm.admissible
    assert adm.checked_moduli == (2, 3, 5, 7)

    matches = match_tuple(TUPLE_T, 10_000)
    assert 19 in matches.matches

    explicit = dilated_conway(19, 30)
    c = classify(explicit)
    assert c.verdict == "mstd"
    sieve = PrimeSieve(439)
    assert all(e in sieve for e in explicit.elements)
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0, f"{elapsed:.2f}s, budget 5s"
    report(
        "criterion-06", elapsed,
        "T admissible, n=19 matches, 19+30*conway is an MSTD set of primes",
    )


def test_criterion_07_hardy_littlewood_coherence():
    start = time.perf_counter()
    result = match_tuple(PrimeTuple((0, 2)), 1_000_000, rel_tol=1e-3)
    assert 0.9 <= result.ratio <= 1.1, result.ratio
    elapsed = time.perf_counter() - start
    assert elapsed < 30.0, f"{elapsed:.2f}s, budget 30s"
    report(
        "criterion-07", elapsed,
        f"twin count/prediction ratio {result.ratio:.4f} within [0.9, 1.1]",
    )


def test_criterion_08_density():
    start = time.perf_counter()
    result = monte_carlo_density(100, 10_000_000, seed=1)
    assert 2e-4 <= result.density_estimate <= 8e-4, result.density_estimate
    elapsed = time.perf_counter() - start
    assert elapsed < 600.0, f"{elapsed:.2f}s, budget 600s"
    report(
        "criterion-08", elapsed,
        f"density {result.density_estimate:.6f} within [2e-4, 8e-4] at 10^7 samples",
    )


def test_criterion_09_difference_bound_property():
    start = time.perf_counter()
    rng = random.Random(1009)
    for trial in range(1000):
        length = rng.randint(11, 18)
        terms = [rng.randint(0, 3)]
        for _ in range(2):
            terms.append(terms[-1] + rng.randint(1, 4))
        while len(terms) < length:
            terms.append(terms[-1] + terms[-3] + rng.randint(1, 9))

        tail = terms[length - 4 : length - 1]
        body = terms[: length - 4]
        size = rng.randint(8, len(body) + 3)
        chosen = sorted(rng.sample(body, size - 3)) + tail
        result = verify_difference_bound(IntSet(chosen), terms[-1], 3)
        k = len(chosen) + 1
        assert result.hypothesis_applies, trial
        assert result.verdict == "bound-holds", (trial, result)
        assert result.new_diffs >= k + 1 >= result.new_sums, (trial, result)
    elapsed = time.perf_counter() - start
    report(
        "criterion-09", elapsed,
        "1000 random growth instances all satisfy new_diffs >= |S|+1 >= new_sums",
    )


def test_criterion_10_oracle_equivalence():
    start = time.perf_counter()
    rng = random.Random(1010)
    for _ in range(10_000):
        size = rng.randint(1, 20)
        top = rng.randint(size - 1, 512)
        shift = rng.randint(0, 512)
        elems = tuple(
            sorted(shift + e for e in rng.sample(range(top + 1), min(size, top + 1)))
        )
        sums = {a + b for a in elems for b in elems}
        diffs = {a - b for a in elems for b in elems}
        expected = (len(sums), len(diffs))
        assert sum_diff_counts(elems, kernel="bits") == expected, elems
        assert sum_diff_counts(elems, kernel="pairs") == expected, elems
    elapsed = time.perf_counter() - start
    report(
        "criterion-10", elapsed,
        "bit-vector and pair kernels equal the naive oracle on 10^4 random sets",
    )
