"""Exhaustive enumeration, Monte Carlo density, minimality search."""

import itertools
import random

import pytest

from mstd import (
    CONWAY,
    DomainError,
    IntSet,
    PrimeSieve,
    SearchConfig,
    SequenceSpec,
    base_expansion,
    classify,
    exhaustive_search,
    materialize,
    min_mstd_diameter,
    minimal_mstd_in,
    monte_carlo_density,
    special_search,
    sum_diff_counts,
)

GROUND_15 = IntSet(range(15))


def naive_mstd(elements):
    sums = {a + b for a in elements for b in elements}
    diffs = {a - b for a in elements for b in elements}
    return len(sums) > len(diffs)


def test_minimal_diameter_is_fourteen():
    assert min_mstd_diameter() == 14


# -- exhaustive engine -------------------------------------------------

def test_no_mstd_below_size_eight():
    report = exhaustive_search(SearchConfig(ground=GROUND_15, max_size=7))
    assert report.hit_count == 0
    assert report.exhausted
    assert report.examined == sum(1 for k in range(8) for _ in itertools.combinations(range(15), k))


def test_size_eight_hits_match_naive_enumeration():
    report = exhaustive_search(
        SearchConfig(ground=GROUND_15, min_size=8, max_size=8)
    )
    expected = [
        combo
        for combo in itertools.combinations(range(15), 8)
        if naive_mstd(combo)
    ]
    assert [h.elements for h in report.hits] == expected
    assert CONWAY in [h.elements for h in report.hits]
    assert report.hit_count == len(expected) == 2


def test_short_ground_has_no_hits():
    report = exhaustive_search(SearchConfig(ground=IntSet(range(8))))
    assert report.hit_count == 0
    assert report.exhausted
    assert report.examined == 256


def test_empty_size_window():
    report = exhaustive_search(SearchConfig(ground=IntSet(range(5)), min_size=9))
    assert report.hit_count == 0
    assert report.examined == 0
    assert report.exhausted


def test_budget_truncates_enumeration():
    report = exhaustive_search(SearchConfig(ground=GROUND_15, budget=500))
    assert not report.exhausted
    assert report.examined == 500


def test_first_hit_stops_early():
    report = exhaustive_search(
        SearchConfig(ground=GROUND_15, min_size=8, max_size=8, objective="first-hit")
    )
    assert report.hit_count == 1
    assert report.hits[0].elements == CONWAY
    assert not report.exhausted


def test_hit_cap_truncates_stored_hits_only():
    report = exhaustive_search(
        SearchConfig(ground=IntSet(range(16)), min_size=8, max_size=9, hit_cap=3)
    )
    assert len(report.hits) == 3
    assert report.hit_count > 3


def test_every_reported_hit_reclassifies_mstd():
    report = exhaustive_search(
        SearchConfig(ground=IntSet(range(16)), min_size=8, max_size=8)
    )
    assert report.hit_count > 0
    for hit in report.hits:
        assert classify(hit).verdict == "mstd"


def test_affine_closure_of_hits():
    base = exhaustive_search(SearchConfig(ground=GROUND_15, min_size=8, max_size=8))
    image_ground = IntSet(3 * e + 5 for e in range(15))
    image = exhaustive_search(
        SearchConfig(ground=image_ground, min_size=8, max_size=8)
    )
    mapped = [tuple(3 * e + 5 for e in h.elements) for h in base.hits]
    assert [h.elements for h in image.hits] == mapped


def test_exhaustive_rejects_monte_carlo_config():
    cfg = SearchConfig(ground=GROUND_15, mode="monte-carlo", samples=10)
    with pytest.raises(DomainError):
        exhaustive_search(cfg)


def test_config_validation():
    with pytest.raises(DomainError):
        SearchConfig(ground=GROUND_15, mode="simulated-annealing")
    with pytest.raises(DomainError):
        SearchConfig(ground=GROUND_15, objective="maximize-gap")
    with pytest.raises(DomainError):
        SearchConfig(ground=GROUND_15, budget=0)
    with pytest.raises(DomainError):
        SearchConfig(ground=GROUND_15, mode="monte-carlo")  # samples missing


# -- monte carlo -------------------------------------------------------

def test_density_of_short_interval_is_zero():
    report = monte_carlo_density(10, 100_000, seed=0)
    assert report.hit_count == 0
    assert report.density_estimate == 0.0


def test_density_deterministic_and_seed_sensitive():
    a = monte_carlo_density(60, 50_000, seed=11)
    b = monte_carlo_density(60, 50_000, seed=11)
    c = monte_carlo_density(60, 50_000, seed=12)
    assert a.to_dict() == b.to_dict()
    assert a.seed == 11
    assert c.to_dict() != a.to_dict()


def test_density_independent_of_worker_count():
    serial = monte_carlo_density(60, 200_000, seed=2, threads=1)
    pooled = monte_carlo_density(60, 200_000, seed=2, threads=3)
    assert serial.to_dict() == pooled.to_dict()


def test_monte_carlo_hits_reclassify_mstd():
    report = monte_carlo_density(60, 150_000, seed=4)
    assert report.hit_count > 0
    assert report.hits
    for hit in report.hits:
        assert classify(hit).verdict == "mstd"


def test_monte_carlo_matches_exhaustive_ratio():
    exact = exhaustive_search(SearchConfig(ground=GROUND_15, budget=1 << 15))
    assert exact.exhausted
    truth = exact.hit_count / (1 << 15)
    mc = monte_carlo_density(14, 400_000, seed=3)
    tolerance = 4 * max(mc.stderr, 1e-6)
    assert abs(mc.density_estimate - truth) <= tolerance
    assert mc.density_estimate == mc.hit_count / 400_000


def test_monte_carlo_dilated_ground_same_hits():
    # subsets of 2*{0..30} are dilations of subsets of {0..30}, so the
    # same seed must produce the same hit pattern on both grounds
    plain = special_search(
        SearchConfig(ground=IntSet(range(31)), mode="monte-carlo", samples=50_000, seed=9)
    )
    dilated = special_search(
        SearchConfig(
            ground=IntSet(range(0, 62, 2)), mode="monte-carlo", samples=50_000, seed=9
        )
    )
    assert plain.hit_count == dilated.hit_count
    assert [tuple(2 * e for e in h.elements) for h in plain.hits] == [
        h.elements for h in dilated.hits
    ]


# -- special search ----------------------------------------------------

def test_no_special_sets_at_diameter_fourteen():
    report = special_search(SearchConfig(ground=GROUND_15))
    assert report.hit_count == 0
    assert report.exhausted


def test_special_search_finds_expanded_conway():
    s3 = base_expansion(IntSet(CONWAY), 3)
    ground = IntSet(s3.elements, diameter_cap=None)
    report = special_search(
        SearchConfig(ground=ground, min_size=512, max_size=512, budget=10)
    )
    assert report.hit_count == 1
    assert report.hits[0].elements == s3.elements
    c = classify(report.hits[0])
    assert c.gap >= 512


def test_special_hits_have_gap_at_least_size():
    s2 = base_expansion(IntSet(CONWAY), 2)
    report = special_search(
        SearchConfig(ground=s2, mode="monte-carlo", samples=20_000, seed=1)
    )
    for hit in report.hits:
        c = classify(hit)
        assert c.gap >= len(hit)


# -- minimality --------------------------------------------------------

def test_minimal_max_element_in_interval():
    report = minimal_mstd_in(GROUND_15, objective="minimize-max-element")
    assert report.objective_value == 14
    assert report.optimal
    assert report.hits[0].elements == CONWAY


def test_minimal_diameter_in_interval():
    report = minimal_mstd_in(IntSet(range(20)), objective="minimize-diameter")
    assert report.objective_value == 14
    assert report.optimal


def test_minimal_in_fibonacci_prefix_finds_nothing():
    terms = materialize(SequenceSpec.fibonacci(), 18)
    report = minimal_mstd_in(IntSet(terms), objective="minimize-max-element")
    assert report.hit_count == 0
    assert report.exhausted
    assert report.objective_value is None
    assert report.optimal is None


def test_minimal_in_primes_finds_dilated_conway():
    ground = IntSet(int(p) for p in PrimeSieve(439).primes())
    report = minimal_mstd_in(ground, objective="minimize-max-element", budget=100_000)
    found = [h.elements for h in report.hits]
    assert (19, 79, 109, 139, 229, 349, 379, 439) in found
    assert not report.optimal  # lower levels were not exhausted in budget


def test_minimal_rejects_search_objectives():
    with pytest.raises(DomainError):
        minimal_mstd_in(GROUND_15, objective="first-hit")


# -- report serialization ----------------------------------------------

def test_report_json_schema():
    report = exhaustive_search(SearchConfig(ground=GROUND_15, max_size=7))
    data = report.to_dict()
    for key in ("hits", "hit_count", "examined", "density", "stderr", "exhausted", "seed"):
        assert key in data
    assert data["hits"] == []
    assert data["density"] is None

    mc = monte_carlo_density(20, 1000, seed=0).to_dict()
    assert mc["density"] == mc["hit_count"] / 1000
