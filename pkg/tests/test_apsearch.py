import logging

import pytest

from conftest import brute_ap, td_is_prime
from primelabel.apsearch import (APCache, InvalidAP, PrimeAP, SearchBudget, SearchExhausted,
                                 find_ap, find_ap_cached, find_ap_with_p_gt_d, validate_ap)
from primelabel.errors import InvalidArgumentError, ResourceLimitError
from primelabel.primes import U64_MAX

SMALL = SearchBudget(max_d=60, max_p=2000)


@pytest.mark.parametrize("length, p, d", [(1, 2, 1), (5, 5, 6), (6, 7, 30)])
def test_find_ap_examples(length, p, d):
    # frozen from brute_ap(length, 50, 1000)
    assert find_ap(length) == PrimeAP(p, d, length)


@pytest.mark.parametrize("length, p, d", [(3, 3, 2), (5, 37, 30), (2, 3, 2)])
def test_find_ap_p_gt_d_examples(length, p, d):
    assert find_ap_with_p_gt_d(length) == PrimeAP(p, d, length)


@pytest.mark.parametrize("length", range(1, 8))
def test_find_ap_matches_exhaustive_scan(length):
    budget = SearchBudget(max_d=60, max_p=400)
    expected = brute_ap(length, 60, 400)
    if expected is None:
        with pytest.raises(SearchExhausted):
            find_ap(length, budget)
    else:
        ap = find_ap(length, budget)
        assert (ap.p, ap.d) == expected


@pytest.mark.parametrize("length", range(1, 8))
def test_find_ap_p_gt_d_matches_exhaustive_scan(length):
    budget = SearchBudget(max_d=60, max_p=400)
    expected = brute_ap(length, 60, 400, p_gt_d=True)
    if expected is None:
        with pytest.raises(SearchExhausted):
            find_ap_with_p_gt_d(length, budget)
    else:
        ap = find_ap_with_p_gt_d(length, budget)
        assert (ap.p, ap.d) == expected


@pytest.mark.parametrize("length", range(1, 9))
@pytest.mark.parametrize("p_gt_d", [False, True])
def test_shortcut_does_not_change_result(length, p_gt_d):
    budget = SearchBudget(max_d=300, max_p=3000)
    search = find_ap_with_p_gt_d if p_gt_d else find_ap

    def run(shortcut):
        try:
            return search(length, budget, shortcut=shortcut)
        except SearchExhausted:
            return None

    assert run(True) == run(False)


def test_min_p_lower_bound():
    ap = find_ap(3, SMALL, min_p=4)
    assert ap.p >= 4
    expected = next((p, d) for d in range(1, 61) for p in range(4, 2001)
                    if all(td_is_prime(p + k * d) for k in range(3)))
    assert (ap.p, ap.d) == expected


@pytest.mark.parametrize("workers", [2, 3, 8])
def test_parallel_search_is_deterministic(workers):
    for length in (4, 5, 6, 7):
        assert find_ap(length, workers=workers) == find_ap(length)
        assert find_ap_with_p_gt_d(length, workers=workers) == find_ap_with_p_gt_d(length)


def test_len13_window_ap():
    ap = find_ap_with_p_gt_d(13)
    assert ap.d % 30030 == 0 and ap.p > ap.d
    assert all(td_is_prime(t) for t in ap.terms())


def test_exhaustion_carries_bounds():
    with pytest.raises(SearchExhausted) as info:
        find_ap(30, SearchBudget(max_d=100))
    exc = info.value
    assert exc.length == 30 and exc.budget.max_d == 100 and not exc.timed_out
    assert exc.as_dict()["max_d"] == 100


def test_time_limit_reports_timeout():
    with pytest.raises(SearchExhausted) as info:
        find_ap(12, SearchBudget(max_d=10**7, max_p=10**9, time_limit=0.05), shortcut=False)
    assert info.value.timed_out


def test_search_argument_errors():
    with pytest.raises(InvalidArgumentError):
        find_ap(0)
    with pytest.raises(InvalidArgumentError):
        SearchBudget(max_d=0)
    with pytest.raises(ResourceLimitError):
        find_ap(3, SearchBudget(max_d=2**62, max_p=2**63))


def test_validate_ap_examples():
    assert validate_ap(5, 6, 5) == PrimeAP(5, 6, 5)
    with pytest.raises(InvalidAP) as info:
        validate_ap(5, 6, 6)
    assert info.value.failing == [5]  # term 35 = 5 * 7
    with pytest.raises(InvalidArgumentError):
        validate_ap(2, 0, 3)


def test_validate_ap_reports_every_failure():
    with pytest.raises(InvalidAP) as info:
        validate_ap(3, 2, 6)  # 3 5 7 9 11 13
    assert info.value.failing == [3]
    with pytest.raises(InvalidAP) as info:
        validate_ap(1, 1, 6)  # 1 2 3 4 5 6
    assert info.value.failing == [0, 3, 5]


def test_validate_ap_overflow():
    with pytest.raises(ResourceLimitError):
        validate_ap(U64_MAX - 10, 5, 4)


def test_cache_round_trip(tmp_path):
    cache = APCache(tmp_path / "c.txt")
    first = find_ap_cached(5, True, cache=cache)
    assert (tmp_path / "c.txt").read_text() == "5 1 37 30\n"
    assert find_ap_cached(5, True, cache=cache) == first
    assert cache.load() == {(5, True): first}


def test_cache_respects_budget(tmp_path):
    path = tmp_path / "c.txt"
    path.write_text("6 0 7 30\n")
    cache = APCache(path)
    assert cache.get(6, False, SearchBudget()) == PrimeAP(7, 30, 6)
    assert cache.get(6, False, SearchBudget(max_d=10)) is None


def test_cache_ignores_corrupt_lines(tmp_path, caplog):
    path = tmp_path / "c.txt"
    path.write_text("5 0 5 6\ngarbage\n6 0 7 31\n3 1 3 2\n4 1 2 5\n")
    with caplog.at_level(logging.WARNING):
        entries = APCache(path).load()
    assert entries == {(5, False): PrimeAP(5, 6, 5), (3, True): PrimeAP(3, 2, 3)}
    assert sum("corrupt" in r.message for r in caplog.records) == 3


def test_cache_default_path_from_env(tmp_path, monkeypatch):
    monkeypatch.setenv("PRIMELABEL_AP_CACHE", str(tmp_path / "x" / "cache"))
    cache = APCache()
    assert cache.path == tmp_path / "x" / "cache"
    find_ap_cached(3, False, cache=cache)
    assert cache.path.read_text() == "3 0 3 2\n"


@pytest.mark.parametrize("segment", [7, 64, 1000])
def test_small_segments_cover_both_sieve_paths(monkeypatch, segment):
    # tiny segments force many windows and the per-shift sieving branch
    monkeypatch.setattr("primelabel.apsearch.SEGMENT", segment)
    for length in (3, 4, 5, 6):
        for p_gt_d in (False, True):
            search = find_ap_with_p_gt_d if p_gt_d else find_ap
            ap = search(length, SearchBudget(max_d=60, max_p=400), shortcut=False)
            assert (ap.p, ap.d) == brute_ap(length, 60, 400, p_gt_d)
