import os
from itertools import permutations

import pytest

_CRITERIA = {}


def td_is_prime(x):
    """Trial division; deliberately independent of primelabel.primes."""
    if x < 2:
        return False
    k = 2
    while k * k <= x:
        if x % k == 0:
            return False
        k += 1
    return True


def brute_ap(length, max_d, max_p, p_gt_d=False):
    """Exhaustive (d, p) scan with trial division."""
    for d in range(2 if p_gt_d else 1, max_d + 1):
        for p in range(d + 1 if p_gt_d else 1, max_p + 1):
            if all(td_is_prime(p + k * d) for k in range(length)):
                return p, d
    return None


def perm_hamiltonian_paths(nv, edges):
    """Directed Hamiltonian paths by checking every vertex permutation."""
    es = {frozenset(e) for e in edges}
    return sorted(p for p in permutations(range(nv))
                  if all(frozenset(p[i:i + 2]) in es for i in range(nv - 1)))


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("PRIMELABEL_AP_CACHE", os.fspath(tmp_path / "ap_cache.txt"))


@pytest.fixture
def criterion(request):
    """Record an acceptance criterion's outcome for the end-of-run summary."""
    def record(number, title):
        _CRITERIA.setdefault(number, (title, []))[1].append(request.node)
    return record


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.passed_call = rep.passed


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, nodes = _CRITERIA[number]
        ok = all(getattr(node, "passed_call", False) for node in nodes)
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status}  {title}")
