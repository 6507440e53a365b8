"""Prime edge-sum labelings of K_{m,n}, and a verifier for any graph.

Given primes p, p+d, ..., p+Ld, label side A of K_{m,n} with
a_i = (i(n-1)+1)d and side B with b_j = c + jd. Every sum a_i + b_j is
then c + (i(n-1) + j + 1)d, and as (i, j) ranges over the grid the
multiplier i(n-1) + j covers a contiguous block of m(n-1)+1 integers.

Two placements of that block are supported:

strict
    c = p + (mn-m-n+2)d, needing an AP of 2mn-2m-n+4 primes of which the
    top m(n-1)+1 are used.
windowed
    c = p - d, so the sums are exactly the AP terms 0..m(n-1). Needs only
    m(n-1)+1 primes, plus p > d >= 2 for positivity and distinctness.
"""
from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Mapping

from .apsearch import PrimeAP
from .errors import InvalidArgumentError, ParseError, ResourceLimitError
from .graph import Graph, HypercubeEmbedding, complete_bipartite
from .primes import U64_MAX, check_u64, checked_add, checked_mul, is_prime, smallest_factor

STRICT = "strict"
WINDOWED = "windowed"
TRIVIAL = "trivial"
MODES = (STRICT, WINDOWED)

# sums up to this size get a trial-division factor witness
FACTOR_WITNESS_LIMIT = 10**12


@dataclass(frozen=True)
class ConstructionPlan:
    """Parameters of the K_{m,n} construction before an AP is bound.

    ``m``, ``n`` are the normalized side sizes (n >= 2 unless both are 1);
    ``swapped`` records whether the caller's sides were exchanged to get there.
    The window is the inclusive range of AP indices whose primality is used.
    """

    m: int
    n: int
    mode: str
    required_len: int
    window_lo: int
    window_hi: int
    swapped: bool = False

    @property
    def orig_m(self) -> int:
        return self.n if self.swapped else self.m

    @property
    def orig_n(self) -> int:
        return self.m if self.swapped else self.n

    def offset(self, ap: PrimeAP) -> int:
        """The constant c with b_j = c + j*d."""
        if self.mode == STRICT:
            return ap.p + (self.m * self.n - self.m - self.n + 2) * ap.d
        if self.mode == WINDOWED:
            return ap.p - ap.d
        raise InvalidArgumentError("trivial plan has no offset")


def plan_construction(m: int, n: int, mode: str = WINDOWED) -> ConstructionPlan:
    if m < 1 or n < 1:
        raise InvalidArgumentError("side sizes must be >= 1")
    if mode not in MODES:
        raise InvalidArgumentError(f"unknown mode {mode!r}; expected one of {MODES}")
    if m == 1 and n == 1:
        return ConstructionPlan(1, 1, TRIVIAL, 0, 0, 0)
    swapped = n == 1
    if swapped:
        m, n = n, m
    width = m * (n - 1) + 1
    if mode == STRICT:
        hi = 2 * m * n - 2 * m - n + 3
        return ConstructionPlan(m, n, STRICT, hi + 1, hi - width + 1, hi, swapped)
    return ConstructionPlan(m, n, WINDOWED, width, 0, width - 1, swapped)


@dataclass(frozen=True)
class Labeling:
    """Vertex -> label map. ``provenance`` is free-form JSON metadata."""

    labels: tuple[int, ...]
    provenance: Mapping = field(default_factory=lambda: {"mode": "external"})

    def __getitem__(self, v: int) -> int:
        return self.labels[v]

    def __len__(self) -> int:
        return len(self.labels)

    def to_json(self) -> str:
        doc = {"labels": {str(v): x for v, x in enumerate(self.labels)},
               "provenance": dict(self.provenance)}
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def labeling_from_json(text: str) -> Labeling:
    """Parse a labeling document.

    Malformed documents raise ParseError. Vertex ids must be exactly
    0..k-1; a gap is reported as a missing vertex (InvalidArgumentError).
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    if not isinstance(doc, dict) or not isinstance(doc.get("labels"), dict):
        raise ParseError("expected an object with a 'labels' object")
    raw = doc["labels"]
    labels = {}
    for key, value in raw.items():
        try:
            v = int(key)
        except ValueError:
            raise ParseError(f"vertex id {key!r} is not an integer") from None
        if isinstance(value, bool) or not isinstance(value, int):
            raise ParseError(f"label of vertex {key} is not an integer")
        labels[v] = value
    n = len(labels)
    if set(labels) != set(range(n)):
        missing = sorted(set(range(max(labels, default=-1) + 1)) - set(labels))
        raise InvalidArgumentError(f"labeling is missing vertices {missing[:10]}")
    prov = doc.get("provenance", {"mode": "external"})
    return Labeling(tuple(labels[v] for v in range(n)), prov)


# -- construction -----------------------------------------------------------

def construct_labeling(plan: ConstructionPlan, ap: PrimeAP | None) -> Labeling:
    """Label the caller's K_{orig_m, orig_n} (side A first) from ``ap``."""
    if plan.mode == TRIVIAL:
        return Labeling((1, 2), {"mode": TRIVIAL, "m": 1, "n": 1})
    if ap is None:
        raise InvalidArgumentError("an AP is required for a non-trivial plan")
    if ap.len < plan.required_len:
        raise InvalidArgumentError(
            f"AP has {ap.len} terms, plan needs {plan.required_len}")
    if plan.mode == WINDOWED and not ap.p > ap.d >= 2:
        raise InvalidArgumentError("windowed mode needs p > d >= 2")

    m, n, d = plan.m, plan.n, ap.d
    c = plan.offset(ap)
    side_a = [checked_mul(i * (n - 1) + 1, d) for i in range(m)]
    side_b = [checked_add(c, checked_mul(j, d)) for j in range(n)]
    check_u64(side_a[-1] + side_b[-1], "largest edge sum")

    labels = side_b + side_a if plan.swapped else side_a + side_b
    prov = {"mode": plan.mode, "p": ap.p, "d": ap.d, "len": ap.len,
            "m": plan.orig_m, "n": plan.orig_n}
    return Labeling(tuple(labels), prov)


def expected_sum_indices(plan: ConstructionPlan) -> dict[int, int]:
    """AP index -> number of K_{m,n} edges whose sum lands on it."""
    counts = defaultdict(int)
    for i in range(plan.m):
        for j in range(plan.n):
            counts[plan.window_lo + i * (plan.n - 1) + j] += 1
    return dict(counts)


# -- verification -----------------------------------------------------------

@dataclass(frozen=True)
class Report:
    violations: tuple = ()
    extra: Mapping = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        return {"pass": self.passed, "violations": list(self.violations), **self.extra}


def verify_labeling(g: Graph, labeling: Labeling) -> Report:
    """Check distinctness, positivity and primality of every edge sum."""
    if len(labeling) != g.num_vertices:
        raise InvalidArgumentError(
            f"labeling covers {len(labeling)} vertices, graph has {g.num_vertices}")
    labels = labeling.labels
    violations = []

    by_label = defaultdict(list)
    for v, x in enumerate(labels):
        by_label[x].append(v)
    for x, vs in sorted(by_label.items()):
        if len(vs) > 1:
            violations.append({"kind": "duplicate_label", "label": x, "vertices": vs})
    for v, x in enumerate(labels):
        if x < 1:
            violations.append({"kind": "nonpositive_label", "vertex": v, "label": x})

    for u, v in g.sorted_edges():
        s = labels[u] + labels[v]
        if s > U64_MAX:
            raise ResourceLimitError(f"edge sum {s} does not fit in 64 bits")
        if is_prime(s):
            continue
        item = {"kind": "composite_sum", "edge": [u, v], "sum": s}
        if 2 <= s <= FACTOR_WITNESS_LIMIT:
            item["factor"] = smallest_factor(s)
        violations.append(item)
    return Report(tuple(violations))


def restrict_to_subgraph(labeling: Labeling, embedding: HypercubeEmbedding) -> Labeling:
    """Pull a K_{2^(n-1), 2^(n-1)} labeling back to Q_n."""
    half = embedding.half
    if len(labeling) != 2 * half:
        raise InvalidArgumentError(
            f"Q_{embedding.n} needs a K_{{{half},{half}}} labeling; got {len(labeling)} labels")
    host, _ = complete_bipartite(half, half)
    if not verify_labeling(host, labeling).passed:
        raise InvalidArgumentError("host labeling does not verify on K_{M,M}")
    labels = tuple(labeling[embedding.bipartite_vertex(v)] for v in range(2 * half))
    prov = dict(labeling.provenance)
    prov["restricted_to"] = f"Q_{embedding.n}"
    return Labeling(labels, prov)
