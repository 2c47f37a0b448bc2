"""Seeds, seed mutation and breadth-first exploration of the mutation graph."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .laurent import DivisionFailure, LaurentPoly, exact_div, positivity_check, reduced_form, variables
from .quiver import ExchangeMatrix, is_acyclic, mutate_matrix
from .report import CheckReport, FAIL, PASS, verdict_for

log = logging.getLogger(__name__)

DEFAULT_MAX_DEPTH = 8
DEFAULT_MAX_SEEDS = 100_000
DEFAULT_MAX_TERMS = 200_000
# a guarded multiplication may touch at most WORK_FACTOR * max_terms term pairs
WORK_FACTOR = 64


class LaurentPhenomenonViolation(RuntimeError):
    """An exchange relation produced a non-Laurent quotient. Never expected."""


class NotAcyclicError(ValueError):
    pass


class TermLimitExceeded(MemoryError):
    """A mutation would build a polynomial with more than ``limit`` terms."""

    def __init__(self, k: int, limit: int):
        self.k = k
        self.limit = limit
        super().__init__(f"mutation at {k} exceeds {limit} terms")


@dataclass(frozen=True)
class Seed:
    cluster: tuple[LaurentPoly, ...]
    matrix: ExchangeMatrix

    @property
    def n(self) -> int:
        return self.matrix.n

    def cluster_set(self) -> frozenset[LaurentPoly]:
        return frozenset(self.cluster)


def initial_seed(b: ExchangeMatrix) -> Seed:
    if not is_acyclic(b):
        raise NotAcyclicError(
            "initial exchange matrix has an oriented cycle; only acyclic initial seeds are supported"
        )
    return Seed(tuple(variables(b.n)), b)


def _guarded_mul(a: LaurentPoly, b: LaurentPoly, limit: int | None) -> LaurentPoly:
    # the work bound keeps one multiplication cheap, the size bound is the guard itself
    if limit is not None and len(a) * len(b) > WORK_FACTOR * limit:
        raise OverflowError
    out = a * b
    if limit is not None and len(out) > limit:
        raise OverflowError
    return out


def _positive_power_product(cluster, exps, limit: int | None = None) -> LaurentPoly:
    n = cluster[0].n
    out = LaurentPoly.constant(n, 1)
    for x, e in zip(cluster, exps):
        base = x
        while e > 0:
            if e & 1:
                out = _guarded_mul(out, base, limit)
            e >>= 1
            if e:
                base = _guarded_mul(base, base, limit)
    return out


def exchange_binomial(s: Seed, k: int, max_terms: int | None = None) -> LaurentPoly:
    col = [s.matrix.rows[i][k] for i in range(s.n)]
    try:
        out = _positive_power_product(s.cluster, [max(c, 0) for c in col], max_terms) + _positive_power_product(
            s.cluster, [max(-c, 0) for c in col], max_terms
        )
    except OverflowError:
        raise TermLimitExceeded(k, max_terms) from None
    return out


def mutate_seed(s: Seed, k: int, max_terms: int | None = None) -> Seed:
    """Replace x_k by (prod x_i^[b_ik]+ + prod x_i^[-b_ik]+) / x_k and mutate the matrix.

    With ``max_terms`` set, raise :class:`TermLimitExceeded` when the new
    variable or an intermediate product would exceed that many terms, or when
    one multiplication would cost more than ``WORK_FACTOR * max_terms``.
    """
    if not 0 <= k < s.n:
        raise IndexError(f"mutation vertex {k} out of range for n={s.n}")
    try:
        new = exact_div(exchange_binomial(s, k, max_terms), s.cluster[k])
    except DivisionFailure as exc:
        raise LaurentPhenomenonViolation(f"exchange at {k} is not Laurent: {exc}") from exc
    if max_terms is not None and len(new) > max_terms:
        raise TermLimitExceeded(k, max_terms)
    cluster = s.cluster[:k] + (new,) + s.cluster[k + 1 :]
    return Seed(cluster, mutate_matrix(s.matrix, k))


def canonical_seed(s: Seed) -> Seed:
    """Sort the cluster by the total order on LaurentPoly and relabel the matrix to match.

    Cluster variables of a seed are distinct, so this relabeling is unique and
    two seeds that differ by a simultaneous permutation get the same result.
    """
    order = sorted(range(s.n), key=lambda i: s.cluster[i].sort_key())
    return Seed(tuple(s.cluster[i] for i in order), s.matrix.permute(order))


def seed_sort_key(s: Seed) -> tuple:
    return (tuple(x.sort_key() for x in s.cluster), s.matrix.flat())


@dataclass
class SeedRecord:
    seed: Seed
    depth: int
    expanded: bool = False
    # position k in the canonical cluster -> index of the neighbouring record
    neighbors: dict[int, int] = field(default_factory=dict)


@dataclass
class MutationGraph:
    matrix: ExchangeMatrix
    records: list[SeedRecord] = field(default_factory=list)
    truncated: bool = False
    max_depth: int = 0
    notable: list[str] = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.matrix.n

    @property
    def closed(self) -> bool:
        return not self.truncated

    def seeds(self) -> list[Seed]:
        return [r.seed for r in self.records]

    def clusters(self) -> set[frozenset[LaurentPoly]]:
        return {r.seed.cluster_set() for r in self.records}

    def variables(self) -> list[LaurentPoly]:
        seen = {x for r in self.records for x in r.seed.cluster}
        return sorted(seen, key=LaurentPoly.sort_key)

    def edges(self) -> list[tuple[int, int, int]]:
        return sorted((i, k, j) for i, r in enumerate(self.records) for k, j in r.neighbors.items())

    def counts(self) -> dict[str, int]:
        return {
            "seeds": len(self.records),
            "clusters": len(self.clusters()),
            "variables": len(self.variables()),
            "edges": len(self.edges()),
            "depth": self.max_depth,
        }


def _children(seed: Seed, max_terms: int) -> list[Seed | None]:
    out: list[Seed | None] = []
    for k in range(seed.n):
        try:
            out.append(canonical_seed(mutate_seed(seed, k, max_terms)))
        except TermLimitExceeded as exc:
            log.info("term guard: %s", exc)
            out.append(None)
    return out


def explore(
    b: ExchangeMatrix,
    max_depth: int = DEFAULT_MAX_DEPTH,
    max_seeds: int = DEFAULT_MAX_SEEDS,
    max_terms: int = DEFAULT_MAX_TERMS,
    workers: int = 1,
) -> MutationGraph:
    """Breadth-first exploration of seeds reachable from the initial seed of ``b``.

    Seeds are deduplicated up to simultaneous relabeling of cluster and
    matrix.  Seeds at ``max_depth`` are still probed: if all their
    neighbours are already known they count as expanded, otherwise the graph
    is marked truncated.  Output order depends only on the input.
    """
    if min(max_depth, max_seeds, max_terms) < 0:
        raise ValueError("limits must be nonnegative")
    root = canonical_seed(initial_seed(b))
    g = MutationGraph(matrix=b)
    g.records.append(SeedRecord(root, 0))
    index = {root: 0}
    initial = set(root.cluster)
    frontier = [0]
    depth = 0
    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        while frontier:
            parents = [g.records[i].seed for i in frontier]
            if pool is not None:
                results = list(pool.map(_children, parents, [max_terms] * len(parents)))
            else:
                results = [_children(p, max_terms) for p in parents]
            fresh: dict[Seed, list[tuple[int, int]]] = {}
            for pi, kids in zip(frontier, results):
                for k, child in enumerate(kids):
                    if child is None:
                        g.truncated = True
                    elif child in index:
                        g.records[pi].neighbors[k] = index[child]
                    else:
                        fresh.setdefault(child, []).append((pi, k))
            admitted = []
            for child in sorted(fresh, key=seed_sort_key):
                if depth + 1 > max_depth or len(g.records) >= max_seeds:
                    g.truncated = True
                    continue
                idx = len(g.records)
                g.records.append(SeedRecord(child, depth + 1))
                index[child] = idx
                admitted.append(idx)
                for x in child.cluster:
                    if x not in initial and x.is_polynomial():
                        g.notable.append(f"polynomial non-initial cluster variable: {x}")
                for pi, k in fresh[child]:
                    g.records[pi].neighbors[k] = idx
            for pi in frontier:
                g.records[pi].expanded = len(g.records[pi].neighbors) == g.n
            if admitted:
                depth += 1
            frontier = admitted
    finally:
        if pool is not None:
            pool.shutdown()
    g.max_depth = depth
    g.notable = sorted(set(g.notable))
    g.truncated = g.truncated or not all(r.expanded for r in g.records)
    return g


def verify_cluster_determines_seed(g: MutationGraph) -> CheckReport:
    """Every cluster-as-set must occur with exactly one (relabeled) exchange matrix."""
    groups: dict[frozenset, list[int]] = {}
    for i, r in enumerate(g.records):
        groups.setdefault(r.seed.cluster_set(), []).append(i)
    violations = []
    for members in groups.values():
        seeds = [canonical_seed(g.records[i].seed) for i in members]
        matrices = {s.matrix for s in seeds}
        if len(matrices) > 1:
            violations.append(
                {
                    "cluster": [str(x) for x in seeds[0].cluster],
                    "matrices": sorted(m.tolist() for m in matrices),
                }
            )
    violations.sort(key=lambda v: v["cluster"])
    return CheckReport(
        "cluster-determines-seed",
        verdict_for(violations, g.truncated),
        counts={"groups": len(groups), "seeds": len(g.records)},
        violations=violations,
    )


def verify_exchange_uniqueness(g: MutationGraph) -> CheckReport:
    """Each codimension-1 face of a cluster lies in exactly two clusters."""
    faces: dict[frozenset, set[frozenset]] = {}
    for c in g.clusters():
        for face in combinations(sorted(c, key=LaurentPoly.sort_key), g.n - 1):
            faces.setdefault(frozenset(face), set()).add(c)
    violations = []
    short = 0
    for face, completions in faces.items():
        if len(completions) > 2 or (len(completions) < 2 and g.closed):
            violations.append(
                {
                    "face": sorted(str(x) for x in face),
                    "completions": len(completions),
                }
            )
        elif len(completions) < 2:
            short += 1
    for r in g.records:
        for k, j in r.neighbors.items():
            if g.records[j].seed.cluster_set() == r.seed.cluster_set():
                violations.append({"seed": [str(x) for x in r.seed.cluster], "mutation": k, "reason": "mutation returned the same cluster"})
    violations.sort(key=lambda v: str(v))
    return CheckReport(
        "exchange-uniqueness",
        verdict_for(violations, g.truncated),
        counts={"faces": len(faces), "open_faces": short},
        violations=violations,
    )


def verify_positivity(g: MutationGraph) -> CheckReport:
    """Reduced-form numerators pass the positivity test and have minimum exponent 0."""
    violations = []
    nonpositive = 0
    for x in g.variables():
        rf = reduced_form(x)
        f = rf.numerator
        if not positivity_check(f):
            violations.append({"variable": str(x), "reason": "numerator fails positivity"})
        if any(m != 0 for m in f.min_exponents()):
            violations.append({"variable": str(x), "reason": "numerator not reduced"})
        if any(c <= 0 for c in x.coefficients()):
            nonpositive += 1
    notes = [f"{nonpositive} variables with a non-positive coefficient"] if nonpositive else []
    return CheckReport(
        "positivity",
        FAIL if violations else PASS,
        counts={"variables": len(g.variables()), "nonpositive_coefficient_variables": nonpositive},
        violations=violations,
        notes=notes,
    )


def verify_involution(
    g: MutationGraph, seeds: Iterable[Seed] | None = None, max_terms: int = DEFAULT_MAX_TERMS
) -> CheckReport:
    violations = []
    checked = skipped = 0
    for s in seeds if seeds is not None else g.seeds():
        for k in range(s.n):
            try:
                back = mutate_seed(mutate_seed(s, k, max_terms), k, max_terms)
            except TermLimitExceeded:
                skipped += 1
                continue
            checked += 1
            if back != s:
                violations.append({"seed": [str(x) for x in s.cluster], "mutation": k})
    return CheckReport(
        "involution",
        FAIL if violations else PASS,
        counts={"checked": checked, "skipped_term_limit": skipped},
        violations=violations,
    )
