"""Newline-delimited JSON persistence for mutation graphs.

One canonical seed per line, in record order::

    {"cluster": ["x2", "x1"], "matrix": [[0, -1], [1, 0]], "depth": 0,
     "expanded": true, "neighbors": [[0, 1], [1, 2]]}

``neighbors`` pairs are (position in the cluster, line index of the seed
reached by mutating there).
"""

from __future__ import annotations

import json

from .laurent import LaurentPoly, parse
from .quiver import ExchangeMatrix, QuiverError
from .seeds import MutationGraph, Seed, SeedRecord, canonical_seed, mutate_seed


class CacheError(ValueError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"cache line {line}: {message}")


def dumps_record(r: SeedRecord) -> str:
    return json.dumps(
        {
            "cluster": [str(x) for x in r.seed.cluster],
            "matrix": r.seed.matrix.tolist(),
            "depth": r.depth,
            "expanded": r.expanded,
            "neighbors": sorted([k, j] for k, j in r.neighbors.items()),
        }
    )


def write_cache(g: MutationGraph, path) -> None:
    with open(path, "w") as fh:
        for r in g.records:
            fh.write(dumps_record(r) + "\n")


def _initial_matrix(root: Seed) -> ExchangeMatrix:
    n = root.n
    order = []
    for x in root.cluster:
        exps = x.max_exponents()
        if not (x.is_monomial() and sorted(exps) == [0] * (n - 1) + [1]):
            raise CacheError(1, "first seed is not the initial seed")
        order.append(exps.index(1))
    # root.matrix[a][b] is the entry for variables order[a], order[b]
    rows = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            rows[order[a]][order[b]] = root.matrix.rows[a][b]
    return ExchangeMatrix(rows)


def read_cache(path, check_edges: bool = True) -> MutationGraph:
    """Load a graph written by :func:`write_cache`.

    With ``check_edges`` every recorded edge is recomputed by mutation, so a
    tampered variable or matrix is rejected rather than silently trusted.
    """
    records: list[SeedRecord] = []
    with open(path) as fh:
        lines = [ln for ln in fh.read().split("\n")]
    if lines and lines[-1] == "":
        lines.pop()
    for lineno, text in enumerate(lines, start=1):
        try:
            data = json.loads(text)
            matrix = ExchangeMatrix(data["matrix"])
            n = matrix.n
            cluster = tuple(parse(t, n) for t in data["cluster"])
            if len(cluster) != n:
                raise ValueError("cluster size does not match the matrix")
            depth = int(data["depth"])
            expanded = bool(data["expanded"])
            neighbors = {int(k): int(j) for k, j in data["neighbors"]}
        except (json.JSONDecodeError, KeyError, TypeError, ValueError, QuiverError) as exc:
            raise CacheError(lineno, str(exc)) from exc
        seed = Seed(cluster, matrix)
        if canonical_seed(seed) != seed:
            raise CacheError(lineno, "seed is not in canonical order")
        records.append(SeedRecord(seed, depth, expanded, neighbors))
    if not records:
        return MutationGraph(matrix=ExchangeMatrix([]), records=[], truncated=False)
    for lineno, r in enumerate(records, start=1):
        if r.seed.n != records[0].seed.n:
            raise CacheError(lineno, "rank differs from the first line")
        for k, j in r.neighbors.items():
            if not (0 <= k < r.seed.n and 0 <= j < len(records)):
                raise CacheError(lineno, f"neighbor ({k}, {j}) out of range")
            if check_edges and canonical_seed(mutate_seed(r.seed, k)) != records[j].seed:
                raise CacheError(lineno, f"mutation at {k} does not give line {j + 1}")
        if r.expanded and len(r.neighbors) != r.seed.n:
            raise CacheError(lineno, "marked expanded but has missing neighbors")
    g = MutationGraph(matrix=_initial_matrix(records[0].seed), records=records)
    g.truncated = not all(r.expanded for r in records)
    g.max_depth = max(r.depth for r in records)
    initial = set(LaurentPoly.variable(g.n, i) for i in range(g.n))
    g.notable = sorted(
        {f"polynomial non-initial cluster variable: {x}" for x in g.variables() if x not in initial and x.is_polynomial()}
    )
    return g


def graphs_equal(a: MutationGraph, b: MutationGraph) -> bool:
    return (
        a.matrix == b.matrix
        and a.truncated == b.truncated
        and [(r.seed, r.depth, r.expanded, r.neighbors) for r in a.records]
        == [(r.seed, r.depth, r.expanded, r.neighbors) for r in b.records]
    )
