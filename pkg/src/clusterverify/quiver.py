"""Skew-symmetric exchange matrices.

Convention: ``b[i][j] > 0`` means ``b[i][j]`` arrows i -> j.
"""

from __future__ import annotations

import json
from collections import Counter
from typing import Sequence

MAX_CANONICAL_N = 10


class QuiverError(ValueError):
    """Invalid exchange matrix or quiver file."""


class ExchangeMatrix:
    """An immutable n x n skew-symmetric integer matrix."""

    __slots__ = ("n", "rows")

    def __init__(self, rows: Sequence[Sequence[int]]):
        rows = tuple(tuple(int(v) for v in r) for r in rows)
        n = len(rows)
        for i, r in enumerate(rows):
            if len(r) != n:
                raise QuiverError(f"row {i} has length {len(r)}, expected {n}")
        for i in range(n):
            if rows[i][i] != 0:
                raise QuiverError(f"nonzero diagonal entry at ({i}, {i})")
            for j in range(i + 1, n):
                if rows[i][j] != -rows[j][i]:
                    raise QuiverError(f"not skew-symmetric at ({i}, {j}): {rows[i][j]} vs {rows[j][i]}")
        self.n = n
        self.rows = rows

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, ExchangeMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __lt__(self, other):
        return self.flat() < other.flat()

    def __repr__(self):
        return f"ExchangeMatrix({[list(r) for r in self.rows]})"

    def flat(self) -> tuple[int, ...]:
        return tuple(v for r in self.rows for v in r)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def arrows(self) -> list[tuple[int, int]]:
        """Arrows i -> j repeated with multiplicity, in (i, j) order."""
        return [(i, j) for i in range(self.n) for j in range(self.n) for _ in range(max(self.rows[i][j], 0))]

    def permute(self, perm: Sequence[int]) -> "ExchangeMatrix":
        """Relabel so that new vertex a is old vertex ``perm[a]``."""
        return ExchangeMatrix([[self.rows[perm[a]][perm[b]] for b in range(self.n)] for a in range(self.n)])

    def is_sink(self, k: int) -> bool:
        return all(self.rows[k][j] <= 0 for j in range(self.n))

    def is_source(self, k: int) -> bool:
        return all(self.rows[k][j] >= 0 for j in range(self.n))


def mutate_matrix(b: ExchangeMatrix, k: int) -> ExchangeMatrix:
    n = b.n
    if not 0 <= k < n:
        raise IndexError(f"mutation vertex {k} out of range for n={n}")
    r = b.rows
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == k or j == k:
                row.append(-r[i][j])
            else:
                row.append(r[i][j] + (abs(r[i][k]) * r[k][j] + r[i][k] * abs(r[k][j])) // 2)
        out.append(row)
    return ExchangeMatrix(out)


def topological_order(b: ExchangeMatrix) -> list[int] | None:
    """Vertices ordered so every arrow goes forward, or None if there is a cycle."""
    n = b.n
    indeg = [sum(1 for i in range(n) if b.rows[i][j] > 0) for j in range(n)]
    ready = [j for j in range(n) if indeg[j] == 0]
    order = []
    while ready:
        ready.sort()
        v = ready.pop(0)
        order.append(v)
        for j in range(n):
            if b.rows[v][j] > 0:
                indeg[j] -= 1
                if indeg[j] == 0:
                    ready.append(j)
    return order if len(order) == n else None


def is_acyclic(b: ExchangeMatrix) -> bool:
    return topological_order(b) is not None


def canonical_form(b: ExchangeMatrix, max_n: int = MAX_CANONICAL_N) -> tuple[ExchangeMatrix, tuple[int, ...]]:
    """Least relabeling of ``b`` and a permutation achieving it.

    Matrices are compared by their strict lower triangle read row by row
    (the upper triangle is its negation).  Row m of that triangle only
    depends on the first m+1 chosen vertices, so the search keeps, level by
    level, just the partial labelings whose prefix is minimal.
    """
    n = b.n
    if n > max_n:
        raise MemoryError(f"canonical_form is brute force; n={n} exceeds bound {max_n}")
    r = b.rows
    level: list[tuple[int, ...]] = [()]
    for m in range(n):
        best_row = None
        nxt: list[tuple[int, ...]] = []
        for perm in level:
            used = set(perm)
            for v in range(n):
                if v in used:
                    continue
                row = tuple(r[v][p] for p in perm)
                if best_row is None or row < best_row:
                    best_row, nxt = row, [perm + (v,)]
                elif row == best_row:
                    nxt.append(perm + (v,))
        level = nxt
    perm = min(level) if level else ()
    return b.permute(perm), perm


def lower_triangle(b: ExchangeMatrix) -> tuple[int, ...]:
    return tuple(b.rows[i][j] for i in range(b.n) for j in range(i))


_DYNKIN_E = {(1, 2, 2): "E6", (1, 2, 3): "E7", (1, 2, 4): "E8"}


def classify_dynkin(b: ExchangeMatrix) -> str | None:
    """``A_n``/``D_n``/``E6-8`` if the underlying graph is that simply laced tree."""
    n = b.n
    if n == 0:
        return None
    adj: list[list[int]] = [[] for _ in range(n)]
    edges = 0
    for i in range(n):
        for j in range(i + 1, n):
            m = abs(b.rows[i][j])
            if m > 1:
                return None
            if m == 1:
                adj[i].append(j)
                adj[j].append(i)
                edges += 1
    if edges != n - 1:
        return None
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != n:
        return None
    degrees = Counter(len(a) for a in adj)
    if max(degrees) <= 2:
        return f"A{n}"
    branch = [v for v in range(n) if len(adj[v]) >= 3]
    if len(branch) != 1 or len(adj[branch[0]]) != 3:
        return None
    c = branch[0]
    arms = []
    for start in adj[c]:
        length, prev, cur = 1, c, start
        while True:
            nbrs = [w for w in adj[cur] if w != prev]
            if not nbrs:
                break
            prev, cur = cur, nbrs[0]
            length += 1
        arms.append(length)
    arms = tuple(sorted(arms))
    if arms[:2] == (1, 1):
        return f"D{n}"
    return _DYNKIN_E.get(arms)


def load_quiver(path) -> ExchangeMatrix:
    """Read ``{"n": int, "matrix": [[int, ...], ...]}`` (0-indexed vertices)."""
    with open(path) as fh:
        text = fh.read()
    return quiver_from_json(text)


def quiver_from_json(text: str) -> ExchangeMatrix:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise QuiverError(f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise QuiverError("top level must be an object with fields 'n' and 'matrix'")
    for field in ("n", "matrix"):
        if field not in data:
            raise QuiverError(f"missing field {field!r}")
    n, rows = data["n"], data["matrix"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise QuiverError("field 'n' must be a positive integer")
    if not isinstance(rows, list) or len(rows) != n:
        raise QuiverError(f"field 'matrix' must be a list of {n} rows")
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise QuiverError(f"field 'matrix' row {i} must be a list of {n} integers")
        for j, v in enumerate(row):
            if not isinstance(v, int) or isinstance(v, bool):
                raise QuiverError(f"field 'matrix'[{i}][{j}] is not an integer")
    return ExchangeMatrix(rows)


def quiver_to_json(b: ExchangeMatrix) -> str:
    return json.dumps({"n": b.n, "matrix": b.tolist()})
