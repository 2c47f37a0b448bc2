"""Explicit quiver representations over the rationals.

Maps are exact ``sympy`` matrices keyed by arrow ``(i, j, c)``: the c-th of
the ``b[i][j]`` parallel arrows i -> j, shaped dims[j] x dims[i].
"""

from __future__ import annotations

from typing import Mapping, Sequence, Union

import sympy

from .quiver import ExchangeMatrix, classify_dynkin, mutate_matrix, topological_order
from .report import CheckReport, verdict_for
from .roots import (
    ShiftedProjective,
    alpha_map,
    euler_form,
    label_key,
    positive_roots,
)

Arrow = tuple[int, int, int]


def arrow_keys(b: ExchangeMatrix) -> list[Arrow]:
    return [(i, j, c) for i in range(b.n) for j in range(b.n) for c in range(max(b.rows[i][j], 0))]


class QuiverRep:
    __slots__ = ("quiver", "dims", "maps")

    def __init__(self, quiver: ExchangeMatrix, dims: Sequence[int], maps: Mapping[Arrow, object] | None = None):
        dims = tuple(int(v) for v in dims)
        if len(dims) != quiver.n or min(dims, default=0) < 0:
            raise ValueError(f"bad dimension vector {dims} for {quiver.n} vertices")
        maps = dict(maps or {})
        full = {}
        for a in arrow_keys(quiver):
            i, j, _ = a
            m = maps.pop(a, None)
            m = sympy.zeros(dims[j], dims[i]) if m is None else sympy.ImmutableMatrix(m)
            if m.shape != (dims[j], dims[i]):
                raise ValueError(f"map on arrow {a} has shape {m.shape}, expected {(dims[j], dims[i])}")
            full[a] = sympy.ImmutableMatrix(m)
        if maps:
            raise ValueError(f"maps given for arrows not in the quiver: {sorted(maps)}")
        self.quiver = quiver
        self.dims = dims
        self.maps = full

    def __repr__(self):
        return f"QuiverRep(dims={self.dims})"

    def is_thin(self) -> bool:
        return all(d <= 1 for d in self.dims)


def simple(b: ExchangeMatrix, k: int) -> QuiverRep:
    d = [0] * b.n
    d[k] = 1
    return QuiverRep(b, d)


def _rank(m) -> int:
    return 0 if 0 in m.shape else m.rank()


def hom_dim(x: QuiverRep, y: QuiverRep) -> int:
    """Dimension of the space of (phi_v) with phi_j X_a = Y_a phi_i for all arrows."""
    if x.quiver != y.quiver:
        raise ValueError("representations over different quivers")
    n = x.quiver.n
    offset = []
    total = 0
    for v in range(n):
        offset.append(total)
        total += y.dims[v] * x.dims[v]
    if total == 0:
        return 0

    def var(v, r, c):
        return offset[v] + r * x.dims[v] + c

    rows = []
    for a in arrow_keys(x.quiver):
        i, j, _ = a
        xa, ya = x.maps[a], y.maps[a]
        for r in range(y.dims[j]):
            for c in range(x.dims[i]):
                row = [0] * total
                for t in range(x.dims[j]):
                    row[var(j, r, t)] += xa[t, c]
                for t in range(y.dims[i]):
                    row[var(i, t, c)] -= ya[r, t]
                if any(row):
                    rows.append(row)
    rank = sympy.Matrix(rows).rank() if rows else 0
    return total - rank


def ext1_dim(x: QuiverRep, y: QuiverRep) -> int:
    """dim Ext^1(X, Y) = dim Hom(X, Y) - <dim X, dim Y> (hereditary algebra)."""
    e = hom_dim(x, y) - euler_form(x.quiver, x.dims, y.dims)
    if e < 0:
        raise AssertionError(f"negative Ext^1 dimension {e} for {x} and {y}")
    return e


def reflect(x: QuiverRep, k: int, kind: str | None = None) -> QuiverRep:
    """BGP reflection at a sink (kernel construction) or a source (cokernel).

    The result lives over the quiver with the arrows at ``k`` reversed.
    """
    b = x.quiver
    if kind is None:
        kind = "sink" if b.is_sink(k) else "source" if b.is_source(k) else None
    if kind == "sink" and not b.is_sink(k) or kind == "source" and not b.is_source(k) or kind is None:
        raise ValueError(f"vertex {k} is not a {kind or 'sink or source'}")
    nb = mutate_matrix(b, k)
    keys = arrow_keys(b)
    maps = {a: m for a, m in x.maps.items() if k not in a[:2]}
    if kind == "sink":
        incoming = [a for a in keys if a[1] == k]
        widths = [x.dims[a[0]] for a in incoming]
        h = sympy.Matrix.hstack(*[x.maps[a] for a in incoming]) if incoming else sympy.zeros(x.dims[k], 0)
        basis = sympy.Matrix(h).nullspace() if h.shape[1] else []
        kern = sympy.Matrix.hstack(*basis) if basis else sympy.zeros(sum(widths), 0)
        newdim = kern.shape[1]
        start = 0
        for a, w in zip(incoming, widths):
            i, _, c = a
            maps[(k, i, c)] = kern[start : start + w, :]
            start += w
    else:
        outgoing = [a for a in keys if a[0] == k]
        heights = [x.dims[a[1]] for a in outgoing]
        h = sympy.Matrix.vstack(*[x.maps[a] for a in outgoing]) if outgoing else sympy.zeros(0, x.dims[k])
        basis = h.T.nullspace() if h.shape[0] else []
        coker = sympy.Matrix.hstack(*basis).T if basis else sympy.zeros(0, sum(heights))
        newdim = coker.shape[0]
        start = 0
        for a, w in zip(outgoing, heights):
            _, j, c = a
            maps[(j, k, c)] = coker[:, start : start + w]
            start += w
    dims = list(x.dims)
    dims[k] = newdim
    return QuiverRep(nb, dims, maps)


def simple_reflection(b: ExchangeMatrix, d: Sequence[int], k: int) -> tuple[int, ...]:
    """s_k(d): d_k -> sum over neighbours (with multiplicity) - d_k."""
    out = list(d)
    out[k] = sum(abs(b.rows[k][j]) * d[j] for j in range(b.n)) - d[k]
    return tuple(out)


def build_indecomposable(b: ExchangeMatrix, d: Sequence[int]) -> QuiverRep:
    """The indecomposable representation of a Dynkin quiver with dimension vector ``d``.

    Repeats the admissible sink sequence (reverse topological order) on the
    dimension vector until it becomes the simple at the current sink, then
    climbs back from that simple with source reflections.
    """
    d = tuple(d)
    if classify_dynkin(b) is None:
        raise ValueError("build_indecomposable needs a Dynkin quiver")
    if d not in set(positive_roots(b)):
        raise ValueError(f"{d} is not a positive root")
    word = list(reversed(topological_order(b)))
    cur_b, cur_d = b, d
    seq: list[int] = []
    target = None
    for _ in range(64 * b.n):
        for k in word:
            if cur_d[k] == 1 and sum(cur_d) == 1:
                target = k
                break
            cur_d = simple_reflection(cur_b, cur_d, k)
            cur_b = mutate_matrix(cur_b, k)
            seq.append(k)
            if min(cur_d) < 0:
                raise AssertionError(f"reflection sequence for {d} left the positive cone")
        if target is not None:
            break
    if target is None:
        raise AssertionError(f"no reflection sequence found for {d}")
    x = simple(cur_b, target)
    for k in reversed(seq):
        x = reflect(x, k, "source")
    if x.quiver != b or x.dims != d:
        raise AssertionError(f"reflection chain for {d} ended at {x.dims}")
    if hom_dim(x, x) != 1 or ext1_dim(x, x) != 0:
        raise AssertionError(f"constructed representation for {d} is not an exceptional brick")
    return x


def type_a_path(b: ExchangeMatrix) -> list[int]:
    """Vertices of an A_n quiver in order along the underlying path."""
    label = classify_dynkin(b)
    if label is None or not label.startswith("A"):
        raise ValueError("not a type A quiver")
    n = b.n
    if n == 1:
        return [0]
    nbrs = [[j for j in range(n) if b.rows[i][j]] for i in range(n)]
    start = min(v for v in range(n) if len(nbrs[v]) == 1)
    path = [start]
    while len(path) < n:
        path.append(next(w for w in nbrs[path[-1]] if w not in path))
    return path


def interval_module(b: ExchangeMatrix, d: Sequence[int]) -> QuiverRep:
    """Type A indecomposable: 1-dimensional on an interval of the path, identity maps inside it."""
    path = type_a_path(b)
    support = [p for p, v in enumerate(path) if d[v]]
    if not support or any(d[v] not in (0, 1) for v in path) or support != list(range(support[0], support[-1] + 1)):
        raise ValueError(f"{tuple(d)} is not an interval dimension vector")
    maps = {}
    for i, j, c in arrow_keys(b):
        if d[i] and d[j]:
            maps[(i, j, c)] = sympy.Matrix([[1]])
    return QuiverRep(b, d, maps)


ClusterObject = Union[QuiverRep, ShiftedProjective]


def cluster_ext1(objects: Sequence[ClusterObject]) -> list[list[int]]:
    """Symmetric matrix of dim Ext^1 in the cluster category.

    Modules: Ext^1(X, Y) + Ext^1(Y, X).  P_i[1] against M: (dim M)_i.
    Two shifted projectives: 0.
    """
    m = len(objects)
    out = [[0] * m for _ in range(m)]
    for a in range(m):
        for c in range(a, m):
            x, y = objects[a], objects[c]
            if isinstance(x, ShiftedProjective) and isinstance(y, ShiftedProjective):
                v = 0
            elif isinstance(x, ShiftedProjective):
                v = y.dims[x.vertex]
            elif isinstance(y, ShiftedProjective):
                v = x.dims[y.vertex]
            else:
                v = ext1_dim(x, y) + ext1_dim(y, x)
            out[a][c] = out[c][a] = v
    return out


class IndecomposableCache:
    """Memoized ``build_indecomposable`` for one quiver."""

    def __init__(self, b: ExchangeMatrix):
        self.quiver = b
        self._reps: dict[tuple[int, ...], QuiverRep] = {}

    def get(self, d) -> QuiverRep:
        d = tuple(d)
        if d not in self._reps:
            self._reps[d] = build_indecomposable(self.quiver, d)
        return self._reps[d]

    def realize(self, label) -> ClusterObject:
        return label if isinstance(label, ShiftedProjective) else self.get(label.dim)


def verify_tilting_image(g, b: ExchangeMatrix | None = None) -> CheckReport:
    """Each cluster's image under the denominator map must be a rigid object of size n."""
    b = b if b is not None else g.matrix
    if classify_dynkin(b) is None:
        raise ValueError("tilting verification needs a Dynkin quiver")
    cache = IndecomposableCache(b)
    pair_ext: dict[tuple, int] = {}
    violations = []
    images: dict[tuple, list[str]] = {}
    clusters = sorted(g.clusters(), key=lambda c: sorted(x.sort_key() for x in c))
    for cluster in clusters:
        labels = sorted((alpha_map(x) for x in cluster), key=label_key)
        for p in range(len(labels)):
            for q in range(p, len(labels)):
                key = (labels[p], labels[q])
                if key not in pair_ext:
                    objs = [cache.realize(labels[p]), cache.realize(labels[q])]
                    pair_ext[key] = cluster_ext1(objs)[0][1 if p != q else 0]
                if pair_ext[key]:
                    violations.append(
                        {
                            "cluster": sorted(str(x) for x in cluster),
                            "pair": [labels[p].to_json(), labels[q].to_json()],
                            "ext1": pair_ext[key],
                        }
                    )
        images.setdefault(tuple(labels), []).append(sorted(str(x) for x in cluster))
    for labels, members in images.items():
        if len(members) > 1:
            violations.append({"reason": "distinct clusters with the same image", "clusters": members})
    return CheckReport(
        "tilting",
        verdict_for(violations, g.truncated),
        counts={"clusters": len(clusters), "tilting_objects": len(images)},
        violations=violations,
    )
