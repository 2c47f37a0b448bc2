"""Numerical representation theory of the path algebra of an acyclic quiver.

Dimension vectors, the Euler form, the Coxeter transformation, positive
roots of Dynkin quivers, and the denominator map from cluster variables to
indecomposable objects of the cluster category.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Union

import numpy as np
import sympy

from .laurent import LaurentPoly, denominator_vector
from .quiver import ExchangeMatrix, classify_dynkin, is_acyclic, topological_order
from .report import CheckReport, verdict_for

ROOT_SCAN_BOUND = 6


def arrow_matrix(b: ExchangeMatrix) -> list[list[int]]:
    return [[max(v, 0) for v in row] for row in b.rows]


def euler_form(b: ExchangeMatrix, x: Sequence[int], y: Sequence[int]) -> int:
    """<x, y> = sum x_i y_i - sum over arrows i->j of x_i y_j."""
    a = arrow_matrix(b)
    n = b.n
    return sum(x[i] * y[i] for i in range(n)) - sum(a[i][j] * x[i] * y[j] for i in range(n) for j in range(n))


def tits_form(b: ExchangeMatrix, d: Sequence[int]) -> int:
    return euler_form(b, d, d)


def _require_acyclic(b: ExchangeMatrix) -> None:
    if not is_acyclic(b):
        raise ValueError("quiver has an oriented cycle")


def path_counts(b: ExchangeMatrix) -> list[list[int]]:
    """``counts[i][j]`` = number of paths i -> j (including the trivial one at i)."""
    _require_acyclic(b)
    n = b.n
    order = topological_order(b)
    a = arrow_matrix(b)
    counts = [[0] * n for _ in range(n)]
    for i in range(n):
        counts[i][i] = 1
        for v in order:
            if counts[i][v]:
                for w in range(n):
                    if a[v][w]:
                        counts[i][w] += counts[i][v] * a[v][w]
    return counts


def projective_dims(b: ExchangeMatrix) -> list[tuple[int, ...]]:
    """dim P_i at vertex j is the number of paths from i to j."""
    c = path_counts(b)
    return [tuple(c[i][j] for j in range(b.n)) for i in range(b.n)]


def injective_dims(b: ExchangeMatrix) -> list[tuple[int, ...]]:
    """dim I_i at vertex j is the number of paths from j to i."""
    c = path_counts(b)
    return [tuple(c[j][i] for j in range(b.n)) for i in range(b.n)]


@lru_cache(maxsize=256)
def coxeter_matrix(b: ExchangeMatrix) -> tuple[tuple[int, ...], ...]:
    """Integer matrix of the Coxeter transformation, acting on column vectors.

    Built from the Euler form as -E^-1 E^T; checked against path-counted
    projectives and injectives (Phi dim P_i = -dim I_i).
    """
    _require_acyclic(b)
    n = b.n
    e = sympy.Matrix(n, n, lambda i, j: (1 if i == j else 0) - max(b.rows[i][j], 0))
    phi = -e.inv() * e.T
    rows = tuple(tuple(int(phi[i, j]) for j in range(n)) for i in range(n))
    for p, inj in zip(projective_dims(b), injective_dims(b)):
        image = _apply(rows, p)
        if image != tuple(-v for v in inj):
            raise AssertionError(f"Coxeter convention broken: Phi{p} = {image}, expected -{inj}")
    return rows


@lru_cache(maxsize=256)
def inverse_coxeter_matrix(b: ExchangeMatrix) -> tuple[tuple[int, ...], ...]:
    n = b.n
    phi = sympy.Matrix(coxeter_matrix(b)).inv()
    return tuple(tuple(int(phi[i, j]) for j in range(n)) for i in range(n))


def _apply(m, d) -> tuple[int, ...]:
    return tuple(sum(m[i][j] * d[j] for j in range(len(d))) for i in range(len(m)))


def coxeter_tau(b: ExchangeMatrix, d: Sequence[int], direction: str = "forward") -> tuple[int, ...]:
    """Phi d (AR translate) or Phi^-1 d (inverse translate) on dimension vectors.

    A result with a negative entry means ``d`` was projective (forward) or
    injective (backward); callers treat that as leaving the module category.
    """
    if direction == "forward":
        return _apply(coxeter_matrix(b), d)
    if direction == "backward":
        return _apply(inverse_coxeter_matrix(b), d)
    raise ValueError(f"direction must be 'forward' or 'backward', not {direction!r}")


def coxeter_orbit(b: ExchangeMatrix, d: Sequence[int], direction: str, steps: int) -> list[tuple[int, ...]]:
    """Iterate ``coxeter_tau`` while the vector stays nonnegative, at most ``steps`` times."""
    out = [tuple(d)]
    for _ in range(steps):
        nxt = coxeter_tau(b, out[-1], direction)
        if min(nxt) < 0:
            break
        out.append(nxt)
    return out


def positive_roots(b: ExchangeMatrix) -> list[tuple[int, ...]]:
    """All d >= 0, d != 0 with Tits form 1, for a Dynkin quiver (brute-force scan)."""
    if classify_dynkin(b) is None:
        raise ValueError("positive_roots needs a Dynkin (ADE) quiver")
    n = b.n
    a = np.array(arrow_matrix(b), dtype=np.int64)
    tail = min(n, 6)
    head = n - tail
    grid = np.indices((ROOT_SCAN_BOUND + 1,) * tail).reshape(tail, -1).T
    found = []
    for prefix in itertools.product(range(ROOT_SCAN_BOUND + 1), repeat=head):
        d = np.hstack([np.tile(np.array(prefix, dtype=np.int64), (len(grid), 1)), grid]) if head else grid
        q = (d * d).sum(axis=1) - np.einsum("ki,ij,kj->k", d, a, d)
        for row in d[q == 1]:
            found.append(tuple(int(v) for v in row))
    return sorted(r for r in found if any(r))


@dataclass(frozen=True, order=True)
class Module:
    """An indecomposable module, identified by its dimension vector."""

    dim: tuple[int, ...]

    def to_json(self):
        return {"module": list(self.dim)}


@dataclass(frozen=True, order=True)
class ShiftedProjective:
    vertex: int

    def to_json(self):
        return {"shifted_projective": self.vertex}


ObjectLabel = Union[Module, ShiftedProjective]


class AlphaAnomaly(ValueError):
    def __init__(self, variable: LaurentPoly, denom: tuple[int, ...]):
        self.variable = variable
        self.denom = denom
        super().__init__(f"denominator vector {denom} of {variable} is neither positive nor -e_i")


def alpha_map(u: LaurentPoly) -> ObjectLabel:
    d = denominator_vector(u)
    if all(v >= 0 for v in d) and any(d):
        return Module(d)
    neg = [i for i, v in enumerate(d) if v]
    if len(neg) == 1 and d[neg[0]] == -1:
        return ShiftedProjective(neg[0])
    raise AlphaAnomaly(u, d)


def label_key(label: ObjectLabel) -> tuple:
    return (0, label.vertex) if isinstance(label, ShiftedProjective) else (1, label.dim)


def alpha_table(variables) -> list[dict]:
    rows = []
    for x in variables:
        try:
            label = alpha_map(x).to_json()
        except AlphaAnomaly as exc:
            label = {"anomaly": list(exc.denom)}
        rows.append({"variable": str(x), "label": label})
    return rows


def verify_denominator_theorem(g, b: ExchangeMatrix | None = None) -> CheckReport:
    """Denominator vectors of explored variables against (almost) positive roots.

    Every non-initial variable must have a nonnegative denominator with Tits
    form 1, initial variables give -e_i, distinct variables give distinct
    labels, and on a closed Dynkin graph the labels are exactly the almost
    positive roots.
    """
    b = b if b is not None else g.matrix
    n = b.n
    initial = set(LaurentPoly.variable(n, i) for i in range(n))
    violations = []
    labels: dict[ObjectLabel, LaurentPoly] = {}
    for x in g.variables():
        try:
            label = alpha_map(x)
        except AlphaAnomaly as exc:
            violations.append({"variable": str(x), "reason": "anomalous denominator", "denominator": list(exc.denom)})
            continue
        if x in initial:
            if label != ShiftedProjective(list(x.max_exponents()).index(1)):
                violations.append({"variable": str(x), "reason": "initial variable not -e_i"})
        elif not isinstance(label, Module):
            violations.append({"variable": str(x), "reason": "non-initial variable with denominator -e_i"})
        elif tits_form(b, label.dim) != 1:
            violations.append({"variable": str(x), "reason": "denominator is not a real root", "denominator": list(label.dim)})
        if label in labels:
            violations.append({"variable": str(x), "reason": "label shared with another variable", "other": str(labels[label])})
        labels[label] = x
    counts = {
        "variables": len(g.variables()),
        "module_labels": sum(isinstance(lab, Module) for lab in labels),
        "shifted_projective_labels": sum(isinstance(lab, ShiftedProjective) for lab in labels),
    }
    if classify_dynkin(b) is not None:
        roots = positive_roots(b)
        counts["positive_roots"] = len(roots)
        if g.closed:
            got = sorted(lab.dim for lab in labels if isinstance(lab, Module))
            if got != roots:
                violations.append({"reason": "module labels differ from positive roots", "missing": [list(r) for r in sorted(set(roots) - set(got))], "extra": [list(r) for r in sorted(set(got) - set(roots))]})
            shifted = sorted(lab.vertex for lab in labels if isinstance(lab, ShiftedProjective))
            if shifted != list(range(n)):
                violations.append({"reason": "shifted projective labels incomplete", "got": shifted})
    return CheckReport("denominators", verdict_for(violations, g.truncated), counts=counts, violations=violations)


def verify_alpha_injective(g) -> CheckReport:
    seen: dict[ObjectLabel, str] = {}
    violations = []
    for x in g.variables():
        try:
            label = alpha_map(x)
        except AlphaAnomaly as exc:
            violations.append({"variable": str(x), "reason": "anomalous denominator", "denominator": list(exc.denom)})
            continue
        if label in seen:
            violations.append({"variable": str(x), "other": seen[label], "label": label.to_json()})
        seen[label] = str(x)
    return CheckReport("injectivity", verdict_for(violations, g.truncated), counts={"labels": len(seen)}, violations=violations)
