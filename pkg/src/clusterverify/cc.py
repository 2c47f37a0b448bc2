"""The Caldero-Chapoton map from representations to Laurent polynomials.

Euler characteristics of quiver Grassmannians come from one of two
independent routes: a closure test for thin modules, and point counts over
F_q interpolated to a polynomial and evaluated at q = 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import sympy

from .laurent import LaurentPoly, denominator_vector
from .quiver import ExchangeMatrix, topological_order
from .report import CheckReport, verdict_for
from .reps import QuiverRep, arrow_keys, build_indecomposable, ext1_dim, hom_dim
from .roots import Module, ShiftedProjective, alpha_map, euler_form, positive_roots

MAX_TOTAL_DIM = 6
MAX_DEGREE = 4


class ResourceLimitError(MemoryError):
    pass


class InterpolationError(ArithmeticError):
    """Point counts are not given by an integer polynomial."""


def _sub_vectors(d: Sequence[int]):
    return itertools.product(*(range(v + 1) for v in d))


def chi_thin(m: QuiverRep, e: Sequence[int]) -> int:
    """Euler characteristic of Gr_e(M) for a thin M: 1 if e spans a subrep, else 0."""
    if not m.is_thin():
        raise ValueError(f"module with dimension vector {m.dims} is not thin")
    if any(not 0 <= x <= d for x, d in zip(e, m.dims)):
        return 0
    for (i, j, _), mat in m.maps.items():
        if mat.shape == (1, 1) and mat[0, 0] != 0 and e[i] == 1 and e[j] == 0:
            return 0
    return 1


def _mod_matrix(mat, p: int) -> list[list[int]]:
    rows = []
    for r in range(mat.shape[0]):
        row = []
        for c in range(mat.shape[1]):
            v = sympy.Rational(mat[r, c])
            den = int(v.q)
            if den % p == 0:
                raise ZeroDivisionError(f"denominator {den} vanishes mod {p}")
            row.append(int(v.p) * pow(den, -1, p) % p)
        rows.append(row)
    return rows


def rank_mod(rows: list[list[int]], p: int) -> int:
    rows = [list(r) for r in rows if any(r)]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c] % p), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], -1, p)
        rows[rank] = [v * inv % p for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][c] % p:
                f = rows[r][c]
                rows[r] = [(a - f * b) % p for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def subspaces(d: int, k: int, p: int):
    """All k-dimensional subspaces of F_p^d as (pivots, reduced row echelon rows)."""
    for pivots in itertools.combinations(range(d), k):
        free = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, d) if c not in pivots]
        for values in itertools.product(range(p), repeat=len(free)):
            rows = [[0] * d for _ in range(k)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = 1
            for (r, c), v in zip(free, values):
                rows[r][c] = v
            yield pivots, rows


def _in_span(v: list[int], pivots, rows, p: int) -> bool:
    w = list(v)
    for pc, row in zip(pivots, rows):
        f = w[pc]
        if f:
            w = [(a - f * b) % p for a, b in zip(w, row)]
    return not any(w)


def count_subreps_fq(m: QuiverRep, e: Sequence[int], q: int) -> int:
    """Number of subrepresentations of M over F_q with dimension vector e."""
    if sum(m.dims) > MAX_TOTAL_DIM:
        raise ResourceLimitError(f"total dimension {sum(m.dims)} exceeds {MAX_TOTAL_DIM}")
    if any(not 0 <= x <= d for x, d in zip(e, m.dims)):
        return 0
    b = m.quiver
    mats = {a: _mod_matrix(mat, q) for a, mat in m.maps.items()}
    # sinks first, so every arrow i -> j is checked when S_i is chosen
    order = list(reversed(topological_order(b)))
    out_arrows = {v: [a for a in arrow_keys(b) if a[0] == v] for v in range(b.n)}
    chosen: dict[int, tuple] = {}

    def closed(v, pivots, rows) -> bool:
        for a in out_arrows[v]:
            j = a[1]
            mat = mats[a]
            jp, jr = chosen[j]
            for vec in rows:
                img = [sum(mat[r][c] * vec[c] for c in range(len(vec))) % q for r in range(m.dims[j])]
                if not _in_span(img, jp, jr, q):
                    return False
        return True

    def search(pos: int) -> int:
        if pos == len(order):
            return 1
        v = order[pos]
        total = 0
        for pivots, rows in subspaces(m.dims[v], e[v], q):
            if closed(v, pivots, rows):
                chosen[v] = (pivots, rows)
                total += search(pos + 1)
        chosen.pop(v, None)
        return total

    return search(0)


def _rank_preserved(m: QuiverRep, p: int) -> bool:
    for mat in m.maps.values():
        if 0 in mat.shape:
            continue
        try:
            if rank_mod(_mod_matrix(mat, p), p) != mat.rank():
                return False
        except ZeroDivisionError:
            return False
    return True


def prime_pool(m: QuiverRep, count: int) -> list[int]:
    """The first ``count`` primes at which every arrow map keeps its rank."""
    out = []
    p = 2
    while len(out) < count:
        if _rank_preserved(m, p):
            out.append(p)
        p = sympy.nextprime(p)
    return out


def grassmannian_degree(m: QuiverRep, e: Sequence[int]) -> int:
    return sum(x * (d - x) for x, d in zip(e, m.dims))


def _lagrange_coefficients(xs: list[int], ys: list[int]) -> list[Fraction]:
    """Coefficients (constant term first) of the interpolating polynomial."""
    k = len(xs)
    coeffs = [Fraction(0)] * k
    for i in range(k):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(k):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xs[j] * basis[t + 1]
            denom *= xs[i] - xs[j]
        for t in range(k):
            coeffs[t] += ys[i] * basis[t] / denom
    return coeffs


def chi_interpolated(m: QuiverRep, e: Sequence[int], max_degree: int = MAX_DEGREE) -> int:
    """chi(Gr_e(M)) as P(1), P the point-count polynomial of Gr_e(M) over F_q."""
    if any(not 0 <= x <= d for x, d in zip(e, m.dims)):
        return 0
    deg = grassmannian_degree(m, e)
    if deg > max_degree:
        raise ResourceLimitError(f"Grassmannian of dimension bound {deg} exceeds {max_degree}")
    primes = prime_pool(m, deg + 2)
    counts = [count_subreps_fq(m, e, p) for p in primes]
    coeffs = _lagrange_coefficients(primes[:-1], counts[:-1])
    if any(c.denominator != 1 for c in coeffs):
        raise InterpolationError(f"non-integral counting polynomial {coeffs} for e={tuple(e)}")
    held_out = sum(int(c) * primes[-1] ** t for t, c in enumerate(coeffs))
    if held_out != counts[-1]:
        raise InterpolationError(f"count {counts[-1]} at held-out prime {primes[-1]} disagrees with {held_out}")
    return int(sum(coeffs))


def chi(m: QuiverRep, e: Sequence[int]) -> int:
    return chi_thin(m, e) if m.is_thin() else chi_interpolated(m, e)


@dataclass
class GrassmannianProfile:
    module: QuiverRep
    by_dimvector: dict[tuple[int, ...], int] = field(default_factory=dict)


def grassmannian_profile(m: QuiverRep) -> GrassmannianProfile:
    prof = GrassmannianProfile(m)
    for e in _sub_vectors(m.dims):
        prof.by_dimvector[e] = chi(m, e)
    return prof


def cc_exponent(b: ExchangeMatrix, dims: Sequence[int], e: Sequence[int]) -> list[int]:
    """Exponent of x_i: -<e, alpha_i> - <alpha_i, dim M - e>."""
    n = b.n
    rest = [d - x for d, x in zip(dims, e)]
    out = []
    for i in range(n):
        unit = [0] * n
        unit[i] = 1
        out.append(-euler_form(b, e, unit) - euler_form(b, unit, rest))
    return out


def cc_variable(m: QuiverRep, check_exceptional: bool = True) -> LaurentPoly:
    if check_exceptional and (hom_dim(m, m) != 1 or ext1_dim(m, m) != 0):
        raise ValueError(f"module with dimension vector {m.dims} is not an exceptional brick")
    b = m.quiver
    prof = grassmannian_profile(m)
    terms: dict[tuple[int, ...], int] = {}
    for e, c in prof.by_dimvector.items():
        if c:
            key = tuple(cc_exponent(b, m.dims, e))
            terms[key] = terms.get(key, 0) + c
    return LaurentPoly(b.n, terms)


def beta(obj, b: ExchangeMatrix | None = None) -> LaurentPoly:
    if isinstance(obj, ShiftedProjective):
        if b is None:
            raise ValueError("the quiver is needed to map a shifted projective")
        return LaurentPoly.variable(b.n, obj.vertex)
    return cc_variable(obj)


def cc_entries(b: ExchangeMatrix, roots=None) -> list[dict]:
    rows = []
    for d in roots if roots is not None else positive_roots(b):
        x = cc_variable(build_indecomposable(b, d))
        rows.append({"root": list(d), "cc_variable": x})
    return rows


def verify_alpha_beta_inverse(g, b: ExchangeMatrix | None = None) -> CheckReport:
    """beta of each indecomposable is an explored variable whose denominator is its dimension vector."""
    b = b if b is not None else g.matrix
    variables = set(g.variables())
    violations = []
    entries = []
    hit = set()
    for row in cc_entries(b):
        d, x = tuple(row["root"]), row["cc_variable"]
        present = x in variables
        denom_ok = denominator_vector(x) == d
        matched = present and denom_ok
        entries.append({"root": list(d), "cc_variable": str(x), "matched": matched})
        if matched:
            hit.add(Module(d))
        else:
            violations.append({"root": list(d), "cc_variable": str(x), "present": present, "denominator": list(denominator_vector(x))})
    for i in range(b.n):
        x = beta(ShiftedProjective(i), b)
        if x not in variables or alpha_map(x) != ShiftedProjective(i):
            violations.append({"shifted_projective": i, "reason": "initial variable missing"})
        hit.add(ShiftedProjective(i))
    if g.closed:
        for x in sorted(variables, key=LaurentPoly.sort_key):
            if alpha_map(x) not in hit:
                violations.append({"variable": str(x), "reason": "label not hit by beta"})
    return CheckReport(
        "cc",
        verdict_for(violations, g.truncated),
        counts={"roots": len(entries), "matched": sum(e["matched"] for e in entries), "shifted_projectives": b.n},
        violations=violations,
        entries=entries,
    )
