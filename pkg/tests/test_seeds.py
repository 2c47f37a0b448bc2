import pytest
import sympy

from clusterverify.laurent import LaurentPoly, positivity_check, reduced_form, variables
from clusterverify.quiver import ExchangeMatrix
from clusterverify.seeds import (
    NotAcyclicError,
    Seed,
    SeedRecord,
    TermLimitExceeded,
    canonical_seed,
    explore,
    initial_seed,
    mutate_seed,
    verify_cluster_determines_seed,
    verify_exchange_uniqueness,
    verify_involution,
    verify_positivity,
)

from conftest import A2, A3, A4, AFFINE_A2, CYCLE3, D4, KRONECKER
from oracles import sympy_explore, sympy_vars, to_sympy

x1, x2 = variables(2)


def test_initial_seed():
    assert initial_seed(A2).cluster == (x1, x2)
    assert initial_seed(KRONECKER).cluster == (x1, x2)
    with pytest.raises(NotAcyclicError):
        initial_seed(CYCLE3)


def test_a2_mutations_by_hand():
    s = mutate_seed(initial_seed(A2), 0)
    assert s.cluster[0] == x1**-1 + x1**-1 * x2
    s = mutate_seed(s, 1)
    assert s.cluster[1] == (x1 + 1 + x2) * x1**-1 * x2**-1
    # oracle: the same two exchanges as sympy rational functions
    y1, y2 = sympy_vars(2)
    a = sympy.cancel((1 + y2) / y1)
    b = sympy.cancel((1 + a) / y2)
    assert sympy.simplify(to_sympy(s.cluster[1], (y1, y2)) - b) == 0


def test_mutation_is_involution_on_seed():
    s = initial_seed(D4)
    for k in range(4):
        assert mutate_seed(mutate_seed(s, k), k) == s


def test_new_variable_differs():
    s = initial_seed(A3)
    for k in range(3):
        assert mutate_seed(s, k).cluster[k] != s.cluster[k]


@pytest.mark.parametrize(
    "b,clusters,nvars",
    [(A2, 5, 5), (A3, 14, 9), (A4, 42, 14), (D4, 50, 16)],
    ids=["A2", "A3", "A4", "D4"],
)
def test_finite_type_closure(b, clusters, nvars):
    g = explore(b)
    assert g.closed
    assert len(g.clusters()) == clusters
    assert len(g.records) == clusters
    assert len(g.variables()) == nvars


@pytest.mark.parametrize("b", [A2, A3], ids=["A2", "A3"])
def test_explore_matches_sympy_oracle(b):
    g = explore(b)
    want, closed = sympy_explore(b)
    assert closed
    xs = sympy_vars(b.n)
    got = {frozenset(sympy.cancel(to_sympy(x, xs)) for x in c) for c in g.clusters()}
    assert got == want


def test_a2_variables():
    g = explore(A2)
    want = {x1, x2, (1 + x2) * x1**-1, (1 + x1 + x2) * x1**-1 * x2**-1, (1 + x1) * x2**-1}
    assert set(g.variables()) == want


def test_kronecker_truncates():
    g = explore(KRONECKER, max_depth=6)
    assert g.truncated
    assert g.max_depth == 6
    assert len(g.records) == 13


def test_max_seeds_limit():
    g = explore(D4, max_seeds=10)
    assert g.truncated and len(g.records) == 10


def test_max_terms_guard():
    g = explore(KRONECKER, max_depth=20, max_terms=12)
    assert g.truncated
    assert max(len(x) for x in g.variables()) <= 12


def test_deterministic_across_workers():
    a = explore(D4, workers=1)
    b = explore(D4, workers=4)
    assert [(r.seed, r.depth, r.neighbors) for r in a.records] == [(r.seed, r.depth, r.neighbors) for r in b.records]


def test_cluster_determines_seed_reports():
    rep = verify_cluster_determines_seed(explore(A2))
    assert rep.passed and rep.counts["groups"] == 5
    rep = verify_cluster_determines_seed(explore(D4))
    assert rep.passed and rep.counts["groups"] == 50


def test_forged_seed_is_detected():
    g = explore(A3)
    real = g.records[5].seed
    forged = canonical_seed(Seed(real.cluster, ExchangeMatrix([[0, 1, 1], [-1, 0, 1], [-1, -1, 0]])))
    assert forged.matrix != real.matrix
    g.records.append(SeedRecord(forged, 9, True))
    rep = verify_cluster_determines_seed(g)
    assert rep.verdict == "FAIL" and len(rep.violations) == 1


def test_exchange_uniqueness():
    rep = verify_exchange_uniqueness(explore(A2))
    assert rep.passed and rep.counts["faces"] == 5
    rep = verify_exchange_uniqueness(explore(A3))
    assert rep.passed and rep.counts["faces"] == 21


def test_exchange_uniqueness_truncated_is_inconclusive():
    rep = verify_exchange_uniqueness(explore(KRONECKER, max_depth=4))
    assert rep.verdict == "INCONCLUSIVE-TRUNCATED"
    assert rep.counts["open_faces"] == 2


def test_positivity_and_involution_on_graphs():
    for b, depth in [(D4, 8), (KRONECKER, 8), (AFFINE_A2, 6)]:
        g = explore(b, max_depth=depth)
        assert verify_positivity(g).passed
        assert verify_involution(g).passed


def test_reduced_numerators_are_positive_on_a2():
    for x in explore(A2).variables():
        assert positivity_check(reduced_form(x).numerator)


def test_no_polynomial_variables_flagged():
    for b in (A3, D4, KRONECKER, AFFINE_A2):
        assert explore(b, max_depth=6).notable == []


def test_seed_rank_one():
    g = explore(ExchangeMatrix([[0]]))
    assert [str(x) for x in g.variables()] == ["2*x1^-1", "x1"]
    assert isinstance(g.variables()[0], LaurentPoly)


def test_term_guard_stops_wild_blowup():
    # matrix entries reach 128 by depth 4, so one exchange would be enormous
    wild = ExchangeMatrix([[0, 2, 0], [-2, 0, 2], [0, -2, 0]])
    g = explore(wild, max_depth=6, max_terms=5000)
    assert g.truncated
    assert max(len(x) for x in g.variables()) <= 5000
    with pytest.raises(TermLimitExceeded):
        s = initial_seed(wild)
        for k in (1, 0, 2, 1, 0, 2, 1):
            s = mutate_seed(s, k, max_terms=5000)
