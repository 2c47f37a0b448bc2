import pytest
from hypothesis import given

from clusterverify.laurent import variables
from clusterverify.quiver import ExchangeMatrix, mutate_matrix
from clusterverify.roots import (
    AlphaAnomaly,
    Module,
    ShiftedProjective,
    alpha_map,
    alpha_table,
    coxeter_matrix,
    coxeter_orbit,
    coxeter_tau,
    euler_form,
    injective_dims,
    positive_roots,
    projective_dims,
    tits_form,
    verify_alpha_injective,
    verify_denominator_theorem,
)
from clusterverify.seeds import explore

from conftest import A2, A3, A4, AFFINE_A2, CYCLE3, D4, KRONECKER, linear_a
from oracles import reflection_closure_roots
from test_quiver import exchange_matrices

x1, x2 = variables(2)


def acyclic_orientation(b):
    """Orient every edge from the smaller to the larger index."""
    return ExchangeMatrix([[abs(b.rows[i][j]) if i < j else -abs(b.rows[i][j]) for j in range(b.n)] for i in range(b.n)])


def test_euler_form_examples():
    assert euler_form(A2, (1, 0), (0, 1)) == -1
    assert tits_form(KRONECKER, (2, 1)) == 1
    empty = ExchangeMatrix([[0, 0], [0, 0]])
    assert euler_form(empty, (2, 3), (5, 7)) == 2 * 5 + 3 * 7


@given(exchange_matrices(max_n=5))
def test_simples_are_roots(b):
    b = acyclic_orientation(b)
    for i in range(b.n):
        e = [0] * b.n
        e[i] = 1
        assert tits_form(b, e) == 1


@given(exchange_matrices(max_n=5))
def test_coxeter_sends_projectives_to_minus_injectives(b):
    b = acyclic_orientation(b)
    phi = coxeter_matrix(b)
    for p, inj in zip(projective_dims(b), injective_dims(b)):
        assert tuple(sum(phi[i][j] * p[j] for j in range(b.n)) for i in range(b.n)) == tuple(-v for v in inj)
        assert coxeter_tau(b, coxeter_tau(b, p), "backward") == p


def test_coxeter_a2_ar_structure():
    # AR sequence 0 -> S2 -> P1 -> S1 -> 0 for 1 -> 2: tau S1 = S2
    assert coxeter_tau(A2, (1, 0)) == (0, 1)
    assert min(coxeter_tau(A2, (1, 1))) < 0
    assert min(coxeter_tau(A2, (0, 1))) < 0
    assert coxeter_tau(A2, (0, 1), "backward") == (1, 0)
    # P1 is also injective
    assert min(coxeter_tau(A2, (1, 1), "backward")) < 0


def test_kronecker_orbits_stay_real_roots():
    orbit = coxeter_orbit(KRONECKER, (1, 2), "backward", 6)
    assert orbit[:2] == [(1, 2), (3, 4)]
    assert all(tits_form(KRONECKER, d) == 1 for d in orbit)


@pytest.mark.parametrize("b,count", [(A2, 3), (A3, 6), (A4, 10), (D4, 12), (linear_a(5), 15)])
def test_positive_root_counts(b, count):
    roots = positive_roots(b)
    assert len(roots) == count
    assert roots == reflection_closure_roots(b)


def test_positive_roots_a2_and_orientation_free():
    assert positive_roots(A2) == [(0, 1), (1, 0), (1, 1)]
    assert positive_roots(mutate_matrix(D4, 0)) == positive_roots(D4)
    with pytest.raises(ValueError):
        positive_roots(KRONECKER)


def test_alpha_map_examples():
    assert alpha_map(x1) == ShiftedProjective(0)
    assert alpha_map((1 + x2) * x1**-1) == Module((1, 0))
    assert alpha_map((1 + x1 + x2) * x1**-1 * x2**-1) == Module((1, 1))
    assert alpha_map(x1 * x2**-1 + x2**-1) == Module((0, 1))
    with pytest.raises(AlphaAnomaly):
        alpha_map(x1**-1 * x2)
    with pytest.raises(AlphaAnomaly) as info:
        alpha_map(x1 * x2)
    assert info.value.variable == x1 * x2


def test_alpha_table_json_shape():
    rows = alpha_table([x1, (1 + x2) * x1**-1])
    assert rows == [
        {"variable": "x1", "label": {"shifted_projective": 0}},
        {"variable": "x1^-1 + x1^-1*x2", "label": {"module": [1, 0]}},
    ]


@pytest.mark.parametrize("b", [A2, A3, A4, D4], ids=["A2", "A3", "A4", "D4"])
def test_denominators_on_dynkin(b):
    rep = verify_denominator_theorem(explore(b))
    assert rep.passed, rep.violations
    assert rep.counts["variables"] == b.n + rep.counts["positive_roots"]


def test_denominator_labels_a2():
    labels = {alpha_map(x) for x in explore(A2).variables()}
    assert labels == {ShiftedProjective(0), ShiftedProjective(1), Module((1, 0)), Module((0, 1)), Module((1, 1))}


def test_kronecker_labels_on_ladder():
    g = explore(KRONECKER, max_depth=6)
    rep = verify_denominator_theorem(g)
    assert rep.verdict == "INCONCLUSIVE-TRUNCATED" and not rep.violations
    for x in g.variables():
        lab = alpha_map(x)
        if isinstance(lab, Module):
            assert abs(lab.dim[0] - lab.dim[1]) == 1


def test_injectivity_and_non_dynkin():
    assert verify_alpha_injective(explore(D4)).passed
    rep = verify_denominator_theorem(explore(AFFINE_A2, max_depth=5))
    assert not rep.violations
    assert "positive_roots" not in rep.counts
    with pytest.raises(ValueError):
        coxeter_matrix(CYCLE3)
