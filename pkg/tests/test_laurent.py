import importlib

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clusterverify import _kernels_py
from clusterverify.laurent import (
    WIDTH,
    DimensionError,
    DivisionFailure,
    LaurentPoly,
    _bias,
    arithmetic,
    exact_div,
    monomial_of_dimvector,
    parse,
    positivity_check,
    reduced_form,
    render,
    variables,
)

x1, x2 = variables(2)


def poly(n, terms):
    return LaurentPoly(n, terms)


def laurent_polys(n=2, lo=-3, hi=3, max_terms=5, coeffs=st.integers(-4, 4)):
    exps = st.tuples(*[st.integers(lo, hi)] * n)
    return st.dictionaries(exps, coeffs, max_size=max_terms).map(lambda t: LaurentPoly(n, t))


def test_add_cancels():
    assert (1 + x2) + (x1 - 1) == x1 + x2


def test_monomial_scaling():
    assert (1 + x2) * x1**-1 == poly(2, {(-1, 0): 1, (-1, 1): 1})


def test_expansion():
    assert (1 + x1) * (1 + x2) == poly(2, {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1})


def test_arithmetic_dispatch_and_dimension_error():
    assert arithmetic(1 + x2, x1 - 1, "add") == x1 + x2
    assert arithmetic(1 + x1, 1 + x2, "mul") == 1 + x1 + x2 + x1 * x2
    with pytest.raises(DimensionError):
        arithmetic(x1, LaurentPoly.variable(3, 0), "add")


def test_zero_coefficients_dropped():
    p = poly(2, {(1, 0): 2, (0, 1): 0})
    assert len(p) == 1
    assert not (x1 - x1)
    assert len(x1 - x1) == 0


def test_exact_div_refactor():
    assert exact_div(1 + x1 + x2 + x1 * x2, 1 + x2) == 1 + x1


def test_exact_div_by_monomial():
    assert exact_div(1 + x2, x1) == x1**-1 + x1**-1 * x2


def test_exact_div_failure_carries_remainder():
    # oracle: at x1 = -1 the divisor vanishes but the dividend 1 + x2 does not,
    # so no Laurent quotient can exist
    a, b = 1 + x2, 1 + x1
    assert b.evaluate((-1, 2)) == 0 and a.evaluate((-1, 2)) != 0
    with pytest.raises(DivisionFailure) as info:
        exact_div(a, b)
    assert info.value.remainder


def test_exact_div_zero_divisor():
    with pytest.raises(ZeroDivisionError):
        exact_div(x1, LaurentPoly.zero(2))


def test_reduced_form_examples():
    rf = reduced_form(x1**-1 + x1**-1 * x2)
    assert rf.numerator == 1 + x2 and rf.denom_vector == (1, 0)
    rf = reduced_form(x1)
    assert rf.numerator == 1 and rf.denom_vector == (-1, 0)
    u = (x1 + 1 + x2) * x1**-1 * x2**-1
    assert reduced_form(u).denom_vector == (1, 1)
    with pytest.raises(ValueError):
        reduced_form(LaurentPoly.zero(2))


def test_positivity_examples():
    assert positivity_check(1 + x1 + x2)
    assert not positivity_check(x1)
    with pytest.raises(ValueError):
        positivity_check(x1**-1)


def test_monomial_of_dimvector():
    assert monomial_of_dimvector((1, 0)) == x1
    assert monomial_of_dimvector((0, 0)) == 1
    assert monomial_of_dimvector((2, 1)) == x1**2 * x2
    with pytest.raises(ValueError):
        monomial_of_dimvector((-1, 0))


def test_render_canonical_order():
    assert render(1 + x1 * x2**-1) == "1 + x1*x2^-1"
    assert render(poly(2, {(0, 0): -2, (1, 0): 3})) == "-2 + 3*x1"
    assert render(LaurentPoly.zero(2)) == "0"


@given(laurent_polys(n=3))
def test_render_parse_roundtrip(p):
    assert parse(render(p), 3) == p


def test_parse_rejects_garbage():
    for bad in ["x3", "2x1", "x1^", "+ x1", "x1 + "]:
        with pytest.raises(ValueError):
            parse(bad, 2)


@given(laurent_polys(), laurent_polys(), laurent_polys())
def test_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a and a * b == b * a
    assert a * (b + c) == a * b + a * c


@given(laurent_polys(), laurent_polys().filter(bool))
def test_exact_div_roundtrip(a, b):
    assert exact_div(a * b, b) == a


@given(laurent_polys().filter(bool))
def test_reduced_form_reconstructs(u):
    rf = reduced_form(u)
    assert rf.reconstruct() == u
    assert rf.numerator.min_exponents() == (0, 0)


@given(laurent_polys(lo=0, hi=3, coeffs=st.integers(1, 5)).filter(bool))
def test_positivity_implies_no_variable_divides(f):
    # a polynomial that x_i divides vanishes at the i-th test point
    if positivity_check(f):
        assert all(m == 0 for m in f.min_exponents())


def _backends():
    mods = [_kernels_py]
    try:
        mods.append(importlib.import_module("clusterverify._kernels"))
    except ImportError:
        pass
    return mods


@pytest.mark.parametrize("mod", _backends(), ids=lambda m: m.__name__.rsplit(".", 1)[-1])
@given(a=laurent_polys(n=3), b=laurent_polys(n=3).filter(bool))
@settings(max_examples=200)
def test_backends_agree_with_reference(mod, a, b):
    bias = _bias(3)
    ref = _kernels_py
    assert mod.mul(a._t, b._t, bias) == ref.mul(a._t, b._t, bias)
    assert mod.add(a._t, b._t) == ref.add(a._t, b._t)
    assert mod.sub(a._t, b._t) == ref.sub(a._t, b._t)
    prod = ref.mul(a._t, b._t, bias)
    q, r = mod.divexact(prod, b._t, 3, WIDTH, bias)
    assert r == {} and q == a._t
    q1, r1 = mod.divexact(a._t, b._t, 3, WIDTH, bias)
    q2, r2 = ref.divexact(a._t, b._t, 3, WIDTH, bias)
    assert (q1, r1) == (q2, r2)


def test_big_coefficients_stay_exact():
    p = (1 + x1 + x2) ** 60
    assert max(p.coefficients()) > 2**64
    assert exact_div(p, (1 + x1 + x2) ** 59) == 1 + x1 + x2
