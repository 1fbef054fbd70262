import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from errors import CurvatureUnknown, DomainViolation, UnknownFunction
from function_catalog import (
    CATALOG,
    Curvature,
    Domain,
    Interval,
    catalog_get,
    catalog_names,
    concave_view,
    mirror,
    user_function,
)

NAMES = sorted(CATALOG) + ["power(0.3)"]


# ---------- lookup ----------
def test_catalog_names_lists_every_entry():
    names = catalog_names()
    for name in CATALOG:
        assert name in names
    assert "power(p)" in names


@pytest.mark.parametrize("name", NAMES)
def test_catalog_entries_have_typical_range_inside_domain(name):
    f = catalog_get(name)
    assert f.typical is not None
    f.check_interval(f.typical)


def test_unknown_name_raises_and_is_a_key_error():
    with pytest.raises(UnknownFunction):
        catalog_get("cosh")
    with pytest.raises(KeyError):
        catalog_get("")


def test_power_is_parsed_with_its_exponent():
    f = catalog_get("power(0.3)")
    assert f.name == "power(0.3)"
    assert f(8.0) == pytest.approx(8.0 ** 0.3)
    assert f.curvature is Curvature.STRICTLY_CONCAVE


@pytest.mark.parametrize("text", ["power(1.5)", "power(0)", "power(abc)", "power(-0.5)"])
def test_power_outside_unit_interval_is_rejected(text):
    with pytest.raises(UnknownFunction):
        catalog_get(text)


def test_curvature_tags():
    assert catalog_get("ln").curvature is Curvature.STRICTLY_CONCAVE
    assert catalog_get("exp_convex").curvature is Curvature.STRICTLY_CONVEX
    affine = catalog_get("affine")
    assert affine.curvature is Curvature.CONCAVE
    assert not affine.curvature.is_strict


# ---------- analytic pieces agree with the function ----------
@pytest.mark.parametrize("name", NAMES)
def test_tagged_curvature_holds_on_typical_range(name):
    f = catalog_get(name)
    rng = np.random.default_rng(7)
    lo, width = f.typical.lo, f.typical.width
    # 1000 triples a < x < b, b - a >= width / 10, x at least 5% inside [a, b]
    a = lo + 0.45 * width * rng.uniform(size=1000)
    b = f.typical.hi - 0.45 * width * rng.uniform(size=1000)
    x = a + (b - a) * rng.uniform(0.05, 0.95, size=1000)
    fa, fb = f.eval_array(a), f.eval_array(b)
    gap = f.eval_array(x) - (fa + (fb - fa) * (x - a) / (b - a))
    if f.curvature.is_convex:
        gap = -gap
    if f.curvature.is_strict:
        assert np.all(gap > 0)
    else:
        assert np.all(gap >= -1e-12)


@pytest.mark.parametrize("name", NAMES)
@settings(max_examples=40, deadline=None)
@given(t=st.floats(0.02, 0.98))
def test_derivative_matches_central_difference(name, t):
    f = catalog_get(name)
    x = f.typical.lo + t * f.typical.width
    h = 1e-6 * max(1.0, abs(x))
    numeric = (f(x + h) - f(x - h)) / (2 * h)
    assert f.derivative(x) == pytest.approx(numeric, rel=1e-5, abs=1e-6)


@pytest.mark.parametrize("name", NAMES)
@settings(max_examples=25, deadline=None)
@given(s=st.floats(0.0, 0.9), w=st.floats(0.05, 1.0))
def test_antiderivative_matches_quadrature(name, s, w):
    f = catalog_get(name)
    a = f.typical.lo + s * f.typical.width
    b = min(f.typical.hi, a + w * f.typical.width)
    reference, _ = quad(lambda x: float(f(x)), a, b, epsabs=1e-12, epsrel=1e-12)
    assert f.antiderivative(b) - f.antiderivative(a) == pytest.approx(reference, rel=1e-9, abs=1e-11)


def test_closed_form_splits_for_ln():
    f = catalog_get("ln")
    assert f.minimax_split(0.1, 10.0) == pytest.approx(1.0)
    assert f.area_split(0.1, 10.0) == pytest.approx(9.9 / math.log(100.0))
    # array-safe
    out = f.minimax_split(np.array([1.0, 4.0]), np.array([4.0, 9.0]))
    assert np.allclose(out, [2.0, 6.0])


# ---------- mirror ----------
def test_mirror_negates_and_flips_curvature():
    f = catalog_get("exp_convex")
    g = mirror(f)
    assert g.curvature is Curvature.STRICTLY_CONCAVE
    assert g.name == "mirror(exp_convex)"
    for x in (0.0, 1.3, 3.0):
        assert g(x) == -f(x)
        assert g.derivative(x) == -f.derivative(x)
        assert g.antiderivative(x) == -f.antiderivative(x)


def test_mirror_twice_is_identity():
    f = catalog_get("sqrt")
    assert mirror(mirror(f)) is f


def test_mirror_keeps_closed_forms():
    g = mirror(catalog_get("ln"))
    assert g.minimax_split(0.1, 10.0) == pytest.approx(1.0)


def test_mirror_of_unknown_curvature_raises():
    f = user_function("mystery", math.sin)
    with pytest.raises(CurvatureUnknown):
        mirror(f)


def test_concave_view():
    ln = catalog_get("ln")
    assert concave_view(ln) is ln
    assert concave_view(catalog_get("exp_convex")).curvature.is_concave

    f = user_function("cbrt", np.cbrt, Domain(0.0, math.inf))
    with pytest.raises(CurvatureUnknown):
        concave_view(f)
    assert concave_view(f, assume_concave=True).curvature is Curvature.STRICTLY_CONCAVE


# ---------- intervals, domains, evaluation ----------
@pytest.mark.parametrize("lo,hi", [(1.0, 1.0), (2.0, 1.0), (0.0, math.inf), (math.nan, 1.0)])
def test_bad_intervals_raise(lo, hi):
    with pytest.raises(DomainViolation):
        Interval(lo, hi)


def test_domain_bounds():
    catalog_get("sqrt").check_interval(Interval(0.0, 1.0))
    with pytest.raises(DomainViolation):
        catalog_get("ln").check_interval(Interval(0.0, 1.0))
    with pytest.raises(DomainViolation):
        catalog_get("x_ln_x_neg").check_interval(Interval(-1.0, 1.0))


def test_eval_array_falls_back_for_scalar_callables():
    f = user_function("log_scalar", math.log, Domain(0.0, math.inf))
    xs = np.array([1.0, math.e, 10.0])
    assert np.allclose(f.eval_array(xs), np.log(xs))
    # no derivative given: central difference
    assert f.slope_at(2.0) == pytest.approx(0.5, rel=1e-6)
