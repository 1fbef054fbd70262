import math

import numpy as np
import pytest

from function_catalog import Curvature, Domain, Interval, catalog_get, user_function

LN_RANGE = Interval(0.1, 10.0)
UNIT_RANGE = Interval(-1.0, 1.0)
EXP_RANGE = Interval(0.0, 3.0)


# Per-interval max error of ln over [a, b], as a function of r = b / a.
def ln_interval_error(a: float, b: float) -> float:
    r = b / a
    c = (r - 1.0) / math.log(r)
    return math.log(c) - 1.0 + 1.0 / c


@pytest.fixture
def ln():
    return catalog_get("ln")


@pytest.fixture
def neg_square():
    return catalog_get("neg_square")


@pytest.fixture
def exp_convex():
    return catalog_get("exp_convex")


@pytest.fixture
def neg_exp():
    # -exp written out by hand, tagged concave
    return user_function(
        "neg_exp",
        lambda x: -np.exp(x),
        Domain(),
        curvature=Curvature.STRICTLY_CONCAVE,
        derivative=lambda x: -np.exp(x),
        antiderivative=lambda x: -np.exp(x),
    )


@pytest.fixture
def quiet_env():
    return {"BREAKLINE_LOG": "off"}
