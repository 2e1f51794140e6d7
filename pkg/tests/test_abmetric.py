import math

import numpy as np
import pytest
import sympy
from hypothesis import assume, given, strategies as st

from gograph.abmetric import (
    PHI_FAMILIES,
    DomainViolation,
    InvariantMetric,
    MetricError,
    MetricVector,
    SingularDenominator,
    admissibility_bound,
    admissibility_check,
    fundamental_tensor_numeric,
    get_phi,
    minkowski_norm,
    zeta_numeric,
)
from gograph.exact import Matrix, parse_expr

G = np.diag([1.0, 2.0, 0.5])
V = np.array([0.3, -0.1, 0.2])

vectors = st.lists(st.floats(-2, 2), min_size=3, max_size=3).map(np.array)


def _nonzero(y):
    return float(y @ G @ y) > 1e-2


_SYM_PHI = {
    "riemannian": lambda s: sympy.Integer(1),
    "randers": lambda s: 1 + s,
    "quadratic": lambda s: (1 + s) ** 2,
}


def _sympy_tensor(phi: str):
    ys = sympy.symbols("y0:3", real=True)
    y = sympy.Matrix(ys)
    g = sympy.Matrix(np.diag(G).tolist()).applyfunc(sympy.nsimplify)
    g = sympy.diag(*g)
    v = sympy.Matrix([sympy.nsimplify(x) for x in V])
    a = (y.T * g * y)[0]
    b = (y.T * g * v)[0]
    f2 = a * _SYM_PHI[phi](b / sympy.sqrt(a)) ** 2
    hess = sympy.hessian(f2 / 2, ys)
    return sympy.lambdify(ys, hess, "numpy")


_ORACLE = {name: _sympy_tensor(name) for name in PHI_FAMILIES}


@pytest.mark.parametrize("phi", list(PHI_FAMILIES))
@given(y=vectors, u=vectors, w=vectors)
def test_finite_difference_tensor_matches_symbolic_hessian(phi, y, u, w):
    assume(_nonzero(y))
    s = float(y @ G @ V) / math.sqrt(float(y @ G @ y))
    assume(abs(s) < 0.9)
    exact = u @ np.array(_ORACLE[phi](*y), dtype=float) @ w
    approx = fundamental_tensor_numeric(y, u, w, G, V, phi, richardson=True)
    scale = 1 + np.linalg.norm(u) * np.linalg.norm(w) / float(y @ G @ y)
    assert abs(approx - exact) < 1e-6 * scale


@given(y=vectors, u=vectors, w=vectors, phi=st.sampled_from(list(PHI_FAMILIES)))
def test_stencil_is_exactly_symmetric(y, u, w, phi):
    assume(_nonzero(y))
    for r in (False, True):
        assert fundamental_tensor_numeric(y, u, w, G, V, phi, richardson=r) == fundamental_tensor_numeric(
            y, w, u, G, V, phi, richardson=r
        )


@given(y=vectors, lam=st.floats(0.1, 10), phi=st.sampled_from(list(PHI_FAMILIES)))
def test_zeta_is_homogeneous_of_degree_one(y, lam, phi):
    assume(_nonzero(y))
    s = float(y @ G @ V) / math.sqrt(float(y @ G @ y))
    assume(abs(s) < 0.9)
    assert zeta_numeric(lam * y, G, V, phi) == pytest.approx(lam * zeta_numeric(y, G, V, phi), rel=1e-10, abs=1e-12)


@given(y=vectors, phi=st.sampled_from(list(PHI_FAMILIES)))
def test_tensor_on_the_base_point_gives_the_squared_norm(y, phi):
    assume(_nonzero(y))
    f = minkowski_norm(y, G, V, phi)
    assert fundamental_tensor_numeric(y, y, y, G, V, phi, richardson=True) == pytest.approx(f * f, rel=1e-7)


def test_riemannian_tensor_is_alpha():
    y, u, w = np.array([1.0, 0.2, -0.3]), np.array([0.0, 1.0, 2.0]), np.array([1.0, -1.0, 0.5])
    assert fundamental_tensor_numeric(y, u, w, G, V, "riemannian") == pytest.approx(u @ G @ w, abs=1e-9)
    assert zeta_numeric(y, G, V, "riemannian") == 0.0


def test_zeta_singular_denominator():
    v = np.array([1.0, 0.0, 0.0])
    with pytest.raises(SingularDenominator):
        zeta_numeric(np.array([2.0, 0.0, 0.0]), np.eye(3), v, "quadratic")


def test_zero_vector_and_bad_step():
    with pytest.raises(MetricError):
        minkowski_norm(np.zeros(3), G, V, "randers")
    with pytest.raises(MetricError):
        fundamental_tensor_numeric(np.ones(3), np.ones(3), np.ones(3), G, V, "randers", step=0)


# --- admissibility -------------------------------------------------------


@given(st.floats(0, 0.999))
def test_randers_margin_is_one(b):
    rep = admissibility_check("randers", b)
    assert rep.passed and rep.margin == pytest.approx(1.0, abs=1e-12)


def test_riemannian_margin_is_exactly_one():
    rep = admissibility_check("riemannian", 3.0)
    assert rep.margin == 1.0 and rep.min_phi == 1.0


@given(st.floats(0, 0.99))
def test_quadratic_margin_closed_form(b):
    rep = admissibility_check("quadratic", b)
    assert rep.margin == pytest.approx(1 - b * b, abs=1e-12)
    assert rep.min_phi == pytest.approx((1 - b) ** 2, abs=1e-12)


@given(st.sampled_from(list(PHI_FAMILIES)), st.floats(0, 0.98), st.floats(0, 1))
def test_admissibility_is_monotone_in_b(phi, b, frac):
    if admissibility_check(phi, b).passed:
        assert admissibility_check(phi, b * frac).passed


def test_admissibility_bounds():
    assert admissibility_bound("riemannian") == 10.0
    assert admissibility_bound("randers") == pytest.approx(1.0, abs=1e-6)
    assert admissibility_bound("quadratic") == pytest.approx(1.0, abs=1e-6)
    assert not admissibility_check("quadratic", 1.5).passed


@pytest.mark.parametrize("b", [-0.1, 1.0, 2.0])
def test_randers_domain(b):
    with pytest.raises(DomainViolation):
        admissibility_check("randers", b)


def test_grid_and_family_errors():
    with pytest.raises(MetricError):
        admissibility_check("randers", 0.5, grid=2)
    with pytest.raises(MetricError):
        get_phi("kropina")


# --- exact containers ----------------------------------------------------


def test_invariant_metric_container():
    m = InvariantMetric.diagonal([1, parse_expr("c"), 2])
    assert m.parameters() == {"c"}
    assert m.inner((1, 1, 0), (0, parse_expr("x1"), 0)) == parse_expr("c*x1")
    assert m.is_positive_definite({"c": 0.5})
    assert not m.is_positive_definite({"c": -0.5})
    assert np.allclose(m.subs({"c": 3}).numeric(), np.diag([1, 3, 2]))
    with pytest.raises(MetricError):
        InvariantMetric(Matrix([[1, 2], [0, 1]]))
    with pytest.raises(MetricError):
        m.numeric()


def test_metric_vector_container():
    v = MetricVector((0, parse_expr("v"), 0))
    assert not v.is_zero() and len(v) == 3
    assert np.allclose(v.numeric({"v": 2}), [0, 2, 0])
    assert v.subs({"v": 0}).is_zero()
