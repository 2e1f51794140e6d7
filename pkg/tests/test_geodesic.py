from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gograph import catalog
from gograph.abmetric import PHI_FAMILIES, InvariantMetric
from gograph.exact import ZETA, Matrix, RatFunc, parse_expr, same_row_space
from gograph.geodesic import (
    LINEAR,
    RATIONAL,
    UNSOLVABLE,
    DecompositionMismatch,
    DegenerateVector,
    GraphError,
    NotCentral,
    NotInvariant,
    NotNaturallyReductive,
    build_system,
    check_go,
    classify,
    corrupt,
    graph_via_pnr,
    graph_via_t2,
    linear_map,
    solve_graph,
    verify_graph_numeric,
    verify_residual,
)

EQUAL_C = {"c1": parse_expr("c"), "c2": parse_expr("c"), "c3": parse_expr("c")}


def _fixture_matrix(rows):
    return Matrix([[parse_expr(e) for e in r] for r in rows])


def _system(id, variant="default", mode="finsler", bind=None):
    loaded = catalog.load(id, variant)
    metric = loaded.metric.subs(bind) if bind else loaded.metric
    vector = loaded.vector if mode == "finsler" else None
    return build_system(loaded.space, metric, vector, mode)


SYSTEM_CASES = [
    ("s5-su3", "default", "default", "finsler", None),
    ("s5-u3", "default", "default", "finsler", None),
    ("s5-u3", "nr", "nr", "finsler", None),
    ("s7-sp2", "default", "riemannian", "riemannian", None),
    ("s7-sp2", "default", "finsler", "finsler", EQUAL_C),
    ("s7-sp2u1", "default", "default", "finsler", None),
    ("s7-sp2u1", "central", "central", "finsler", None),
    ("s7-sp2sp1", "default", "riemannian", "riemannian", None),
]


@pytest.mark.parametrize("id, variant, key, mode, bind", SYSTEM_CASES)
def test_system_matches_transcribed_matrix(id, variant, key, mode, bind):
    system = _system(id, variant, mode, bind)
    expected = _fixture_matrix(catalog.get(id).fixtures["systems"][key])
    assert same_row_space(system.augmented(), expected)


def test_rank_claims():
    assert check_go(*_args("s5-su3")).rank_A == 3
    assert check_go(*_args("s7-sp2u1")).rank_A == 4


def _args(id, variant="default", mode="finsler"):
    loaded = catalog.load(id, variant)
    return loaded.space, loaded.metric, loaded.vector if mode == "finsler" else None, mode


def _assert_matches(graph, fixture):
    assert set(fixture) == set(graph.unknowns)
    for label, text in fixture.items():
        assert graph.component(label) == parse_expr(text), label


def test_riemannian_u3_graph_is_linear():
    graph = solve_graph(_system("s5-u3", mode="riemannian"))
    assert graph.classification == LINEAR
    _assert_matches(graph, catalog.get("s5-u3").fixtures["graphs"][("default", "riemannian")])
    assert graph.nullity == 1


def test_finsler_u3_graph_on_the_shifted_complement():
    loaded = catalog.load("s5-u3", "nr")
    graph = graph_via_pnr(loaded.space, loaded.metric, loaded.central)
    _assert_matches(graph, catalog.get("s5-u3").fixtures["graphs"][("nr", "pnr")])
    direct = solve_graph(_system("s5-u3", "nr"))
    assert direct.component("H0") == parse_expr("-2*c*v*zeta")
    assert graph.component("H0").subs({ZETA: parse_expr("v*zeta")}) == direct.component("H0")


def test_sp2sp1_graph():
    graph = solve_graph(_system("s7-sp2sp1", mode="riemannian"))
    assert graph.is_linear
    _assert_matches(graph, catalog.get("s7-sp2sp1").fixtures["graphs"][("default", "riemannian")])


def test_sp2u1_finsler_graph_components():
    graph = solve_graph(_system("s7-sp2u1", "central"))
    _assert_matches(graph, catalog.get("s7-sp2u1").fixtures["graphs"][("central", "finsler")])
    assert graph.classification == RATIONAL
    # the norm squared, up to a factor free of coordinates and zeta
    factor = graph.common_denominator().divide_exact(parse_expr("x1^2 + x2^2 + x3^2 + x4^2").num)
    assert factor.graded_degree() == 0


@pytest.mark.parametrize("mode", ["riemannian", "finsler"])
def test_su3_degree_claim(mode):
    graph = solve_graph(_system("s5-su3", mode=mode))
    assert graph.classification == RATIONAL
    assert graph.degrees == (3, 2)


def test_negative_verdicts():
    loaded = catalog.load("s7-sp2")
    riem = check_go(loaded.space, loaded.metric, None, "riemannian")
    assert not riem and riem.rank_A < riem.rank_augmented
    assert check_go(loaded.space, loaded.metric.subs(EQUAL_C), None, "riemannian")
    fins = check_go(loaded.space, loaded.metric, loaded.vector, "finsler")
    assert not fins
    assert not check_go(loaded.space, loaded.metric.subs(EQUAL_C), loaded.vector, "finsler")
    graph = solve_graph(_system("s7-sp2"))
    assert graph.classification == UNSOLVABLE and graph.witness is not None
    assert "Unsolvable" in graph.summary()


@pytest.mark.parametrize("phi", list(PHI_FAMILIES))
def test_substitution_route_agrees_with_direct_solve(phi):
    loaded = catalog.load("s7-sp2u1", "central")
    t2 = graph_via_t2(loaded.space, loaded.metric, loaded.vector, phi=phi)
    direct = solve_graph(build_system(loaded.space, loaded.metric, loaded.vector, "finsler"))
    if PHI_FAMILIES[phi].constant:
        direct = direct.subs({ZETA: 0})
    assert t2.components == direct.components
    assert t2.route == "t2"


def test_route_preconditions():
    base = catalog.load("s7-sp2u1")
    with pytest.raises(DecompositionMismatch):
        graph_via_t2(base.space, base.metric, base.vector)
    with pytest.raises(DegenerateVector):
        graph_via_t2(base.space, base.metric, None)
    with pytest.raises(NotNaturallyReductive):
        graph_via_pnr(base.space, base.metric, base.central)
    nr = catalog.load("s5-u3", "nr")
    with pytest.raises(NotCentral):
        graph_via_pnr(nr.space, nr.metric, nr.space.algebra.vector({"Zbar": 1}))


def test_build_system_preconditions():
    loaded = catalog.load("s5-su3")
    with pytest.raises(DegenerateVector):
        build_system(loaded.space, loaded.metric, None, "finsler")
    with pytest.raises(NotInvariant):
        build_system(loaded.space, loaded.metric, {"X1": 1}, "finsler")
    with pytest.raises(NotInvariant):
        build_system(loaded.space, InvariantMetric.diagonal([1, 2, 1, 1, 1]), None, "riemannian")
    with pytest.raises(GraphError):
        build_system(loaded.space, loaded.metric, None, "lorentzian")
    with pytest.raises(GraphError):
        build_system(loaded.space, loaded.metric, (1, 2), "finsler")


# --- properties ----------------------------------------------------------

SOLVABLE = [
    ("s5-su3", "default", "finsler"),
    ("s5-u3", "default", "riemannian"),
    ("s7-sp2u1", "central", "finsler"),
    ("s7-sp2sp1", "default", "riemannian"),
    ("cp3-sp2", "default", "riemannian"),
]

_GRAPH_CACHE = {}


def _graph(id, variant, mode):
    key = (id, variant, mode)
    if key not in _GRAPH_CACHE:
        system = _system(id, variant, mode)
        _GRAPH_CACHE[key] = (system, solve_graph(system))
    return _GRAPH_CACHE[key]


@pytest.mark.parametrize("case", SOLVABLE)
@given(lam=st.fractions(min_value=Fraction(1, 5), max_value=5, max_denominator=7))
def test_graph_is_homogeneous_of_degree_one(case, lam):
    system, graph = _graph(*case)
    lam = RatFunc.coerce(lam)
    scale = {c: lam * RatFunc.var(c) for c in (*graph.coordinates, ZETA)}
    for comp in graph.components:
        assert comp.subs(scale) == lam * comp


@pytest.mark.parametrize("case", SOLVABLE)
def test_graph_satisfies_the_bracket_equations(case):
    system, graph = _graph(*case)
    assert verify_residual(system, graph)
    assert not verify_residual(system, corrupt(graph)) or not any(graph.components)


@pytest.mark.parametrize("case", SOLVABLE)
def test_report_is_json_ready(case):
    import json

    _, graph = _graph(*case)
    report = graph.to_report()
    assert json.loads(json.dumps(report)) == report


def test_classify():
    assert classify([parse_expr("x1*c"), parse_expr("zeta/c")])[0] == LINEAR
    assert classify([parse_expr("x1^2/x2")]) == (RATIONAL, (2, 1))
    assert classify([]) == (LINEAR, (1, 0))


def test_linear_map():
    _, graph = _graph("s7-sp2sp1", "default", "riemannian")
    xi = linear_map(graph)
    assert xi.shape == (6, 7)
    assert xi[3, 4] == parse_expr("2*c - 1")
    with pytest.raises(GraphError):
        linear_map(_graph("s5-su3", "default", "finsler")[1])


# --- numeric cross-check -------------------------------------------------


@pytest.mark.parametrize("phi", list(PHI_FAMILIES))
def test_numeric_verification_and_negative_control(phi):
    loaded = catalog.load("s7-sp2u1", "central")
    system, graph = _graph("s7-sp2u1", "central", "finsler")
    rep = verify_graph_numeric(loaded.space, loaded.metric, loaded.vector, phi, graph, loaded.sample, samples=10, seed=3)
    assert rep.passed and rep.max_residual < 1e-6
    bad = verify_graph_numeric(loaded.space, loaded.metric, loaded.vector, phi, corrupt(graph), loaded.sample, samples=10, seed=3)
    assert not bad.passed and bad.max_residual > 1e-3


def test_numeric_verification_is_seeded():
    loaded = catalog.load("s5-u3")
    _, graph = _graph("s5-u3", "default", "riemannian")
    runs = [verify_graph_numeric(loaded.space, loaded.metric, None, "quadratic", graph, loaded.sample, samples=5, seed=7) for _ in range(2)]
    assert runs[0].residuals == runs[1].residuals
    other = verify_graph_numeric(loaded.space, loaded.metric, None, "quadratic", graph, loaded.sample, samples=5, seed=8)
    assert other.residuals != runs[0].residuals


def test_unsolvable_graph_cannot_be_verified():
    loaded = catalog.load("s7-sp2")
    graph = solve_graph(_system("s7-sp2"))
    with pytest.raises(GraphError):
        verify_graph_numeric(loaded.space, loaded.metric, loaded.vector, "randers", graph, loaded.sample)
