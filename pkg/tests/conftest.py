import sympy
from hypothesis import HealthCheck, settings

from gograph.exact import parse_expr

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


_PLAIN = {name: sympy.Symbol(name) for name in ("zeta", "beta", "gamma", "E", "I", "S", "N", "O", "Q")}


def to_sympy(obj):
    """Independent reading of a canonical string through sympy."""
    return sympy.sympify(str(obj), locals=_PLAIN, convert_xor=True)


def from_sympy(expr):
    return parse_expr(str(sympy.together(expr)))


def sympy_equal(a, b) -> bool:
    return sympy.simplify(to_sympy(a) - to_sympy(b)) == 0


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        title, ok, detail = results[n]
        terminalreporter.write_line(f"criterion {n:>2} {'PASS' if ok else 'FAIL'}: {title}" + (f" ({detail})" if detail else ""))
