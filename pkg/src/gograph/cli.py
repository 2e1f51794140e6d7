"""Command-line front end: ``gograph <command> [options]``.

Exit status is 0 on success or a positive verdict, 2 on a negative verdict
(not geodesic orbit, failed check) and 1 on invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import catalog
from .abmetric import MetricError, MetricVector, PHI_FAMILIES, admissibility_bound, admissibility_check
from .catalog import CatalogError, LoadedSpace
from .exact import ExpressionError, RatFunc
from .geodesic import (
    MODES,
    GraphError,
    build_system,
    check_go,
    graph_via_pnr,
    graph_via_t2,
    linear_map,
    solve_graph,
    verify_graph_numeric,
)
from .homogeneous import (
    SpaceError,
    adjoint_on_m,
    center,
    change_complement,
    extend_isotropy,
    invariant_vectors,
    is_invariant_metric,
    is_naturally_reductive,
)
from .lie import LieAlgebraError, format_combination, jacobi_check

EXIT_OK, EXIT_INPUT, EXIT_VERDICT = 0, 1, 2

INPUT_ERRORS = (CatalogError, SpaceError, GraphError, MetricError, LieAlgebraError, ExpressionError, ValueError)


class InputError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors, not verdicts
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# configuration


def _parse_binding(text: str) -> tuple[str, Any]:
    name, sep, value = text.partition("=")
    if not sep or not name.strip():
        raise InputError(f"--param expects name=value, got {text!r}")
    value = value.strip()
    if value == "symbolic":
        return name.strip(), None
    try:
        return name.strip(), Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"--param {name}: {value!r} is not a rational number or 'symbolic'") from None


def _load_space(args) -> LoadedSpace:
    sel = args.space
    if sel is None:
        raise InputError("--space is required (catalog id or definition file)")
    if sel in catalog.ids():
        loaded = catalog.load(sel, args.complement or "default")
    elif Path(sel).exists():
        loaded = catalog.load_definition(Path(sel))
        if args.complement and args.complement != "default":
            raise InputError("--complement applies to catalog entries only")
    else:
        raise InputError(f"--space {sel!r} is neither a catalog id ({', '.join(catalog.ids())}) nor a file")
    return _bind(loaded, dict(_parse_binding(p) for p in args.param or []))


def _bind(loaded: LoadedSpace, bindings: dict) -> LoadedSpace:
    exact = {k: v for k, v in bindings.items() if v is not None}
    known = set(loaded.params) | loaded.metric.parameters()
    if loaded.vector is not None:
        known |= {v for c in loaded.vector for v in c.variables}
    for name, value in exact.items():
        if name not in known:
            raise InputError(f"--param {name}: not a parameter of {loaded.id} (known: {', '.join(sorted(known)) or 'none'})")
        if loaded.params.get(name) == "positive" and value <= 0:
            raise InputError(f"--param {name}={value}: parameter must be positive")
    if not exact:
        return loaded
    sp = loaded.space
    g = sp.algebra.subs(exact)
    space = type(sp)(g, sp.h, sp.m, sp.coordinates)
    vector = loaded.vector.subs(exact) if loaded.vector is not None else None
    central = tuple(c.subs(exact) for c in loaded.central) if loaded.central is not None else None
    sample = {k: v for k, v in loaded.sample.items() if k not in exact}
    sample.update({k: float(v) for k, v in exact.items()})
    return LoadedSpace(loaded.id, space, loaded.metric.subs(exact), vector, central, loaded.params, sample, loaded.variant)


def _vector(args, loaded: LoadedSpace) -> MetricVector | None:
    spec = getattr(args, "v", None)
    if not spec:
        return loaded.vector
    sp = loaded.space
    if len(spec) == 1 and spec[0] == "auto":
        basis = invariant_vectors(sp)
        if not basis:
            return None
        names = ["v"] if len(basis) == 1 else [f"v{i + 1}" for i in range(len(basis))]
        comps = [RatFunc.coerce(0)] * sp.m_dim
        for n, b in zip(names, basis):
            comps = [c + RatFunc.var(n) * e for c, e in zip(comps, b)]
        return MetricVector(tuple(comps))
    coeffs = {}
    for item in ",".join(spec).split(","):
        label, sep, value = item.partition("=")
        if not sep:
            raise InputError(f"--v expects label=coefficient items, got {item!r}")
        coeffs[label.strip()] = RatFunc.coerce(value.strip())
    try:
        return MetricVector(sp.m_vector(coeffs))
    except (LieAlgebraError, ValueError) as exc:
        raise InputError(f"--v: {exc}") from None


def _vectors_for_extension(args, loaded: LoadedSpace) -> list[dict]:
    out = []
    for item in args.v or []:
        coeffs = {}
        for part in item.split(","):
            label, sep, value = part.partition("=")
            if not sep:
                raise InputError(f"--v expects label=coefficient items, got {part!r}")
            coeffs[label.strip()] = value.strip()
        out.append(coeffs)
    if not out:
        raise InputError("extend needs at least one --v")
    return out


# ---------------------------------------------------------------------------
# commands; each returns (report, text lines, exit code)


def _fmt_m(loaded: LoadedSpace, v) -> str:
    return format_combination(v, loaded.space.m_labels)


def cmd_catalog(args):
    if args.action == "list":
        rows = [{"id": e.id, "group": e.group, "description": e.description, "variants": ["default", *e.variants]}
                for e in catalog.entries()]
        return {"entries": rows}, [f"{r['id']:<10} {r['description']}" for r in rows], EXIT_OK
    if not args.id:
        raise InputError("catalog show needs an id")
    args.space = args.id
    loaded = _load_space(args)
    sp = loaded.space
    ops = {op.source: op.matrix.to_strings() for op in (adjoint_on_m(sp, i) for i in sp.h)}
    report = {
        "definition": catalog.to_definition(loaded),
        "bracket_table": [list(r) for r in sp.algebra.bracket_table()],
        "m_bracket_table": [list(r) for r in sp.m_bracket_table()],
        "adjoint_operators": ops,
        "vector": None if loaded.vector is None else _fmt_m(loaded, loaded.vector),
    }
    lines = [f"{loaded.id} ({loaded.variant}): {catalog.get(loaded.id).description}",
             f"h = {', '.join(sp.h_labels)}", f"m = {', '.join(sp.m_labels)}", "brackets:"]
    lines += [f"  [{a}, {b}] = {c}" for a, b, c in report["bracket_table"]]
    lines.append(f"metric diagonal: {', '.join(str(loaded.metric.gram[i, i]) for i in range(sp.m_dim))}")
    if report["vector"]:
        lines.append(f"V = {report['vector']}")
    return report, lines, EXIT_OK


def cmd_check(args):
    loaded = _load_space(args)
    sp = loaded.space
    what = args.what
    if what == "jacobi":
        bad = [[sp.algebra.labels[i] for i in t] for t in jacobi_check(sp.algebra)]
        ok, detail = not bad, {"violations": bad}
    elif what == "reductive":
        bad = [list(p) for p in sp.reductivity_violations()]
        ok, detail = not bad, {"violations": bad}
    elif what == "invariance":
        metric = is_invariant_metric(sp, loaded.metric)
        vec = _vector(args, loaded)
        moved = []
        if vec is not None:
            v = sp.embed_m(vec.components)
            moved = [sp.algebra.labels[i] for i in sp.h if any(sp.bracket_m(sp.algebra.basis_vector(i), v))]
        ok = metric.ok and not moved
        detail = {"metric_invariant": metric.ok, "metric_witness": metric.witness, "vector_moved_by": moved}
    else:
        direct = is_naturally_reductive(sp, loaded.metric)
        ok, via = direct.ok, "given complement"
        detail = {"given_complement": direct.ok, "witness": list(direct.witness) if direct.witness else None}
        if not ok:
            graph = solve_graph(build_system(sp, loaded.metric, None, "riemannian"))
            if graph.is_linear:
                shifted = change_complement(sp, linear_map(graph))
                ok = is_naturally_reductive(shifted, loaded.metric).ok
                via = "complement shifted by the linear Riemannian graph"
                detail["shifted_m"] = list(shifted.m_labels)
        detail["via"] = via if ok else None
    report = {"check": what, "space": loaded.id, "ok": ok, **detail}
    return report, [f"{what}: {'true' if ok else 'false'}"] + [f"  {k}: {v}" for k, v in detail.items() if v], EXIT_OK if ok else EXIT_VERDICT


def cmd_invariant_vectors(args):
    loaded = _load_space(args)
    basis = invariant_vectors(loaded.space)
    texts = [_fmt_m(loaded, b) for b in basis]
    lines = [f"dim = {len(basis)}"] + [f"  {t}" for t in texts]
    return {"space": loaded.id, "dim": len(basis), "basis": texts}, lines, EXIT_OK


def cmd_center(args):
    loaded = _load_space(args)
    sp = loaded.space
    res = center(sp.algebra, sp)
    items = [{"element": sp.algebra.format_vector(v), "m_part": format_combination(cm, sp.m_labels),
              "h_part": format_combination(ch, sp.h_labels)} for v, (cm, ch) in zip(res.vectors, res.splits)]
    lines = [f"dim = {res.dim}"] + [f"  {it['element']}   (m: {it['m_part']}; h: {it['h_part']})" for it in items]
    return {"space": loaded.id, "dim": res.dim, "basis": items}, lines, EXIT_OK


def cmd_extend(args):
    loaded = _load_space(args)
    ext = extend_isotropy(loaded.space, loaded.metric, _vectors_for_extension(args, loaded))
    g = ext.algebra
    new = [g.labels[i] for i in ext.generators]
    ops = {g.labels[i]: adjoint_on_m(ext.space, i).matrix.to_strings() for i in ext.generators}
    central = [g.format_vector(c) for c in ext.central]
    report = {"space": loaded.id, "generators": new, "operators": ops, "central": central,
              "bracket_table": [list(r) for r in g.bracket_table()]}
    lines = [f"new generators: {', '.join(new)}"]
    lines += [f"  [{a}, {b}] = {c}" for a, b, c in report["bracket_table"] if a in new or b in new]
    lines += [f"central: {c}" for c in central]
    return report, lines, EXIT_OK


def _resolve_mode(args, loaded: LoadedSpace) -> None:
    if args.mode is None:
        has_v = bool(getattr(args, "v", None)) or (loaded.vector is not None and not loaded.vector.is_zero())
        args.mode = "finsler" if has_v else "riemannian"


def _system(args, loaded):
    _resolve_mode(args, loaded)
    vec = _vector(args, loaded) if args.mode == "finsler" else None
    if args.mode == "finsler" and (vec is None or vec.is_zero()):
        raise InputError(f"{loaded.id} has no nonzero invariant vector; use --mode riemannian or pass --v")
    return build_system(loaded.space, loaded.metric, vec, args.mode)


def cmd_system(args):
    loaded = _load_space(args)
    system = _system(args, loaded)
    report = system.to_report()
    aug = system.augmented().to_strings()
    width = [max(len(r[j]) for r in aug) for j in range(len(aug[0]))] if aug else []
    na = system.A.ncols
    lines = [f"unknowns: {', '.join(system.unknowns)}"]
    for r in aug:
        cells = [c.rjust(w) for c, w in zip(r, width)]
        lines.append("[ " + "  ".join(cells[:na]) + " | " + " | ".join(cells[na:]) + " ]")
    lines.append(f"rank(A) = {report['rank_A']}, rank(augmented) = {report['rank_augmented']}")
    return report, lines, EXIT_OK


def _graph(args, loaded):
    """(graph, V the graph was built for)."""
    via = args.via
    if via == "direct":
        system = _system(args, loaded)
        return solve_graph(system), system.vector
    if via == "t2":
        vec = _vector(args, loaded)
        if vec is None:
            raise InputError("the substitution route needs a vector V")
        return graph_via_t2(loaded.space, loaded.metric, vec, phi=args.phi), vec
    sp = loaded.space
    central = loaded.central
    if central is None:
        basis = center(sp.algebra, sp)
        found = [v for v, (cm, _) in zip(basis.vectors, basis.splits) if any(cm)]
        if not found:
            raise InputError("no central element with a nonzero m-part; the pnr route does not apply")
        central = found[0]
    graph = graph_via_pnr(sp, loaded.metric, central, phi=args.phi)
    return graph, MetricVector(sp.project_m(central))


def cmd_graph(args):
    loaded = _load_space(args)
    if args.via != "direct":
        args.mode = "finsler"
    graph, _ = _graph(args, loaded)
    return graph.to_report(), [graph.summary()], EXIT_OK if graph.is_go else EXIT_VERDICT


def cmd_go(args):
    loaded = _load_space(args)
    _resolve_mode(args, loaded)
    vec = _vector(args, loaded) if args.mode == "finsler" else None
    verdict = check_go(loaded.space, loaded.metric, vec, args.mode)
    report = {"space": loaded.id, "mode": args.mode, "go": verdict.go, "rank_A": verdict.rank_A,
              "rank_augmented": verdict.rank_augmented, "witness": verdict.witness}
    text = "GO" if verdict.go else f"NotGO (equation {verdict.witness} fails for general X)"
    return report, [f"{text}; rank(A) = {verdict.rank_A}, rank(augmented) = {verdict.rank_augmented}"], (
        EXIT_OK if verdict.go else EXIT_VERDICT)


def cmd_verify(args):
    loaded = _load_space(args)
    if args.via != "direct":
        args.mode = "finsler"
    graph, vec = _graph(args, loaded)
    if not graph.is_go:
        return graph.to_report(), [graph.summary()], EXIT_VERDICT
    values = dict(loaded.sample)
    symbols = set(loaded.metric.parameters()) | set(loaded.space.algebra.parameters())
    for part in [*(vec or ()), *graph.components]:
        symbols |= part.variables
    missing = sorted(symbols - set(values) - set(loaded.space.coordinates) - {"zeta"})
    if missing:
        raise InputError(f"verify needs numeric values for {', '.join(missing)} (use --param)")
    rep = verify_graph_numeric(loaded.space, loaded.metric, vec, args.phi, graph, values, args.samples, args.seed)
    report = {"space": loaded.id, "graph": graph.to_report(), "values": {k: values[k] for k in sorted(values)},
              **rep.to_report()}
    line = f"{'pass' if rep.passed else 'fail'}: max residual {rep.max_residual:.3e} over {rep.samples} samples (tol {rep.tolerance:g})"
    return report, [line], EXIT_OK if rep.passed else EXIT_VERDICT


def cmd_admissibility(args):
    rep = admissibility_check(args.phi, args.b, args.grid)
    bound = admissibility_bound(args.phi, grid=args.grid)
    report = {"phi": args.phi, "b": args.b, "grid": args.grid, "passed": rep.passed, "margin": rep.margin,
              "min_phi": rep.min_phi, "worst_s": rep.worst_s, "bound": bound}
    line = f"{'pass' if rep.passed else 'fail'}: margin {rep.margin:.6g} at s = {rep.worst_s:.6g}, min phi {rep.min_phi:.6g}; bound b* ~ {bound:.6g}"
    return report, [line], EXIT_OK if rep.passed else EXIT_VERDICT


# ---------------------------------------------------------------------------
# parser


def _space_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--space", help="catalog id or path to a JSON space definition")
    p.add_argument("--complement", default=None, help="catalog variant (alternative reductive complement)")
    p.add_argument("--param", action="append", metavar="NAME=VALUE", help="bind a parameter to a rational or 'symbolic'")


def _vector_option(p: argparse.ArgumentParser) -> None:
    p.add_argument("--v", action="append", metavar="SPEC", help="V as label=coef[,label=coef] or 'auto'")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gograph", description="Geodesic graphs of invariant (alpha, beta) metrics.")
    parser.add_argument("--output", choices=["text", "json"], default="text")
    parser.add_argument("--seed", type=int, default=0)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("catalog", help="list or show built-in spaces")
    p.add_argument("action", choices=["list", "show"])
    p.add_argument("id", nargs="?")
    p.add_argument("--complement", default=None)
    p.add_argument("--param", action="append", metavar="NAME=VALUE")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("check", help="structural checks")
    p.add_argument("what", choices=["jacobi", "invariance", "reductive", "nr"])
    _space_options(p)
    _vector_option(p)
    p.set_defaults(func=cmd_check)

    for name, func, text in [("invariant-vectors", cmd_invariant_vectors, "Ad(H)-invariant vectors in m"),
                             ("center", cmd_center, "center of the algebra with its m/h split")]:
        p = sub.add_parser(name, help=text)
        _space_options(p)
        p.set_defaults(func=func)

    p = sub.add_parser("extend", help="extend the isotropy algebra by ad(V)|_m")
    _space_options(p)
    p.add_argument("--v", action="append", metavar="SPEC", help="one vector per flag: label=coef[,label=coef]")
    p.set_defaults(func=cmd_extend)

    for name, func, text in [("system", cmd_system, "print the extended matrix (A | B | C)"),
                             ("go", cmd_go, "geodesic orbit verdict by rank comparison"),
                             ("graph", cmd_graph, "solve and classify the geodesic graph"),
                             ("verify", cmd_verify, "numeric check with the fundamental tensor")]:
        p = sub.add_parser(name, help=text)
        _space_options(p)
        _vector_option(p)
        p.add_argument("--mode", choices=list(MODES), default=None,
                       help="default: finsler when the space carries a vector V, else riemannian")
        if name in ("graph", "verify"):
            p.add_argument("--via", choices=["direct", "t2", "pnr"], default="direct")
            p.add_argument("--phi", choices=list(PHI_FAMILIES), default="randers")
        if name == "verify":
            p.add_argument("--samples", type=int, default=50)
            p.add_argument("--seed", type=int, default=None, dest="local_seed")
        p.set_defaults(func=func)

    p = sub.add_parser("admissibility", help="sampled admissibility conditions for phi")
    p.add_argument("--phi", choices=list(PHI_FAMILIES), required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--grid", type=int, default=1001)
    p.set_defaults(func=cmd_admissibility)
    return parser


def _render(report: dict, lines: Sequence[str], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True)
    return "\n".join(lines)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "local_seed", None) is not None:
        args.seed = args.local_seed
    try:
        report, lines, code = args.func(args)
    except (InputError, *INPUT_ERRORS) as exc:
        print(f"gograph: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(_render(report, lines, args.output))
    return code


if __name__ == "__main__":
    sys.exit(main())
