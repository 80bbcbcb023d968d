"""Verification and export service: the in-process core plus a FastAPI app around it."""

from __future__ import annotations

import os
from fractions import Fraction
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Literal

from fastapi import FastAPI, HTTPException

from . import ideals
from .config import (
    WORKERS_ENV,
    ConfigError,
    Report,
    RunConfig,
    SuiteSummary,
    library_version,
    resolve,
    resolved_summary,
)
from .coordring import CoordElement
from .linalg import fraction_str
from .liealg import r_matrix
from .suites import REGISTRY, Problem, SuiteResult, Workspace, ordered, run_suite

ExportKind = Literal["roots", "structure", "modules", "brackets", "ideals"]
EXPORT_KINDS = ("roots", "structure", "modules", "brackets", "ideals")


def worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        value = int(raw)
    except ValueError as exc:
        raise ConfigError(f"{WORKERS_ENV} must be a positive integer, got {raw!r}") from exc
    if value < 1:
        raise ConfigError(f"{WORKERS_ENV} must be a positive integer, got {raw!r}")
    return value


def _run_suites(names: list[str], problem: Problem, workers: int) -> list[SuiteResult]:
    if workers == 1 or len(names) == 1:
        return [run_suite(name, problem) for name in names]
    with ProcessPoolExecutor(max_workers=min(workers, len(names))) as pool:
        futures = [pool.submit(run_suite, name, problem) for name in names]
        return [f.result() for f in futures]  # submission order, not completion order


def run(config: RunConfig, workers: int | None = None) -> Report:
    """Run the configured suites in dependency order and assemble the report."""
    problem = resolve(config)
    names = ordered(config.suites)
    results = _run_suites(names, problem, workers or worker_count())
    summaries = [SuiteSummary(**r.to_json()) for r in results]
    return Report(
        library_version=library_version(),
        status="pass" if all(r.passed for r in results) else "fail",
        config=config.model_dump(mode="json", exclude={"output"}),
        resolved=resolved_summary(problem, names),
        suites=summaries,
        timings={r.name: round(r.seconds, 3) for r in results},
    )


# ---------------------------------------------------------------- export


def _weight(w) -> list[str]:
    return [fraction_str(x) for x in w]


def _element(e: CoordElement) -> list[dict[str, Any]]:
    return [{"coeff": fraction_str(c), "module": m.describe(), "dual_index": j, "vector_index": i}
            for c, m, j, i in e.terms()]


def _factors(module, dual_index: int, vector_index: int) -> list[str]:
    """Split a coefficient of a tensor product into the commuting coefficients of its factors."""
    if module.provenance[0] == "tensor":
        left, right = module.provenance[1], module.provenance[2]
        jl, jr = divmod(dual_index, right.dim)
        il, ir = divmod(vector_index, right.dim)
        return _factors(left, jl, il) + _factors(right, jr, ir)
    if module.provenance[0] == "irrep" and not any(module.provenance[1]):
        return []
    return [f"c[{module.describe()}](g{dual_index},v{vector_index})"]


def _monomials(e: CoordElement) -> dict[str, str]:
    """e as a polynomial in matrix coefficients, keyed by the sorted product of factors."""
    collected: dict[str, Fraction] = {}
    for c, m, j, i in e.terms():
        key = "*".join(sorted(_factors(m, j, i))) or "1"
        collected[key] = collected.get(key, Fraction(0)) + c
    return {k: fraction_str(v) for k, v in sorted(collected.items()) if v}


def _export_roots(ws: Workspace) -> dict[str, Any]:
    cd, rs, weyl = ws.cd, ws.d.roots, ws.d.weyl
    return {
        "cartan": [list(row) for row in cd.a],
        "symmetrizers": list(cd.d),
        "lattice": cd.lattice.value,
        "dominant_generators": [_weight(w) for w in cd.dominant_generators],
        "positive_roots": [
            {"label": rs.label(k), "simple_coords": list(rs.all_coords[k]), "weight": _weight(rs.all_roots[k]),
             "height": rs.height(k)}
            for k in range(rs.num_positive)
        ],
        "num_roots": len(rs.all_roots),
        "weyl_group": {"order": len(weyl), "elements": [e.label() for e in weyl.elements],
                       "longest": weyl.w0.label()},
    }


def _export_structure(ws: Workspace) -> dict[str, Any]:
    d = ws.d
    basis = list(d.basis)
    table = []
    for i, a in enumerate(basis):
        for b in basis[i + 1:]:
            value = d.bracket_basis(a, b)
            if value:
                table.append({"lhs": d.tag(a), "rhs": d.tag(b),
                              "value": [[d.tag(v), fraction_str(c)] for v, c in value.sorted_items()]})
    r = [{"left": d.tag(p), "right": d.tag(q), "coeff": fraction_str(c)} for (p, q), c in r_matrix(d).sorted_items()]
    return {"basis": [d.tag(v) for v in basis], "brackets": table, "r_matrix": r,
            "twist": [[fraction_str(x) for x in row] for row in d.twist.u]}


def _export_modules(ws: Workspace) -> dict[str, Any]:
    d = ws.d
    out = []
    for m in ws.generator_modules():
        actions = {}
        for v in d.generators:
            mat = m.actions[v]
            actions[d.tag(v)] = [[i, j, fraction_str(val)] for j, col in enumerate(mat.columns) for i, val in col]
        out.append({"module": m.describe(), "dim": m.dim, "weights": [_weight(w) for w in m.weights],
                    "highest_index": m.highest_index, "lowest_index": m.lowest_index,
                    "generator_actions": actions})
    return {"modules": out}


def _export_brackets(ws: Workspace) -> dict[str, Any]:
    ring = ws.ring
    out = []
    for m in ws.generator_modules():
        coefficients = ring.homogeneous_coefficients(m)
        for a in coefficients:
            for b in coefficients:
                if a is not b:
                    out.append({"a": _factors(*_single(a)), "b": _factors(*_single(b)),
                                "bracket": _monomials(ring.bracket(a, b))})
    return {"convention": "c[M](gj,vi) pairs the dual basis functional gj with the basis vector vi; "
                          "brackets are polynomials in commuting coefficients",
            "brackets": out}


def _single(e: CoordElement) -> tuple:
    (c, m, j, i), = e.terms()
    return m, j, i


def _export_ideals(ws: Workspace) -> dict[str, Any]:
    ring = ws.ring
    out = []
    for w in ws.selected_weyl_pairs(default_all=True):
        data = ideals.ideal_generators(ring, w, ring.d.cartan.dominant_generators)
        out.append({
            "w": data.label(),
            "plus": {",".join(_weight(lam)): [_element(g) for g in gens] for lam, gens in data.plus.items()},
            "minus": {",".join(_weight(lam)): [_element(g) for g in gens] for lam, gens in data.minus.items()},
        })
    return {"ideals": out}


_EXPORTERS = {
    "roots": _export_roots,
    "structure": _export_structure,
    "modules": _export_modules,
    "brackets": _export_brackets,
    "ideals": _export_ideals,
}


def export(config: RunConfig, what: str) -> dict[str, Any]:
    if what not in _EXPORTERS:
        raise ConfigError(f"unknown export kind {what!r}; choose from {list(EXPORT_KINDS)}")
    problem = resolve(config)
    ws = Workspace.build(problem)
    return {"what": what, "library_version": library_version(),
            "resolved": resolved_summary(problem, []), "data": _EXPORTERS[what](ws)}


# ---------------------------------------------------------------- HTTP


def create_app() -> FastAPI:
    app = FastAPI(title="twisted-poisson", version=library_version())

    @app.get("/health")
    def health() -> dict[str, str]:
        return {"status": "ok", "version": library_version()}

    @app.get("/suites")
    def suites() -> dict[str, Any]:
        return {"suites": [{"name": s.name, "stage": s.stage, "summary": s.summary} for s in REGISTRY.values()]}

    @app.post("/verify", response_model=Report)
    def verify(config: RunConfig) -> Report:
        try:
            return run(config)
        except ConfigError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc

    @app.post("/export/{what}")
    def export_route(what: ExportKind, config: RunConfig) -> dict[str, Any]:
        try:
            return export(config, what)
        except ConfigError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc

    return app


app = create_app()
