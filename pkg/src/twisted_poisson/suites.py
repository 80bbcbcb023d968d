"""Named verification suites over one (Cartan matrix, twist, lattice) problem.

Every suite builds its own objects from a frozen :class:`Problem`, so suites
never share mutable caches and can run in separate worker processes.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from . import ideals
from .coordring import CoordElement, CoordRing, evaluate_pair, tensor_bracket
from .liealg import (
    LieAlgebraD,
    build_d,
    verify_antisymmetry,
    verify_closed_form,
    verify_cocycle,
    verify_double_root_brackets,
    verify_jacobi,
    verify_opposite_root_brackets,
    verify_pairing_relation,
    verify_quotient_to_g,
    verify_root_brackets_match_g,
    verify_rr_invariance,
)
from .report import CheckReport
from .repn import direct_sum, verify_dual_pairing, verify_module_relations, verify_weight_symmetry, verify_weyl_dimension
from .rootdata import CartanDatum, Lattice, TwistForm, build_cartan

STAGES = ("rootdata", "liealg", "repn", "coordring", "ideals")


@dataclass(frozen=True)
class Problem:
    """Everything a suite needs; hashable and picklable."""

    cartan: tuple[tuple[int, ...], ...]
    u: tuple[tuple[Fraction, ...], ...] | None = None
    lattice: Lattice = Lattice.WEIGHT
    max_word_len: int = 3
    certificate_level: int = 2
    sample_seed: int = 0
    samples: int = 100
    weyl_pairs: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...] | None = None


@dataclass
class Workspace:
    cd: CartanDatum
    d: LieAlgebraD
    ring: CoordRing
    problem: Problem

    @classmethod
    def build(cls, problem: Problem) -> "Workspace":
        cd = build_cartan([list(row) for row in problem.cartan], problem.lattice)
        tf = TwistForm.from_entries(cd, problem.u) if problem.u is not None else None
        d = build_d(cd, tf)
        return cls(cd, d, CoordRing(d), problem)

    def rng(self, suite: str) -> random.Random:
        return random.Random(f"{self.problem.sample_seed}:{suite}")

    def generator_modules(self):
        return [self.ring.catalog.irrep(lam) for lam in self.cd.dominant_generators]

    def coefficient_pool(self, with_duals: bool = True) -> list[CoordElement]:
        pool = []
        for m in self.generator_modules():
            pool.extend(self.ring.homogeneous_coefficients(m))
            if with_duals:
                pool.extend(self.ring.homogeneous_coefficients(self.ring.catalog.dual(m)))
        return pool

    def pairs(self, suite: str, pool: Sequence[CoordElement], limit: int) -> list[tuple[CoordElement, CoordElement]]:
        """All ordered pairs when there are at most ``limit``, else a seeded sample of ``limit``."""
        every = list(itertools.product(pool, repeat=2))
        if len(every) <= limit:
            return every
        return self.rng(suite).sample(every, limit)

    def triples(self, suite: str, pool: Sequence[CoordElement], count: int):
        rng = self.rng(suite)
        return [tuple(rng.choice(pool) for _ in range(3)) for _ in range(count)]

    def selected_weyl_pairs(self, default_all: bool) -> list[tuple]:
        weyl = self.d.weyl
        if self.problem.weyl_pairs is not None:
            return [(weyl.elements[weyl.find_word(a)], weyl.elements[weyl.find_word(b)])
                    for a, b in self.problem.weyl_pairs]
        if default_all:
            return ideals.weyl_pairs(self.ring)
        s1 = weyl.elements[weyl.find_word((0,))]
        return [(s1, s1)]


SuiteFn = Callable[[Workspace], list[CheckReport]]


@dataclass(frozen=True)
class Suite:
    name: str
    stage: str
    run: SuiteFn
    summary: str


# ---------------------------------------------------------------- liealg


def _jacobi(ws: Workspace) -> list[CheckReport]:
    d = ws.d
    return [verify_jacobi(d), verify_antisymmetry(d), verify_root_brackets_match_g(d),
            verify_double_root_brackets(d), verify_opposite_root_brackets(d),
            verify_pairing_relation(d), verify_quotient_to_g(d)]


def _rr_invariance(ws: Workspace) -> list[CheckReport]:
    return [verify_rr_invariance(ws.d)]


def _cocycle(ws: Workspace) -> list[CheckReport]:
    return [verify_cocycle(ws.d), verify_closed_form(ws.d)]


# ---------------------------------------------------------------- repn


def _module_relations(ws: Workspace) -> list[CheckReport]:
    catalog = ws.ring.catalog
    reports = []
    base = []
    for m in ws.generator_modules():
        dual = catalog.dual(m)
        base.extend([m, dual])
        reports.append(verify_weyl_dimension(m))
        reports.append(verify_weight_symmetry(m))
        reports.append(verify_dual_pairing(m, dual))
    relations = CheckReport("module_relations")
    for m in base:
        relations.merge(verify_module_relations(m))
    for m, n in itertools.combinations_with_replacement(base, 2):
        relations.merge(verify_module_relations(catalog.tensor(m, n)))
    relations.details["modules"] = len(base) + len(base) * (len(base) + 1) // 2
    reports.append(relations)
    return reports


# ---------------------------------------------------------------- coordring


def _bracket_oracle(ws: Workspace) -> list[CheckReport]:
    ring, d = ws.ring, ws.d
    pool = ws.coefficient_pool(with_duals=True)
    pairs = ws.pairs("bracket_oracle", pool, max(ws.problem.samples, 50))
    words = ring.words(ws.problem.max_word_len)
    oracle = CheckReport("bracket_vs_oracle", details={"pairs": len(pairs), "words": len(words)})
    for a, b in pairs:
        br = ring.bracket(a, b)
        for w in words:
            got, want = br.evaluate(w), ring.oracle_bracket_eval(a, b, w)
            oracle.record(got == want, a=repr(a), b=repr(b), word=[d.tag(x) for x in w], got=got, oracle=want)
    reports = [oracle]
    untwisted = CheckReport("bracket_r_vs_oracle")
    split = CheckReport("bracket_equals_r_plus_u")
    for a, b in pairs:
        br_r = ring.bracket_r(a, b)
        for w in words:
            untwisted.record(br_r.evaluate(w) == ring.oracle_bracket_eval(a, b, w, twisted=False),
                             a=repr(a), b=repr(b), word=[d.tag(x) for x in w])
        split.record(ring.equals(ring.bracket(a, b), ring.bracket_by_sum(a, b)), a=repr(a), b=repr(b))
    reports += [untwisted, split]
    if d.twist.is_zero():
        termwise = CheckReport("untwisted_termwise")
        for a, b in pairs:
            termwise.record(_same_terms(ring.bracket(a, b), ring.bracket_r(a, b)), a=repr(a), b=repr(b))
        reports.append(termwise)
    return reports


def _same_terms(a: CoordElement, b: CoordElement) -> bool:
    return sorted((repr(m), key, v) for m, blk in a.blocks.items() for key, v in blk.items() if v) == \
        sorted((repr(m), key, v) for m, blk in b.blocks.items() for key, v in blk.items() if v)


def _leibniz_jacobi(ws: Workspace) -> list[CheckReport]:
    ring = ws.ring
    pool = ws.coefficient_pool(with_duals=True)
    triples = ws.triples("leibniz_jacobi", pool, ws.problem.samples)
    leibniz = CheckReport("leibniz", details={"triples": len(triples)})
    jacobi = CheckReport("poisson_jacobi", details={"triples": len(triples)})
    br, mul = ring.bracket, ring.mul
    for a, b, c in triples:
        tag = {"a": repr(a), "b": repr(b), "c": repr(c)}
        leibniz.record(ring.equals(br(a, mul(b, c)), mul(br(a, b), c) + mul(b, br(a, c))), **tag)
        cyclic = br(a, br(b, c)) + br(b, br(c, a)) + br(c, br(a, b))
        jacobi.record(ring.is_zero(cyclic), **tag)
    return [leibniz, jacobi]


def _hopf_compat(ws: Workspace) -> list[CheckReport]:
    ring, d = ws.ring, ws.d
    pool = ws.coefficient_pool(with_duals=True)
    pairs = ws.pairs("hopf_compat", pool, ws.problem.samples)
    words = ring.words(min(2, ws.problem.max_word_len))
    comult = CheckReport("comultiplication_is_poisson", details={"pairs": len(pairs), "word_pairs": len(words) ** 2})
    counit = CheckReport("counit_of_bracket")
    for a, b in pairs:
        lhs = ring.comult(ring.bracket(a, b))
        rhs = tensor_bracket(ring, ring.comult(a), ring.comult(b))
        for w1 in words:
            for w2 in words:
                comult.record(evaluate_pair(lhs, w1, w2) == evaluate_pair(rhs, w1, w2), a=repr(a), b=repr(b),
                              w1=[d.tag(x) for x in w1], w2=[d.tag(x) for x in w2])
        counit.record(ring.counit(ring.bracket(a, b)) == 0, a=repr(a), b=repr(b))
    return [comult, counit]


def _antipode_poisson(ws: Workspace) -> list[CheckReport]:
    ring = ws.ring
    pool = ws.coefficient_pool(with_duals=True)
    pairs = ws.pairs("antipode_poisson", pool, ws.problem.samples)
    report = CheckReport("antipode_anti_poisson", details={"pairs": len(pairs)})
    for a, b in pairs:
        lhs = ring.antipode(ring.bracket(a, b))
        rhs = -ring.bracket(ring.antipode(a), ring.antipode(b))
        report.record(ring.equals(lhs, rhs), a=repr(a), b=repr(b))
    return [report]


def _bigrading(ws: Workspace) -> list[CheckReport]:
    ring = ws.ring
    pool = ws.coefficient_pool(with_duals=True)
    pairs = ws.pairs("bigrading", pool, max(ws.problem.samples, 200))
    products = CheckReport("product_bigrade", details={"pairs": len(pairs)})
    brackets = CheckReport("bracket_bigrade", details={"pairs": len(pairs)})
    for a, b in pairs:
        (la, ma), (lb, mb) = a.bigrade(), b.bigrade()
        target = (tuple(x + y for x, y in zip(la, lb)), tuple(x + y for x, y in zip(ma, mb)))
        products.record(set(ring.mul(a, b).bigrade_parts()) <= {target}, a=repr(a), b=repr(b))
        brackets.record(set(ring.bracket(a, b).bigrade_parts()) <= {target}, a=repr(a), b=repr(b))
    return [products, brackets]


# ---------------------------------------------------------------- ideals


def _ideals_normality(ws: Workspace) -> list[CheckReport]:
    ring, level = ws.ring, ws.problem.certificate_level
    generators = CheckReport("ideal_generators")
    normality = CheckReport("normality", details={"scalars": []})
    proper = CheckReport("one_not_in_ideal", details={"level": level})
    survivors = CheckReport("normal_elements_survive")
    for w in ws.selected_weyl_pairs(default_all=True):
        ctx = ideals.LocalizationContext(ring, w, level)
        label = ctx.ideal.label()
        for lam, gens in list(ctx.ideal.plus.items()) + list(ctx.ideal.minus.items()):
            for g in gens:
                generators.record(g.bigrade() is not None, w=label, Lambda=lam, generator=repr(g))
        for lam in ctx.ideal.plus:
            for f in ctx.ideal.plus_complements[lam]:
                generators.record(all(not sum(x * y for x, y in zip(f, s)) for s in ctx.ideal.plus_spans[lam]),
                                  w=label, Lambda=lam, side="+")
            for f in ctx.ideal.minus_complements[lam]:
                generators.record(all(not sum(x * y for x, y in zip(f, s)) for s in ctx.ideal.minus_spans[lam]),
                                  w=label, Lambda=lam, side="-")
        for lam in ctx.generators:
            sub = ideals.normality_check(ctx, lam)
            normality.merge(sub)
            normality.details["scalars"].append({"w": label, "Lambda": sub.details["Lambda"],
                                                 "values": sub.details["scalars"]})
            for element in (ctx.c_element(lam), ctx.ct_element(lam)):
                cert = ideals.ideal_membership_certificate(ring, element, ctx.ideal, level)
                survivors.record(cert is None, w=label, element=repr(element))
        cert = ideals.ideal_membership_certificate(ring, ring.one(), ctx.ideal, level)
        proper.record(cert is None, w=label, certificate=cert.to_json() if cert else None)
    return [generators, normality, proper, survivors]


def _adjoint_identities(ws: Workspace) -> list[CheckReport]:
    pool = ws.coefficient_pool(with_duals=False)
    triples = ws.triples("adjoint_identities", pool, min(ws.problem.samples, 20))
    return [ideals.adjoint_identity_suite(ws.ring, triples)]


def determinant_element(ring: CoordRing) -> CoordElement | None:
    """c(hi,hi) c(lo,lo) - c(hi,lo) c(lo,hi) on the two-dimensional module of a rank-one datum."""
    if ring.d.cartan.n != 1:
        return None
    module = ring.catalog.irrep(ring.d.cartan.dominant_generators[0])
    if module.dim != 2:
        return None
    hi, lo = module.highest_index, module.lowest_index

    def c(fi, vi):
        return ring.elementary(module, fi, vi)

    return c(hi, hi) * c(lo, lo) - c(hi, lo) * c(lo, hi)


def _fixed_points(ws: Workspace) -> list[CheckReport]:
    ring = ws.ring
    generating = ws.coefficient_pool(with_duals=False)
    candidates = [ring.one()] + generating[:2]
    det = determinant_element(ring)
    reports = []
    if det is not None:
        candidates.append(det)
        central = CheckReport("determinant_is_central")
        testers = generating + [ring.mul(a, b) for a, b in itertools.combinations_with_replacement(generating, 2)]
        central.record(all(ring.is_zero(ring.bracket(a, det)) for a in testers), element=repr(det))
        reports.append(central)
    return [ideals.fixed_point_check(ring, generating, candidates)] + reports


def _hactk(ws: Workspace) -> list[CheckReport]:
    ring, level = ws.ring, ws.problem.certificate_level
    reports = []
    for w in ws.selected_weyl_pairs(default_all=False):
        ctx = ideals.LocalizationContext(ring, w, level)
        norm = ctx.verify_normality()
        if not norm.passed:
            reports.append(norm)
            continue
        for lam in ctx.generators:
            module = ring.catalog.irrep(lam)
            both = direct_sum(module, ring.catalog.dual(module))
            reports.append(ideals.hactk_check(ctx, lam, ring.homogeneous_coefficients(both)))
    for m in ws.generator_modules():
        reports.append(ideals.coevaluation_checks(ring, m, ws.problem.max_word_len))
    return reports


def _h_grades(ws: Workspace) -> list[CheckReport]:
    ring, level = ws.ring, ws.problem.certificate_level
    pool = ws.coefficient_pool(with_duals=False)
    reports = []
    for w in ws.selected_weyl_pairs(default_all=False):
        ctx = ideals.LocalizationContext(ring, w, level)
        reports.append(ideals.h_grade_suite(ctx, pool))
    return reports


REGISTRY: dict[str, Suite] = {s.name: s for s in [
    Suite("jacobi", "liealg", _jacobi, "Jacobi identity and structure relations of the double"),
    Suite("rr_invariance", "liealg", _rr_invariance, "ad-invariance of [[r,r]]"),
    Suite("cocycle", "liealg", _cocycle, "cocycle condition and closed form of the cocommutator"),
    Suite("module_relations", "repn", _module_relations, "representation relations and Weyl dimensions"),
    Suite("bracket_oracle", "coordring", _bracket_oracle, "closed-form bracket against the delta-recursion oracle"),
    Suite("leibniz_jacobi", "coordring", _leibniz_jacobi, "Leibniz rule and Poisson Jacobi identity"),
    Suite("hopf_compat", "coordring", _hopf_compat, "comultiplication is Poisson, counit kills brackets"),
    Suite("antipode_poisson", "coordring", _antipode_poisson, "antipode is anti-Poisson"),
    Suite("bigrading", "coordring", _bigrading, "products and brackets add bigrades"),
    Suite("ideals_normality", "ideals", _ideals_normality, "ideal generators, normal elements, properness"),
    Suite("adjoint_identities", "ideals", _adjoint_identities, "Poisson adjoint action identities"),
    Suite("fixed_points", "ideals", _fixed_points, "ad-fixed points versus Poisson-central elements (truncated)"),
    Suite("hactk", "ideals", _hactk, "adjoint action on z-elements and coevaluation identities"),
    Suite("h_grades", "ideals", _h_grades, "H-grading bookkeeping in the localisation"),
]}


def ordered(names: Sequence[str]) -> list[str]:
    """Registry names in dependency order (rootdata -> ... -> ideals), duplicates dropped."""
    unknown = [n for n in names if n not in REGISTRY]
    if unknown:
        raise KeyError(f"unknown suite(s): {', '.join(unknown)}")
    order = list(REGISTRY)
    return sorted(set(names), key=lambda n: (STAGES.index(REGISTRY[n].stage), order.index(n)))


@dataclass
class SuiteResult:
    name: str
    reports: list[CheckReport]
    seconds: float
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.error is None and all(r.passed for r in self.reports)

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "status": "pass" if self.passed else "fail",
            "checked": sum(r.checked for r in self.reports),
            "failed": sum(len(r.violations) + r.details.get("truncated_violations", 0) for r in self.reports),
            "error": self.error,
            "checks": [r.to_json() for r in self.reports],
        }


def run_suite(name: str, problem: Problem) -> SuiteResult:
    """Run one suite in a fresh workspace; exceptions become a failed result."""
    start = time.perf_counter()
    try:
        ws = Workspace.build(problem)
        reports = REGISTRY[name].run(ws)
        error = None
    except Exception as exc:  # recorded, not raised: one broken suite must not hide the others
        reports, error = [], f"{type(exc).__name__}: {exc}"
    return SuiteResult(name, reports, time.perf_counter() - start, error)
