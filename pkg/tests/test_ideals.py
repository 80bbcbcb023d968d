import itertools
import time
from fractions import Fraction

import pytest

from twisted_poisson.ideals import (
    LocalizationContext,
    NormalityUnverified,
    adjoint_action,
    adjoint_identity_suite,
    borel_orbit_span,
    coevaluation_checks,
    fixed_point_check,
    h_grade_suite,
    hactk_check,
    ideal_generators,
    ideal_membership_certificate,
    localized_bracket,
    normality_check,
    orthogonal_complement,
    separating_character,
    weyl_pairs,
)
from twisted_poisson.repn import WeightAbsent

from conftest import ring

F = Fraction


def weyl_pair(r, plus, minus):
    weyl = r.d.weyl
    return weyl.elements[weyl.find_word(plus)], weyl.elements[weyl.find_word(minus)]


def sl2(r):
    m = r.catalog.irrep((1,))
    c = lambda j, i: r.elementary(m, j, i)  # noqa: E731
    return m, c(0, 0), c(1, 0), c(0, 1), c(1, 1)


# ---------------------------------------------------------------- spans and generators


def test_borel_orbit_spans_on_a1():
    r = ring("A1")
    m = r.catalog.irrep((1,))
    assert len(borel_orbit_span(m, (1,), "+")) == 1
    assert len(borel_orbit_span(m, (-1,), "+")) == 2
    assert len(borel_orbit_span(m, (1,), "-")) == 2
    assert len(borel_orbit_span(m, (-1,), "-")) == 1
    with pytest.raises(ValueError):
        borel_orbit_span(m, (1,), "0")
    with pytest.raises(WeightAbsent):
        borel_orbit_span(m, (3,), "+")


def test_orbit_span_sizes_follow_bruhat_order_on_a2():
    r = ring("A2")
    m = r.catalog.irrep((1, 0))
    sizes = sorted(len(borel_orbit_span(m, mu, "+")) for mu in m.weights)
    assert sizes == [1, 2, 3]


def test_orthogonal_complement_is_homogeneous_annihilator():
    r = ring("B2")
    m = r.catalog.irrep((0, 1))
    span = borel_orbit_span(m, m.weights[2], "+")
    comp = orthogonal_complement(m, span)
    assert len(comp) + len(span) == m.dim
    for f in comp:
        assert m.vector_weight(f) is not None
        assert all(sum(a * b for a, b in zip(f, v)) == 0 for v in span)


def test_ideal_generators_for_identity_pair_are_off_diagonal():
    r = ring("A1")
    _, a, b, c, d = sl2(r)
    data = ideal_generators(r, weyl_pair(r, (), ()), [(1,)])
    gens = data.generators()
    assert len(gens) == 2 and data.label() == ["e", "e"]
    for x in (b, c):
        assert ideal_membership_certificate(r, x, data) is not None
    assert ideal_membership_certificate(r, a, data) is None
    longest = ideal_generators(r, weyl_pair(r, (0,), (0,)), [(1,)])
    assert longest.generators() == []


def test_weyl_pairs_cover_the_square_of_the_group():
    assert len(weyl_pairs(ring("A2"))) == 36


# ---------------------------------------------------------------- certificates


def test_membership_certificates():
    r = ring("A1")
    _, a, b, c, d = sl2(r)
    data = ideal_generators(r, weyl_pair(r, (), ()), [(1,)])
    cert = ideal_membership_certificate(r, data.generators()[0], data, level=1)
    assert cert is not None and len(cert.terms) == 1
    (coeff, _, mult), = cert.terms
    assert r.equals(mult.scale(coeff), r.one())
    prod = ideal_membership_certificate(r, b * a, data, level=1)
    assert prod is not None and prod.to_json()
    assert ideal_membership_certificate(r, r.one(), data) is None
    assert ideal_membership_certificate(r, r.zero(), data).terms == []


# ---------------------------------------------------------------- localisation


@pytest.mark.parametrize("type_name", ["A1", "A2"])
def test_normality_holds_for_every_weyl_pair(type_name):
    r = ring(type_name)
    pairs = weyl_pairs(r) if type_name == "A1" else [weyl_pair(r, (), ()), weyl_pair(r, (0,), (1,)),
                                                      weyl_pair(r, (0, 1, 0), (0, 1, 0))]
    for w in pairs:
        ctx = LocalizationContext(r, w, level=1)
        report = ctx.verify_normality()
        assert report.passed, report.violations[:2]
        assert ctx.normality_verified == set(ctx.generators)


def test_normal_element_scalars_on_a1():
    r = ring("A1")
    _, a, b, c, d = sl2(r)
    identity_pair = LocalizationContext(r, weyl_pair(r, (), ()), level=1)
    assert r.equals(identity_pair.c_element((1,)), a)
    report = normality_check(identity_pair, (1,))
    assert report.passed and len(report.details["scalars"]) == 4
    # for the longest pair the ideal is zero, so normality is an exact identity
    ctx = LocalizationContext(r, weyl_pair(r, (0,), (0,)), level=1)
    cw = ctx.c_element((1,))
    assert r.equals(cw, b)
    expected = {}
    for name, y in zip("abcd", (a, b, c, d)):
        s = ctx.sigma_c((1,), y.bigrade())
        assert r.equals(r.bracket(cw, y), (y * cw).scale(s))
        expected[name] = s
    assert expected == {"a": 1, "b": 0, "c": 0, "d": -1}


def test_localized_bracket_requires_normality():
    r = ring("A1")
    ctx = LocalizationContext(r, weyl_pair(r, (0,), (0,)), level=1)
    z = ctx.z_plus((1,), [F(1), F(0)])
    with pytest.raises(NormalityUnverified):
        ctx.bracket(z, z)
    ctx.verify_normality()
    assert ctx.is_zero(localized_bracket(ctx, z, ctx.element(r.one())))


def test_localized_bracket_matches_quotient_rule():
    r = ring("A2", twisted=True)
    # cross-multiplied numerators have degree four, so level-2 multipliers are needed
    ctx = LocalizationContext(r, weyl_pair(r, (0,), (1,)), level=2)
    ctx.verify_normality()
    lam = ctx.generators[0]
    m = r.catalog.irrep(lam)
    zs = [ctx.z_plus(lam, m.basis_vector(i)) for i in range(m.dim)]
    zs += [ctx.z_minus(lam, m.basis_vector(i)) for i in range(m.dim)]
    for x, y in itertools.islice(itertools.combinations(zs, 2), 0, None, 3):
        assert ctx.difference_certificate(ctx.bracket(x, y), ctx.exact_bracket(x, y)) is not None


def test_c_powers_multiply_over_generators():
    r = ring("A2")
    ctx = LocalizationContext(r, weyl_pair(r, (), ()), level=1)
    g1, g2 = ctx.generators
    lam = tuple(x + y for x, y in zip(g1, g2))
    assert ctx.decompose(lam) == (1, 1)
    assert r.equals(ctx.c_power(lam).numerator, ctx.c_element(g1) * ctx.c_element(g2))
    with pytest.raises(ValueError):
        ctx.decompose((-1, 0))


# ---------------------------------------------------------------- adjoint action


def test_adjoint_action_examples():
    r = ring("A1")
    _, a, b, c, d = sl2(r)
    assert r.is_zero(adjoint_action(r, a, r.one()))
    assert r.is_zero(adjoint_action(r, r.one(), b))


def test_adjoint_identities_on_a1():
    r = ring("A1")
    _, a, b, c, d = sl2(r)
    report = adjoint_identity_suite(r, [(a, b, c), (b, d, a), (c, c, d)])
    assert report.passed, report.violations[:2]


def test_fixed_points_truncated():
    r = ring("A1")
    _, a, b, c, d = sl2(r)
    gens = [a, b, c, d]
    report = fixed_point_check(r, gens, [r.one(), a, a * d - b * c])
    assert report.passed and report.details["truncated"]
    rows = report.details["rows"]
    assert [row["central"] for row in rows] == [True, False, True]
    assert [row["ad_fixed"] for row in rows] == [True, False, True]


# ---------------------------------------------------------------- grading, coevaluation


def test_h_grades_on_a1():
    r = ring("A1")
    ctx = LocalizationContext(r, weyl_pair(r, (0,), ()), level=1)
    samples = r.homogeneous_coefficients(r.catalog.irrep((1,)))
    report = h_grade_suite(ctx, samples)
    assert report.passed, report.violations[:2]


def test_separating_character():
    a = ((F(1),), (F(-1),))
    b = ((F(1),), (F(1),))
    assert separating_character(a, a) is None
    assert separating_character(a, b) == (1, 0)


def test_coevaluation_identities():
    r = ring("A1")
    assert coevaluation_checks(r, r.catalog.irrep((1,)), max_word_len=2).passed


def test_hactk_closed_forms_on_a1():
    r = ring("A1")
    ctx = LocalizationContext(r, weyl_pair(r, (0,), (0,)), level=2)
    ctx.verify_normality()
    coeffs = r.homogeneous_coefficients(r.catalog.irrep((1,)))
    start = time.perf_counter()
    report = hactk_check(ctx, (1,), coeffs)
    assert report.passed, report.violations[:2]
    assert report.details["uncertified"] == 0
    assert time.perf_counter() - start < 120
