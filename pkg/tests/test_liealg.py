from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from twisted_poisson.lincomb import LinComb
from twisted_poisson.liealg import (
    BasisVector,
    DeltaExtension,
    all_words,
    build_d,
    build_g_structure,
    coproduct_word,
    delta_on_word,
    delta_prime,
    delta_prime_closed_form,
    double_bracket_rr,
    g_bracket,
    multiply_uu,
    r_matrix,
    swap_factors,
    verify_antisymmetry,
    verify_closed_form,
    verify_cocycle,
    verify_double_root_brackets,
    verify_g_jacobi,
    verify_jacobi,
    verify_opposite_root_brackets,
    verify_pairing_relation,
    verify_quotient_to_g,
    verify_root_brackets_match_g,
    verify_rr_invariance,
    wedge,
    with_corrupted_entry,
)
from twisted_poisson.rootdata import TwistForm, generate_roots

from conftest import algebra, cartan

H = Fraction(1, 2)
TYPES = ["A1", "A2", "B2"]


def h(i):
    return BasisVector("h", i)


def k(i):
    return BasisVector("k", i)


# ---------------------------------------------------------------- g structure


def test_a1_g_brackets():
    d = algebra("A1")
    gs = d.g
    x, y = d.x(0), d.x(1)
    alpha = d.roots.all_roots[0]
    assert g_bracket(gs, x, y) == d.h_of(alpha) * d.pairing(0)
    assert g_bracket(gs, h(0), x) == LinComb.single(x, 2)
    assert g_bracket(gs, x, y, primed=True) == d.h_of(alpha, "k") * d.pairing(0)


def test_a2_simple_root_vectors_bracket_to_the_sum_root():
    d = algebra("A2")
    value = g_bracket(d.g, d.x(0), d.x(1))
    target = d.roots.find((1, 1))
    assert list(value) == [d.x(target)] and value[d.x(target)] != 0


@pytest.mark.parametrize("type_name", TYPES + ["G2", "A3"])
def test_g_jacobi_and_simple_pairings(type_name):
    cd = cartan(type_name)
    gs = build_g_structure(generate_roots(cd))
    assert verify_g_jacobi(gs).passed
    rs = gs.roots
    for i in range(cd.n):
        assert gs.pairing[rs.simple_index(i)] == Fraction(1, cd.d[i])


# ---------------------------------------------------------------- d brackets


def test_d_bracket_examples_untwisted():
    d = algebra("A1")
    x, y = d.x(0), d.x(1)
    alpha = d.roots.all_roots[0]
    assert d.bracket_basis(h(0), k(0)) == 0
    assert d.bracket(d.h_of(alpha), LinComb.single(x)) == LinComb.single(x, 2)
    assert d.bracket_basis(x, y) == (d.h_of(alpha) + d.h_of(alpha, "k")) * (H * d.pairing(0))
    assert d.bracket(LinComb.single(x), LinComb.single(x)) == 0
    assert d.bracket(LinComb(), LinComb.single(y)) == 0


@pytest.mark.parametrize("type_name", TYPES)
def test_h_plus_k_acts_by_twice_the_pairing(type_name):
    d = algebra(type_name)
    cd = d.cartan
    for i in range(cd.n):
        lam = cd.fundamental(i)
        hk = d.h_of(lam) + d.h_of(lam, "k")
        for idx, alpha in enumerate(d.roots.all_roots):
            assert d.bracket(hk, LinComb.single(d.x(idx))) == LinComb.single(d.x(idx), 2 * cd.pair(lam, alpha))


@pytest.mark.parametrize("type_name", ["A2", "B2"])
def test_h_minus_k_acts_by_twice_the_twist(type_name):
    d = algebra(type_name, twisted=True)
    cd, tf = d.cartan, d.twist
    for i in range(cd.n):
        lam = cd.fundamental(i)
        diff = d.h_of(lam) - d.h_of(lam, "k")
        for idx, alpha in enumerate(d.roots.all_roots):
            assert d.bracket(diff, LinComb.single(d.x(idx))) == LinComb.single(d.x(idx), -2 * tf.value(lam, alpha))


@pytest.mark.parametrize("type_name, twisted", [("A1", False), ("A2", False), ("A2", True), ("B2", False),
                                                ("B2", True)])
def test_jacobi_and_structure_checks(type_name, twisted):
    d = algebra(type_name, twisted)
    for check in (verify_jacobi, verify_antisymmetry, verify_root_brackets_match_g, verify_double_root_brackets,
                  verify_opposite_root_brackets, verify_pairing_relation, verify_quotient_to_g):
        report = check(d)
        assert report.passed, (check.__name__, report.violations[:3])
        assert report.checked > 0 or d.cartan.n == 1


def test_jacobi_detects_a_corrupted_entry():
    d = algebra("A2")
    broken = with_corrupted_entry(d, d.x(0), d.x(1))
    assert not verify_jacobi(broken).passed


def _elements(d):
    coeff = st.integers(-3, 3)
    return st.lists(st.tuples(st.sampled_from(d.basis), coeff), max_size=4).map(LinComb)


@given(st.data())
def test_bracket_bilinear_antisymmetric_and_jacobi_on_random_elements(data):
    d = algebra("B2", twisted=True)
    a, b, c = (data.draw(_elements(d)) for _ in range(3))
    assert d.bracket(a, b) == -d.bracket(b, a)
    assert d.bracket(a + b * 3, c) == d.bracket(a, c) + d.bracket(b, c) * 3
    jac = d.bracket(d.bracket(a, b), c) + d.bracket(d.bracket(b, c), a) + d.bracket(d.bracket(c, a), b)
    assert jac == 0


@given(st.fractions(min_value=-9, max_value=9, max_denominator=4), st.fractions(min_value=-9, max_value=9, max_denominator=4),
       st.fractions(min_value=-9, max_value=9, max_denominator=4))
def test_jacobi_for_arbitrary_rank_three_twist(p, q, r):
    cd = cartan("A3")
    tf = TwistForm.from_entries(cd, [[0, p, q], [-p, 0, r], [-q, -r, 0]])
    assert verify_jacobi(build_d(cd, tf)).passed


# ---------------------------------------------------------------- r-matrix


def test_r_matrix_a1_and_skew():
    d = algebra("A1")
    r = r_matrix(d)
    x, y = d.x(0), d.x(1)
    s = 1 / d.pairing(0)
    assert r == LinComb([((x, y), s), ((y, x), -s)])
    for name in TYPES:
        rr = r_matrix(algebra(name))
        assert swap_factors(rr) == -rr
    assert len(r_matrix(algebra("A2"))) == 6


def test_r_matrix_normalisation_pairs_to_one():
    d = algebra("B2")
    for (a, b), c in r_matrix(d).items():
        if d.roots.is_positive(a.index):
            assert c * d.pairing(a.index) == 1


def test_double_bracket_scaling():
    d = algebra("A2")
    r = r_matrix(d)
    assert double_bracket_rr(d, LinComb()) == 0
    assert double_bracket_rr(d, r * 2) == double_bracket_rr(d, r) * 4
    assert double_bracket_rr(d, r)  # non-zero in rank two


@pytest.mark.parametrize("type_name, twisted", [("A1", False), ("A2", False), ("A2", True), ("B2", True)])
def test_rr_invariance(type_name, twisted):
    assert verify_rr_invariance(algebra(type_name, twisted)).passed


def test_rr_invariance_detects_corrupted_r():
    d = algebra("A2")
    r = r_matrix(d)
    (key, c), = [(key, c) for key, c in r.items()][:1]
    corrupted = r + LinComb.single(key, c)
    assert not verify_rr_invariance(d, corrupted).passed


# ---------------------------------------------------------------- cocommutator


def test_delta_prime_examples():
    d = algebra("A1")
    x, y = d.x(0), d.x(1)
    alpha = d.roots.all_roots[0]
    hk = d.h_of(alpha) + d.h_of(alpha, "k")
    assert delta_prime(d, h(0)) == 0 and delta_prime(d, k(0)) == 0
    assert delta_prime(d, x) == wedge(LinComb.single(x), hk) * H
    assert delta_prime(d, y) == wedge(LinComb.single(y), hk) * H


@pytest.mark.parametrize("type_name, twisted", [("A1", False), ("A2", False), ("A2", True), ("B2", False),
                                                ("B2", True)])
def test_cocycle_and_co_antisymmetry(type_name, twisted):
    report = verify_cocycle(algebra(type_name, twisted))
    assert report.passed and report.checked > 0


@pytest.mark.parametrize("type_name", TYPES)
def test_closed_form_holds_on_lie_generators(type_name):
    d = algebra(type_name)
    for v in d.generators:
        assert delta_prime(d, v) == delta_prime_closed_form(d, v)


def test_closed_form_fails_on_non_simple_roots():
    """x.r and the half-wedge closed form differ by root-vector wedges for
    non-simple roots; no rescaling of the Cartan part can absorb them."""
    d = algebra("A2")
    report = verify_closed_form(d)
    failing = sorted(v["generator"] for v in report.violations)
    assert failing == ["x[-1,-1]", "x[1,1]"]
    top = d.x(d.roots.find((1, 1)))
    diff = delta_prime(d, top) - delta_prime_closed_form(d, top)
    assert all(a.kind == "x" and b.kind == "x" for a, b in diff)
    a1, a2 = d.x(d.roots.find((1, 0))), d.x(d.roots.find((0, 1)))
    assert diff == wedge(LinComb.single(a2), LinComb.single(a1)) * 2
    b2 = verify_closed_form(algebra("B2"))
    assert len(b2.violations) == 4
    assert verify_closed_form(algebra("A1")).passed


# ---------------------------------------------------------------- U(d) words


def test_delta_on_word_examples():
    d = algebra("A1")
    x = d.x(0)
    assert delta_on_word(d, ()) == 0
    assert delta_on_word(d, (h(0),)) == 0
    single = delta_prime(d, x).map_keys(lambda key: ((key[0],), (key[1],)))
    expected = multiply_uu(coproduct_word((x,)), single) + multiply_uu(single, coproduct_word((x,)))
    assert delta_on_word(d, (x, x)) == expected


def test_delta_extension_is_cocommutator_on_words():
    """delta(w) evaluated on a tensor module agrees with the commutator of coproducts
    being zero only through skew-symmetry: delta is anti-invariant under the flip."""
    d = algebra("A2")
    ext = DeltaExtension(d)
    for word in all_words(d.generators, 2):
        value = ext(word)
        assert value.map_keys(lambda key: (key[1], key[0])) == -value


def test_coproduct_word_counts_splittings():
    d = algebra("A1")
    word = (d.x(0), h(0), d.x(1))
    cp = coproduct_word(word)
    assert sum(cp.values()) == 2 ** len(word)
