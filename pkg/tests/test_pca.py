"""Combinator algebra: reduction, bracket abstraction, fixpoints."""

import pytest
from hypothesis import given, settings, strategies as st

from artifact.pca import (App, Diverged, DIVERGED, IDENT, K, Pr, Pr1, Pr2, S,
                          Var, bracket, check_fix_law, check_phi_law,
                          kleene_equal, lams, parse_clterm, pca_fix,
                          phi_realiser, reduce, show_clterm, subst)

a, b, c = Var("a"), Var("b"), Var("c")


def test_delta_rules():
    assert reduce(K()(a, b), 10) == a
    assert reduce(S()(K(), K(), a), 10) == a
    assert reduce(Pr1()(Pr()(a, b)), 10) == a
    assert reduce(Pr2()(Pr()(a, b)), 10) == b


def test_constructors_and_atoms_are_normal():
    assert reduce(Pr()(a, b), 10) == Pr()(a, b)
    assert reduce(a, 0) == a
    assert reduce(S()(K(), K()), 0) == S()(K(), K())


def test_projection_from_non_pair_is_stuck():
    t = Pr1()(a)
    assert reduce(t, 10) == t


def test_fuel_counts_delta_steps():
    t = S()(K(), K(), a)  # two steps
    assert isinstance(reduce(t, 0), Diverged)
    assert isinstance(reduce(t, 1), Diverged)
    assert reduce(t, 2) == a


def test_normal_order_discards_diverging_arguments():
    omega = App(pca_fix(), K())  # no normal form
    assert reduce(K()(a, omega), 10**4) == a
    assert reduce(Pr1()(Pr()(b, omega)), 10**4) == b


def test_arguments_are_normalized():
    assert reduce(Pr()(K()(a, b), a), 10) == Pr()(a, a)


def test_negative_fuel_rejected():
    with pytest.raises(ValueError):
        reduce(a, -1)


def test_kleene_equality_cases():
    assert kleene_equal(K()(a, b), a, 10)
    omega = App(pca_fix(), K())
    assert kleene_equal(omega, App(pca_fix(), S()), 1000)
    assert not kleene_equal(omega, a, 1000)
    assert not kleene_equal(a, b, 10)


def test_bracket_base_cases():
    assert reduce(App(bracket("x", Var("x")), K()), 10) == K()
    assert reduce(App(bracket("x", K()), a), 10) == K()
    t = bracket("x", Pr()(Var("x"), Var("x")))
    assert reduce(App(t, S()), 100) == Pr()(S(), S())


def _leaf():
    return st.sampled_from([S(), K(), Pr(), Pr1(), Pr2(), Var("x"), Var("c0")])


def _clterms():
    return st.recursive(_leaf(),
                        lambda sub: st.builds(App, sub, sub), max_leaves=8)


@settings(max_examples=120, deadline=None)
@given(_clterms(), _clterms())
def test_bracket_simulates_substitution(body, arg):
    lhs = App(bracket("x", body), arg)
    rhs = subst(body, "x", arg)
    assert kleene_equal(lhs, rhs, 20000)


@settings(max_examples=60, deadline=None)
@given(_clterms())
def test_kleene_equality_monotone_in_fuel(t):
    # once settled at low fuel with a normal form, higher fuel agrees
    low = reduce(t, 500)
    if not isinstance(low, Diverged):
        assert reduce(t, 5000) == low


def test_fix_law_examples():
    assert check_fix_law(App(K(), IDENT), a, 10**4)
    f = App(K(), IDENT)
    assert reduce(pca_fix()(f, a), 10**4) == a
    # forever-unfolding cases: both sides run out together
    assert check_fix_law(K(), a, 10**4)
    assert check_fix_law(S(), a, 10**4)
    assert check_fix_law(Pr(), a, 10**4)
    # no fuel at all
    assert check_fix_law(K(), a, 0)


def test_fix_head_converges():
    # fix f reaches a head normal form without unfolding under the guard
    f = App(K(), IDENT)
    v = reduce(App(pca_fix(), f), 10**4)
    assert not isinstance(v, Diverged)


def test_phi_realiser_closed():
    phi = phi_realiser()
    assert "f" not in show_clterm(phi)
    assert not isinstance(reduce(phi, 10**4), Diverged)


def test_phi_law_pruned_and_constant():
    e, k, r = Var("e"), Var("k"), Var("r")
    pruned = lams(["e", "k", "r"], Pr1()(Pr()(k, r(k))))
    assert check_phi_law(pruned, K(), Var("n0"), 10**5)
    env_once = lams(["e", "k", "r"], Pr1()(Pr()(e(k), r)))
    assert check_phi_law(env_once, IDENT, Var("n0"), 10**5)
    const = lams(["e", "k", "r"], S())
    assert check_phi_law(const, K(), Var("n0"), 10**5)


def test_phi_law_diverging_is_vacuous():
    r, k = Var("r"), Var("k")
    loops = lams(["e", "k", "r"], r(k))
    assert check_phi_law(loops, K(), Var("n0"), 10**4)


def test_parse_show_round_trip():
    for s in ["S", "K", "(S K K)", "(Pr (K a) (b c))", "(Pr1 (Pr a b))"]:
        assert show_clterm(parse_clterm(s)) == s


def test_parse_errors():
    for bad in ["", "(S", "S)", "()", "(S K) K"]:
        with pytest.raises(ValueError):
            parse_clterm(bad)


def test_lams_nested():
    t = lams(["x", "y"], Pr()(Var("y"), Var("x")))
    assert reduce(t(a, b), 100) == Pr()(b, a)
