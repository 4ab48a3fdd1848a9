"""Symmetric-function pipeline tests."""

import math
import random
from fractions import Fraction
from math import comb

import numpy as np
import pytest

from bethecurve.errors import BudgetError
from bethecurve.exactalg import CurvePolynomial, CycloLaurent
from bethecurve.golden import expected_full_product, load_case
from bethecurve.symfun import (
    ElementarySeq,
    defining_polynomial,
    elementary_from_power_sums,
    monomial_rectangular,
    omega_elementary,
    power_sums_from_elementary,
    vieta_elementary,
)


def wpoly(*coeffs):
    return CycloLaurent.from_w_coeffs(1, list(coeffs))


def test_vieta_3_2():
    es = vieta_elementary(3, 2)
    assert es[1] == wpoly(3, -1)
    assert es[2] == wpoly(3)
    assert es[3] == wpoly(1)


def test_vieta_4_2():
    es = vieta_elementary(4, 2)
    assert es[1] == wpoly(4)
    assert es[2] == wpoly(6, -1)
    assert es[3] == wpoly(4)
    assert es[4] == wpoly(1)


def test_vieta_2_1():
    # expanding (1-t)^2 = w^-1 t directly gives t^2 - (2 + w^-1) t + 1 = 0
    es = vieta_elementary(2, 1)
    assert es[1] == wpoly(2, 1)
    assert es[2] == wpoly(1)


def test_power_sums_first_is_e1():
    es = vieta_elementary(3, 2)
    ps = power_sums_from_elementary(es.values, 4)
    assert ps[0] == es[1]


def test_power_sums_two_unit_variables():
    elems = [wpoly(2), wpoly(1)]
    ps = power_sums_from_elementary(elems, 6)
    assert all(p == wpoly(2) for p in ps)


def test_power_sums_4_2():
    es = vieta_elementary(4, 2)
    ps = power_sums_from_elementary(es.values, 4)
    # p2 = e1^2 - 2 e2 = 16 - 2(6 - w^-1)
    assert ps[1] == wpoly(4, 2)


def test_monomial_rectangular_unit_power_is_elementary():
    for L, N in ((3, 2), (4, 2), (5, 3)):
        es = vieta_elementary(L, N)
        ps = power_sums_from_elementary(es.values, N)
        assert monomial_rectangular(ps, 1, N) == es[N]


def test_monomial_rectangular_4_2():
    es = vieta_elementary(4, 2)
    ps = power_sums_from_elementary(es.values, 8)
    assert monomial_rectangular(ps, 1, 2) == wpoly(6, -1)
    # independent oracle: m_(2,2) = e2^2 - 2 e1 e3 + 2 e4 on the Vieta values
    e1, e2, e3, e4 = (es[i] for i in (1, 2, 3, 4))
    oracle = e2 * e2 - e1 * e3 * 2 + e4 * 2
    assert oracle == wpoly(6, -12, 1)
    assert monomial_rectangular(ps, 2, 2) == oracle


def test_omega_elementary_4_2():
    om = omega_elementary(4, 2)
    expect = [wpoly(6, -1), wpoly(15), wpoly(20, 2), wpoly(15), wpoly(6, -1), wpoly(1)]
    assert list(om.E) == expect
    assert om.P[0] == wpoly(6, -1)


def test_omega_elementary_3_2():
    om = omega_elementary(3, 2)
    assert list(om.E) == [wpoly(3), wpoly(3, -1), wpoly(1)]


def test_omega_final_elementary_is_one():
    for L, N in ((3, 1), (4, 2), (5, 2), (6, 3), (7, 4)):
        om = omega_elementary(L, N)
        assert om.E[-1] == wpoly(1)


def test_defining_polynomial_3_2():
    P = defining_polynomial(3, 2)
    expect = CurvePolynomial([wpoly(-1), wpoly(3, -1), wpoly(-3), wpoly(1)])
    assert P == expect


def test_defining_polynomial_4_2_factored_form():
    # (v - 1)^2 (v^4 - (4 - w^-1) v^3 + (6 + 2 w^-1) v^2 - (4 - w^-1) v + 1)
    sq = CurvePolynomial([wpoly(-1), wpoly(1)]) ** 2
    quartic = CurvePolynomial(
        [wpoly(1), wpoly(-4, 1), wpoly(6, 2), wpoly(-4, 1), wpoly(1)]
    )
    assert defining_polynomial(4, 2) == sq * quartic


def test_defining_polynomial_6_3_reference_data():
    assert defining_polynomial(6, 3) == expected_full_product(load_case("6,3"))


def test_newton_roundtrip_property():
    rng = random.Random(77)
    for _ in range(30):
        L = rng.randint(1, 6)
        elems = [
            CycloLaurent(1, {rng.randint(0, 3): Fraction(rng.randint(-5, 5), rng.randint(1, 3))})
            for _ in range(L)
        ]
        ps = power_sums_from_elementary(elems, L)
        back = elementary_from_power_sums(ps, L)
        assert back == elems


def test_t_roots_satisfy_branch_equation():
    # validates the Vieta index convention against the defining relation w = t^N/(1-t)^L
    rng = random.Random(5)
    for L, N in ((3, 2), (4, 2), (5, 2), (6, 3), (7, 3), (8, 5)):
        es = vieta_elementary(L, N)
        for _ in range(3):
            w = complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) or 0.3
            coeffs = [1.0 + 0j]
            for i in range(1, L + 1):
                coeffs.append((-1) ** i * es[i].eval_w(w))
            roots = np.roots(coeffs)
            for t in roots:
                val = t**N / (1 - t) ** L
                assert abs(val - w) < 1e-9 * max(1.0, abs(w))


def test_integrality_and_descent_up_to_300():
    for L in range(2, 13):
        for N in range(1, L):
            if comb(L, N) > 300:
                continue
            om = omega_elementary(L, N)
            assert all(e.is_integral() for e in om.E)
            assert all(p.is_integral() for p in om.P)


def test_palindromic_coefficients_at_half_filling():
    # At L = 2N the root product is 1, complementation inverts subset products,
    # and E_i = E_(K-i) exactly.  Regression over the observed family; the
    # (3,2) curve shows the symmetry does not extend beyond half filling.
    for N in (1, 2, 3, 4, 5):
        om = omega_elementary(2 * N, N)
        K = comb(2 * N, N)
        E = [None, *om.E]
        for i in range(1, K):
            assert E[i] == E[K - i]
    om = omega_elementary(3, 2)
    assert om.E[0] != om.E[1]


def test_fast_path_matches_generic_newton():
    for L, N in ((3, 2), (4, 2), (5, 2), (5, 3), (6, 3)):
        K = comb(L, N)
        es = vieta_elementary(L, N)
        ps = power_sums_from_elementary(es.values, N * K)
        P = [monomial_rectangular(ps, n, N) for n in range(1, K + 1)]
        E = elementary_from_power_sums(P, K)
        om = omega_elementary(L, N)
        assert list(om.P) == P
        assert list(om.E) == E


def test_budget_error_names_binomial():
    with pytest.raises(BudgetError, match="3432"):
        omega_elementary(14, 7, budget=1000)
    with pytest.raises(BudgetError):
        defining_polynomial(14, 7, budget=1000)


def test_elementary_seq_index_contract():
    es = vieta_elementary(5, 2)
    assert isinstance(es, ElementarySeq)
    with pytest.raises(IndexError):
        es[0]
    with pytest.raises(IndexError):
        es[6]


def test_invalid_ln_rejected():
    with pytest.raises(ValueError):
        vieta_elementary(3, 3)
    with pytest.raises(ValueError):
        defining_polynomial(2, 0)
