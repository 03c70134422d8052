import json
import math
from fractions import Fraction
from itertools import combinations
from math import factorial, prod

import numpy as np
import pytest

from spinhurwitz.combinatorics import odd_partitions
from spinhurwitz.hurwitz import spin_hurwitz_gamma
from spinhurwitz.polyring import TimeAssignment
from spinhurwitz.symfun import q_schur_delta1
from spinhurwitz.tau import (
    BGW_SPEC, KONTSEVICH_SPEC, HypergeomWeights, SolitonConfig, TauSeries, bgw_kernel, bgw_series,
    bkp_plucker_check, character_tau, convergence_study, delta_star, gamma_tower, hurwitz_extract,
    hurwitz_extract_numeric, hyperg_tau, kdv_q_series, kdv_residual, kdv_series, kdv_soliton_tau,
    kontsevich_series, log_tau_x_derivatives, parse_grid, pfaffian_series, pfaffian_soliton_tau,
    plucker_coefficient, plucker_relations, plucker_support, vn_coefficient, vn_series,
)

F = Fraction


# exact series

def test_hyperg_degree_one():
    tau = hyperg_tau("+", HypergeomWeights.zero(), 1)
    assert tau.coeffs == {(): 1, (1,): F(1, 2)}
    # Q_1 = 2 p_1
    assert tau.to_bilinear().coefficient((1,), (1,)) == 2
    minus = hyperg_tau("-", HypergeomWeights.zero(), 3)
    assert minus.coeffs[(1,)] == -F(1, 2)


def test_coefficient_beyond_truncation_raises():
    tau = hyperg_tau("+", HypergeomWeights.zero(), 3)
    with pytest.raises(ValueError):
        tau.coefficient((4,))


def test_weights():
    w = HypergeomWeights.exponential({1: 2, 3: F(1, 3)})
    assert w.part(2) == 2**2 * F(1, 3) ** 8
    assert HypergeomWeights.table({1: 3}, default=1).weight((2, 1)) == 3
    with pytest.raises(KeyError):
        HypergeomWeights.table({1: 3}).part(2)
    with pytest.raises(ValueError):
        HypergeomWeights.exponential({2: 1})
    t = HypergeomWeights.from_times({1: 1, 3: 2})
    assert t.exponent((3, 1)) == 4 + F(2, 3) * 28


def test_json_round_trip():
    tau = hyperg_tau("-", HypergeomWeights.from_times({3: F(1, 2)}), 5)
    data = json.loads(json.dumps(tau.to_json()))
    back = TauSeries.from_json(data)
    assert back == tau
    assert data["coeffs"][0]["alpha"] == []


def test_specialize():
    tau = hyperg_tau("+", HypergeomWeights.zero(), 4)
    spec = tau.specialize(TimeAssignment.delta(1))
    assert spec.coeffs[(2, 1)] == tau.coeffs[(2, 1)] * q_schur_delta1((2, 1))
    assert not spec.bilinear


# Pluecker relations

def test_plucker_coefficient_signs():
    c = {(3, 1): F(5), (2,): F(7)}
    assert plucker_coefficient(c, [1, 3]) == -5
    assert plucker_coefficient(c, [3, 1]) == 5
    assert plucker_coefficient(c, [2, 0]) == 7
    assert plucker_coefficient(c, [0, 2]) == -7
    assert plucker_coefficient(c, [2, 2]) == 0


def test_plucker_window_size():
    rel = list(plucker_relations(9))
    assert len(rel) == 7
    assert all(len(k) % 2 == 0 and len(b) == 4 for k, b in rel)
    assert len(plucker_support(9)) == 25


def _random_point(seed):
    rng = np.random.default_rng(seed)
    return TimeAssignment.dense({k: F(int(rng.integers(1, 9)), int(rng.integers(1, 9))) for k in range(1, 14)})


@pytest.mark.parametrize("sign", "+-")
@pytest.mark.parametrize("weights", [HypergeomWeights.zero(), HypergeomWeights.exponential({1: 3, 3: F(1, 2)}),
                                     HypergeomWeights.table({1: 2, 2: -1, 3: F(1, 7), 4: 5}, default=F(3, 4))])
def test_hypergeometric_plucker(sign, weights):
    tau = hyperg_tau(sign, weights, 9).specialize(_random_point(1))
    assert bkp_plucker_check(tau, 9) == []


def test_plucker_larger_window():
    tau = hyperg_tau("+", HypergeomWeights.table({k: k + 1 for k in range(14)}), 13)
    assert bkp_plucker_check(tau.specialize(_random_point(2)), 13) == []


def test_plucker_detects_perturbation():
    tau = hyperg_tau("+", HypergeomWeights.zero(), 9).specialize(_random_point(3))
    victim = (3, 2, 1) if (3, 2, 1) in plucker_support(9) else sorted(plucker_support(9))[-1]
    tau.coeffs[victim] = tau.coeffs.get(victim, F(0)) + 1
    assert bkp_plucker_check(tau, 9)


@pytest.mark.parametrize("series", [bgw_series, kontsevich_series,
                                    lambda D: character_tau(BGW_SPEC, D),
                                    lambda D: character_tau(KONTSEVICH_SPEC, D)])
def test_matrix_model_plucker(series):
    assert bkp_plucker_check(series(9), 9) == []


def test_pfaffian_series_is_bkp():
    assert bkp_plucker_check(pfaffian_series(lambda i, j: F(i * i + 3 * j + 1, i + j + 2), 9), 9) == []
    with pytest.raises(ValueError):
        bkp_plucker_check(pfaffian_series(lambda i, j: 1, 8), 9)


def test_character_series_vs_matrix_models():
    K, CK = kontsevich_series(12), character_tau(KONTSEVICH_SPEC, 12)
    for alpha, c in K.coeffs.items():
        assert c == CK.coeffs[alpha] * 4 ** sum(alpha)
    assert all(sum(a) % 3 == 0 for a in K.coeffs)
    B, CB = bgw_series(9), character_tau(BGW_SPEC, 9)
    for alpha, c in B.coeffs.items():
        per_part = prod(F(2 ** (4 * a) * factorial(a), factorial(2 * a)) for a in alpha)
        assert c == CB.coeffs[alpha] * per_part
    P = pfaffian_series(bgw_kernel, 9)
    for alpha, c in B.coeffs.items():
        assert P.coeffs[alpha] / c == (1 if len(alpha) % 2 == 0 else F(1, 2))


def test_delta_star():
    assert delta_star((2, 1)) == F(1, 3)
    assert delta_star(()) == 1
    assert delta_star((3, 1), lambda a: 2 * a) == F(1, 2)


# extraction

def test_vn_coefficients_are_hurwitz_numbers():
    s = vn_series("+", 5, 2)
    for d in range(3, 6):
        for D in odd_partitions(d):
            for r in range(3):
                assert vn_coefficient(s, d, r, D) == spin_hurwitz_gamma("+", d, r, D, (1,) * d)


@pytest.mark.parametrize("sign", "+-")
def test_exact_extraction(sign):
    series = kdv_series(sign, 7, 3)
    qs = kdv_q_series(sign, 7, 3)
    for d in range(3, 8):
        for r in range(4):
            h = spin_hurwitz_gamma(sign, d, r, (1,) * d, (1,) * d)
            assert hurwitz_extract(d, r, series) == h
            assert gamma_tower(sign, d, r) == h
            s = F(d * d) - F(2 * d, 3)
            assert sum(math.comb(r, n) * (-s) ** (r - n) * qs[(d, n)] for n in range(r + 1)) == h
    with pytest.raises(ValueError):
        hurwitz_extract(7, 4, series)


def test_numeric_extraction():
    for d, r in [(3, 1), (4, 2), (5, 1)]:
        exact = float(spin_hurwitz_gamma("+", d, r, (1,) * d, (1,) * d))
        assert abs(hurwitz_extract_numeric("+", d, r) - exact) < 1e-8 * max(1, abs(exact))


# numeric solitons

def test_soliton_tau_hand_values():
    assert kdv_soliton_tau(SolitonConfig.canonical(0)) == 1
    assert kdv_soliton_tau(SolitonConfig.canonical(1)) == pytest.approx(1.5)
    assert kdv_soliton_tau(SolitonConfig.canonical(2)) == pytest.approx(1 + 1 / 2 + 1 / 8 + 1 / 144)
    assert kdv_soliton_tau(SolitonConfig.canonical(2, -1)) == pytest.approx(1 - 1 / 2 - 1 / 8 + 1 / 144)
    far = SolitonConfig.canonical(3, times={1: -200.0})
    assert kdv_soliton_tau(far) == pytest.approx(1.0)


def test_soliton_tau_matches_subset_sum():
    cfg = SolitonConfig((1.0, 2.5, 4.0), (0.3, -0.2, 0.1), 1, {1: 0.2, 3: -0.1})
    total = 0.0
    for k in range(4):
        for S in combinations(range(3), k):
            term = math.exp(sum(cfg.phases[i] + 0.2 * cfg.zetas[i] - 0.1 * cfg.zetas[i] ** 3 / 3 for i in S))
            for i, j in combinations(S, 2):
                zi, zj = cfg.zetas[i], cfg.zetas[j]
                term *= ((zi - zj) / (zi + zj)) ** 2
            total += term
    assert kdv_soliton_tau(cfg) == pytest.approx(total, rel=1e-13)


def test_config_validation():
    with pytest.raises(ValueError):
        SolitonConfig((1.0, 1.0), (0.0, 0.0))
    with pytest.raises(ValueError):
        SolitonConfig((1.0,), (0.0, 1.0))


def test_overflow_guard():
    with pytest.raises(OverflowError):
        kdv_soliton_tau(SolitonConfig.canonical(4, times={1: 300.0}))
    with pytest.raises(OverflowError):
        log_tau_x_derivatives(SolitonConfig.canonical(2), 1e4, 0.0)
    # the log-derivatives stay finite where tau itself overflows
    assert all(map(math.isfinite, log_tau_x_derivatives(SolitonConfig.canonical(4), 300.0, 0.0)))


def test_vanishing_tau_is_reported():
    cfg = SolitonConfig((1.0,), (0.0,), -1)
    with pytest.raises(ZeroDivisionError, match="tau vanishes"):
        log_tau_x_derivatives(cfg, 0.0, 0.0)


def test_parse_grid():
    assert list(parse_grid("-1:1:0.5")) == [-1, -0.5, 0, 0.5, 1]
    with pytest.raises(ValueError):
        parse_grid("1:0:0.1")


GRID = parse_grid("-2:2:1")


def test_kdv_residual_trivial_and_single():
    assert kdv_residual(SolitonConfig.canonical(0), GRID) == 0.0
    # one soliton in the (1/m)t_m normalization solves 3u_t = u_xxx + 6uu_x
    assert kdv_residual(SolitonConfig.canonical(1), GRID, coefficient=3.0) < 1e-7


def test_kdv_residual_hypergeometric_times():
    cfg = SolitonConfig.canonical(4)
    assert kdv_residual(cfg, GRID, coefficient=3.0) < 1e-6
    assert kdv_residual(cfg, GRID, coefficient=12.0) > 1.0


def test_kdv_residual_bkp_times():
    cfg = SolitonConfig.canonical(4, time_scale=2.0)
    assert kdv_residual(cfg, GRID) < 1e-6


def test_convergence_is_second_order():
    study = convergence_study(SolitonConfig.canonical(3, time_scale=2.0), [-0.5, 0.5], [0.0])
    assert len(study["orders"]) == 3
    assert all(abs(o - 2) < 0.2 for o in study["orders"])


def test_pfaffian_soliton_tau():
    zetas, phases = (1.0, 2.0), (0.1, -0.3)
    zero = [[0.0] * 3 for _ in range(3)]
    assert pfaffian_soliton_tau(zero, zetas, phases, {}) == 1.0
    A = [[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]]
    assert pfaffian_soliton_tau(A, zetas, phases, {1: 0.5}) == pytest.approx(1 + math.exp(0.1 + 0.5) / 2 ** 0.5)
    with pytest.raises(ValueError):
        pfaffian_soliton_tau([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]], zetas, phases, {})
    with pytest.raises(ValueError):
        pfaffian_soliton_tau(zero[:2], zetas, phases, {})
