import math

import numpy as np
import pytest
from numpy.polynomial.hermite import hermgauss

from kernlr import (
    CapabilityError,
    DecayHypothesis,
    GaussianRbfSpectrum,
    HypothesisError,
    SphereSpectrumParams,
    beta_from_upsilon,
    entrywise_error_rate,
    exp_tail_bound,
    exponential_decay,
    gaussian_rbf_eigenfunction,
    gaussian_rbf_eigenvalue,
    hypothesis_quantities,
    largest_tail_gap,
    poly_tail_bound,
    polynomial_decay,
    required_rank,
    sphere_decay_hypothesis,
    sphere_harmonic_count,
    tensor_spectrum,
    weighted_hermite,
)

SPEC1 = GaussianRbfSpectrum(sigma=1.0, bandwidth=1.0)  # upsilon = 2


def test_eigenvalues_at_upsilon_two():
    # c = sqrt(2 / (3 + sqrt 5)), q = 2 / (3 + sqrt 5), both evaluated by hand
    assert SPEC1.upsilon == pytest.approx(2.0)
    assert gaussian_rbf_eigenvalue(0, SPEC1) == pytest.approx(0.6180340, abs=5e-8)
    assert gaussian_rbf_eigenvalue(1, SPEC1) == pytest.approx(0.2360680, abs=5e-8)
    assert gaussian_rbf_eigenvalue(2, SPEC1) == pytest.approx(0.0901699, abs=5e-8)


def test_eigenvalue_constant_ratio():
    for upsilon in (0.5, 2.0, 7.0):
        spec = GaussianRbfSpectrum(sigma=math.sqrt(upsilon / 2.0), bandwidth=1.0)
        vals = [gaussian_rbf_eigenvalue(i, spec) for i in range(8)]
        ratios = np.diff(np.log(vals))
        assert ratios == pytest.approx(np.full(7, math.log(spec.ratio)), abs=1e-12)


def test_eigenvalue_requires_univariate():
    with pytest.raises(ValueError):
        gaussian_rbf_eigenvalue(0, GaussianRbfSpectrum(sigma=1.0, bandwidth=1.0, p=2))


def test_beta_value_and_identity():
    assert beta_from_upsilon(2.0) == pytest.approx(0.9624237, abs=5e-8)
    for upsilon in (0.1, 1.0, 2.0, 10.0, 100.0):
        spec = GaussianRbfSpectrum(sigma=math.sqrt(upsilon / 2.0), bandwidth=1.0)
        assert math.exp(-beta_from_upsilon(upsilon)) == pytest.approx(spec.ratio, rel=1e-12)
    assert beta_from_upsilon(100.0) < beta_from_upsilon(1.0)
    with pytest.raises(ValueError):
        beta_from_upsilon(0.0)


def test_eigenfunction_odd_orders_vanish_at_origin():
    assert gaussian_rbf_eigenfunction(1, 0.0, SPEC1) == 0.0
    assert gaussian_rbf_eigenfunction(3, 0.0, SPEC1) == 0.0


def test_eigenfunction_normalization_quadrature():
    # Gauss-Hermite oracle: E[u_i(x)^2] over N(0, sigma^2) must be 1
    nodes, weights = hermgauss(150)
    xs = nodes * math.sqrt(2.0) * SPEC1.sigma
    wq = weights / math.sqrt(math.pi)
    for i in range(11):
        second_moment = float(np.sum(wq * gaussian_rbf_eigenfunction(i, xs, SPEC1) ** 2))
        assert second_moment == pytest.approx(1.0, abs=1e-9)


def test_eigenfunction_normalization_monte_carlo():
    # Monte Carlo companion of the quadrature oracle. The estimator's standard
    # error grows with the order (u_i^2 has heavy fourth moments), so the
    # tolerance is the larger of 0.02 and five standard errors.
    rng = np.random.default_rng(123)
    xs = rng.standard_normal(10**6) * SPEC1.sigma
    for i in range(11):
        u2 = gaussian_rbf_eigenfunction(i, xs, SPEC1) ** 2
        mean = float(u2.mean())
        se = float(u2.std() / math.sqrt(u2.size))
        assert abs(mean - 1.0) <= max(0.02, 5.0 * se)


def test_mercer_partial_sum_reproduces_kernel_pointwise():
    x, y = 0.3, -0.5
    total = sum(
        gaussian_rbf_eigenvalue(i, SPEC1)
        * gaussian_rbf_eigenfunction(i, x, SPEC1)
        * gaussian_rbf_eigenfunction(i, y, SPEC1)
        for i in range(50)
    )
    assert total == pytest.approx(math.exp(-((x - y) ** 2) / 2.0), abs=1e-6)


def test_eigenfunction_order_cap():
    with pytest.raises(CapabilityError):
        gaussian_rbf_eigenfunction(61, 0.0, SPEC1)
    gaussian_rbf_eigenfunction(60, 0.0, SPEC1)  # at the cap is fine


def test_weighted_hermite_uniform_bound():
    # classical bound: |e^{-t^2} H_i(t)| <= 1.09 sqrt(2^i i!) for every order
    t = np.linspace(-30.0, 30.0, 24001)
    for i in range(41):
        assert np.abs(weighted_hermite(i, t)).max() <= 1.09


def test_tensor_spectrum_bivariate_hand_case():
    spec = GaussianRbfSpectrum(sigma=1.0, bandwidth=1.0, p=2)
    c, q = spec.base, spec.ratio
    vals = tensor_spectrum(spec, 4)
    # degree 0 once, degree 1 twice, then degree 2
    assert vals[0] == pytest.approx(c**2)
    assert vals[1] == pytest.approx(c**2 * q)
    assert vals[2] == pytest.approx(c**2 * q)
    assert vals[3] == pytest.approx(c**2 * q**2)


def test_tensor_spectrum_univariate_matches_sequence():
    vals = tensor_spectrum(SPEC1, 6)
    expect = [gaussian_rbf_eigenvalue(i, SPEC1) for i in range(6)]
    assert vals == pytest.approx(expect)


def test_tensor_spectrum_trivariate_multiplicities():
    spec = GaussianRbfSpectrum(sigma=1.0, bandwidth=1.0, p=3)
    vals = tensor_spectrum(spec, 40)
    uniq, counts = np.unique(np.round(np.log(vals), 9), return_counts=True)
    counts = counts[::-1]  # descending degree order
    for degree, mult in enumerate(counts[:-1]):  # last level may be truncated
        assert mult == (degree + 1) * (degree + 2) // 2


def test_tensor_spectrum_total_mass():
    # for any upsilon the univariate eigenvalues sum to 1 (unit-diagonal kernel),
    # so the p-variate ones sum to 1 as well; partial sums approach from below
    for p in (1, 2, 3):
        spec = GaussianRbfSpectrum(sigma=1.3, bandwidth=0.9, p=p)
        assert spec.base / (1.0 - spec.ratio) == pytest.approx(1.0, rel=1e-12)
        partial = np.cumsum(tensor_spectrum(spec, 6000))
        assert np.all(partial < 1.0 + 1e-12)
        assert partial[-1] == pytest.approx(1.0, abs=1e-5)


def test_sphere_harmonic_count_small_cases():
    assert sphere_harmonic_count(0, 3) == 1
    assert sphere_harmonic_count(1, 3) == 3
    assert sphere_harmonic_count(2, 3) == 5
    assert sphere_harmonic_count(0, 7) == 1


def test_sphere_harmonic_count_against_binomial_difference():
    # independent oracle: N_l = C(p + l - 1, l) - C(p + l - 3, l - 2), the
    # count of degree-l homogeneous polynomials minus the non-harmonic ones
    for p in (3, 4, 5, 8):
        for l in range(0, 12):
            expect = math.comb(p + l - 1, l) - (math.comb(p + l - 3, l - 2) if l >= 2 else 0)
            assert sphere_harmonic_count(l, p) == expect


def test_sphere_decay_polynomial_case():
    hyp = sphere_decay_hypothesis(SphereSpectrumParams(p=3, coefficient_decay=2.0))
    assert hyp.kind == "P"
    assert hyp.alpha == pytest.approx(4.0)
    assert hyp.r == pytest.approx(0.5)


def test_sphere_decay_geometric_case():
    hyp = sphere_decay_hypothesis(SphereSpectrumParams(p=3, geometric_ratio=0.5))
    assert hyp.kind == "E"
    assert hyp.gamma == pytest.approx(0.5)
    assert hyp.beta == pytest.approx(1.386294, abs=5e-7)  # 2 log 2


def test_sphere_decay_threshold_violation():
    # at p=3 the admissibility floor is (9 - 12 + 5)/2 = 1
    with pytest.raises(HypothesisError):
        SphereSpectrumParams(p=3, coefficient_decay=1.0)


def test_poly_tail_bound_values_and_brute_force():
    assert poly_tail_bound(10, 2.0) == pytest.approx(0.1)
    assert poly_tail_bound(1, 3.0) == pytest.approx(0.5)
    i = np.arange(11, 10**7 + 1, dtype=float)
    assert float(np.sum(i**-2.0)) <= 0.1
    i = np.arange(2, 10**7 + 1, dtype=float)
    assert float(np.sum(i**-3.0)) <= 0.5
    assert poly_tail_bound(20, 1.5) < poly_tail_bound(5, 1.5)
    with pytest.raises(ValueError):
        poly_tail_bound(10, 1.0)


def test_exp_tail_bound_values():
    assert exp_tail_bound(5, 1.0, 1.0) == pytest.approx(math.exp(-5.0), rel=1e-12)
    # gamma = 1 collapses to exp(-beta d) / beta
    for beta in (0.5, 1.0, 2.0):
        for d in (1, 4, 9):
            assert exp_tail_bound(d, beta, 1.0) == pytest.approx(math.exp(-beta * d) / beta, rel=1e-10)
    # geometric-series oracle at beta = 1, gamma = 1, d = 5
    true_tail = math.exp(-6.0) / (1.0 - math.exp(-1.0))
    assert true_tail <= exp_tail_bound(5, 1.0, 1.0)


def test_exp_tail_bound_decreasing_in_d():
    for beta in (0.5, 1.0):
        for gamma in (0.5, 1.0):
            vals = [exp_tail_bound(d, beta, gamma) for d in range(1, 30)]
            assert np.all(np.diff(vals) < 0.0)


def test_tail_bounds_dominate_brute_force_grid():
    # the full dominance grid; sums taken to 1e7 terms
    for alpha in (1.5, 2.0, 3.0):
        for d in (1, 5, 20):
            i = np.arange(d + 1, 10**7 + 1, dtype=float)
            assert float(np.sum(i**-alpha)) <= poly_tail_bound(d, alpha)
    for beta in (0.5, 1.0):
        for gamma in (0.5, 1.0):
            for d in (1, 5, 20):
                i = np.arange(d + 1, 10**7 + 1, dtype=float)
                assert float(np.sum(np.exp(-beta * i**gamma))) <= exp_tail_bound(d, beta, gamma)


def test_entrywise_error_rate():
    assert entrywise_error_rate(10**4, polynomial_decay(2.0)) == pytest.approx(0.092103, abs=5e-7)
    assert entrywise_error_rate(1000, exponential_decay(1.0)) == pytest.approx(0.001)
    # large alpha approaches log(n)/n from above at fixed n
    n = 500
    limit = math.log(n) / n
    assert entrywise_error_rate(n, polynomial_decay(50.0)) > limit
    assert entrywise_error_rate(n, polynomial_decay(50.0)) == pytest.approx(limit, rel=0.2)


def test_required_rank():
    assert required_rank(1000, exponential_decay(0.9624237, 1.0)) == 8
    assert required_rank(100, polynomial_decay(2.0)) == 10
    for hyp in (polynomial_decay(2.0), exponential_decay(0.9624237)):
        ranks = [required_rank(n, hyp) for n in (10, 100, 1000, 10000)]
        assert ranks == sorted(ranks)


def test_required_rank_honors_strict_threshold():
    # when log(n)/beta is an exact integer the rank must still exceed it
    beta = math.log(1000) / 7.0  # makes the threshold exactly 7
    assert required_rank(1000, exponential_decay(beta)) == 8


def test_decay_hypothesis_validation():
    with pytest.raises(HypothesisError):
        polynomial_decay(0.5)
    with pytest.raises(HypothesisError):
        polynomial_decay(2.0, r=0.8)  # alpha <= 2r + 1
    with pytest.raises(HypothesisError):
        exponential_decay(-1.0)
    with pytest.raises(HypothesisError):
        exponential_decay(1.0, gamma=1.5)
    with pytest.raises(HypothesisError):
        exponential_decay(1.0, s=0.6)  # beta <= 2s
    with pytest.raises(ValueError):
        DecayHypothesis(kind="Q")


def test_largest_tail_gap_hand_case():
    assert largest_tail_gap([3.0, 1.0, 1.0], 1) == pytest.approx(2.0)


def test_largest_tail_gap_geometric_first_gap_dominates():
    c, q = SPEC1.base, SPEC1.ratio
    w = [c * q**j for j in range(12)]
    for i in (1, 2, 5):
        assert largest_tail_gap(w, i) == pytest.approx(w[i - 1] - w[i])


def test_largest_tail_gap_validation():
    with pytest.raises(ValueError):
        largest_tail_gap([1.0], 1)
    with pytest.raises(ValueError):
        largest_tail_gap([3.0, 1.0], 2)


def test_hypothesis_quantities_gamma_support():
    w = [3.0, 1.0, 0.5, 0.1]
    delta, gamma = hypothesis_quantities(w, 1, SPEC1)
    assert delta == pytest.approx(2.0)
    assert gamma == 0.0
    _, gamma = hypothesis_quantities(w, 2, SphereSpectrumParams(p=3, geometric_ratio=0.3))
    assert gamma == 0.0
    with pytest.raises(CapabilityError):
        hypothesis_quantities(w, 1, "somewhere else")
