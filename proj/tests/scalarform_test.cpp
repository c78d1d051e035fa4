#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "hessk/linalg.hpp"
#include "hessk/oracle.hpp"
#include "hessk/scalarform.hpp"
#include "hessk/verify.hpp"
#include "test_helpers.hpp"

using namespace hessk;
using hessk_test::random_direction;
using hessk_test::random_positive_spectrum;
using hessk_test::rel_err;

TEST_CASE("f_k basics") {
    CHECK(f_k(2, Spectrum({1, 1, 1})) == doctest::Approx(std::log(3.0)));
    CHECK(f_k(3, Spectrum({1, 1, 1})) == doctest::Approx(0.0));
    CHECK(f_k(2, Spectrum({1, 2, 3})) == doctest::Approx(std::log(11.0)));
    CHECK_THROWS_AS(f_k(2, Spectrum({1, -1})), NonPositiveSigmaError);
}

TEST_CASE("gradient of f_k") {
    const auto g = grad_f_k(2, Spectrum({1, 1, 1}));
    for (double v : g) CHECK(v == doctest::Approx(2.0 / 3.0));

    const auto g2 = grad_f_k(2, Spectrum({1, 2, 3}));
    CHECK(g2[0] == doctest::Approx(5.0 / 11.0));
    CHECK(g2[1] == doctest::Approx(4.0 / 11.0));
    CHECK(g2[2] == doctest::Approx(3.0 / 11.0));
}

TEST_CASE("gradient satisfies the degree-k Euler identity and matches finite differences") {
    CounterRng rng(3);
    for (int trial = 0; trial < 15; ++trial) {
        const int n = 3 + static_cast<int>(rng.below(6));
        const int k = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 2)));
        const Spectrum lam = random_positive_spectrum(n, rng);
        const auto g = grad_f_k(k, lam);
        double dot = 0.0;
        for (int i = 0; i < n; ++i) dot += g[static_cast<std::size_t>(i)] * lam[i];
        CHECK(rel_err(dot, static_cast<double>(k)) < 1e-12);

        const auto fd = oracle::fd_grad(
            [&](const std::vector<double>& x) { return f_k(k, Spectrum(x)); }, lam.values);
        for (int i = 0; i < n; ++i) {
            CHECK(std::abs(g[static_cast<std::size_t>(i)] - fd[static_cast<std::size_t>(i)]) <=
                  1e-6 * std::max(1.0, std::abs(g[static_cast<std::size_t>(i)])));
        }
    }
}

TEST_CASE("hessian entries at the all-ones point") {
    const QuadraticFormMatrix h = hessian_f_k(2, Spectrum({1, 1, 1}));
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            if (i == j) {
                CHECK(h.m(i, j) == doctest::Approx(-4.0 / 9.0));
            } else {
                CHECK(h.m(i, j) == doctest::Approx(-1.0 / 9.0));
            }
        }
    }
}

TEST_CASE("second differential along the ray is exactly -k") {
    CHECK(d2f(2, Spectrum({1, 1, 1}), {1, 1, 1}) == doctest::Approx(-2.0).epsilon(1e-12));
    CounterRng rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 3 + static_cast<int>(rng.below(7));
        const int k = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 2)));
        const Spectrum lam = random_positive_spectrum(n, rng);
        CHECK(std::abs(d2f(k, lam, lam.values) + k) < 1e-10 * k);
    }
}

TEST_CASE("d2f matches the subset oracle and vanishes at zero") {
    CounterRng rng(11);
    const Spectrum zero_dir_lam = random_positive_spectrum(5, rng);
    CHECK(d2f(3, zero_dir_lam, std::vector<double>(5, 0.0)) == 0.0);
    for (int trial = 0; trial < 100; ++trial) {
        const Spectrum lam = random_positive_spectrum(6, rng);
        const auto xi = random_direction(6, rng);
        CHECK(rel_err(d2f(3, lam, xi), oracle::subset_d2f(3, lam, xi)) < 1e-9);
    }
}

TEST_CASE("scaled second differential") {
    CounterRng rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 5;
        const int k = 3;
        const Spectrum lam = random_positive_spectrum(n, rng);
        CHECK(rel_err(d2f_tilde(k, lam, std::vector<double>(n, 1.0)), -static_cast<double>(k)) <
              1e-10);
        CHECK(d2f_tilde(k, lam, std::vector<double>(n, 0.0)) == 0.0);
        const auto eta = random_direction(n, rng);
        const TermDecomposition t = oracle::subset_terms(k, lam, eta);
        CHECK(rel_err(d2f_tilde(k, lam, eta), -t.a + t.b - t.c) < 1e-9);
    }
}

TEST_CASE("pair coefficient closed forms at the all-ones point") {
    const Spectrum lam({1, 1, 1, 1});
    const PairCoeff pc = pair_coeff(2, lam, 0, 1);
    CHECK(pc.half_form == doctest::Approx(1.0));
    CHECK(pc.full_form == doctest::Approx(3.0));
    CHECK(pc.hessian_implied == doctest::Approx(3.0));
    CHECK_THROWS_AS(pair_coeff(2, lam, 1, 1), BadIndexError);
}

TEST_CASE("the enumeration oracle selects the full-square pair coefficient") {
    CounterRng rng(17);
    const int n = 6, k = 3;
    const Spectrum lam = random_positive_spectrum(n, rng);
    const double sk = sigma(k, lam);
    auto quad = [&](const std::vector<double>& eta) {
        const TermDecomposition t = oracle::subset_terms(k, lam, eta);
        return -t.a + t.b - t.c;
    };
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            std::vector<double> ei(n, 0.0), ej(n, 0.0), eij(n, 0.0);
            ei[static_cast<std::size_t>(i)] = 1.0;
            ej[static_cast<std::size_t>(j)] = 1.0;
            eij[static_cast<std::size_t>(i)] = 1.0;
            eij[static_cast<std::size_t>(j)] = 1.0;
            const double m_ij = 0.5 * (quad(eij) - quad(ei) - quad(ej));
            const double coeff_from_enum = -m_ij * sk * sk / (lam[i] * lam[j]);
            const PairCoeff pc = pair_coeff(k, lam, i, j);
            CHECK(rel_err(coeff_from_enum, pc.full_form) < 1e-9);
            CHECK(rel_err(coeff_from_enum, pc.hessian_implied) < 1e-9);
            // and the halved variant does not reproduce the form
            CHECK(std::abs(coeff_from_enum - pc.half_form) >
                  1e-3 * std::max(1.0, std::abs(coeff_from_enum)));
        }
    }
}

TEST_CASE("scaled coefficient matrix") {
    const Spectrum ones({1, 1, 1});
    const QuadraticFormMatrix m = tilde_coeff_matrix(2, ones);
    const QuadraticFormMatrix h = hessian_f_k(2, ones);
    CHECK((m.m - h.m).frobenius() < 1e-14);

    CounterRng rng(19);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 4, k = 2;
        const Spectrum lam = random_positive_spectrum(n, rng);
        const QuadraticFormMatrix form = tilde_coeff_matrix(k, lam);
        CHECK(rel_err(form.evaluate(std::vector<double>(n, 1.0)), -2.0) < 1e-10);
        for (int probe = 0; probe < 100; ++probe) {
            const auto eta = random_direction(n, rng);
            CHECK(std::abs(form.evaluate(eta) - d2f_tilde(k, lam, eta)) <=
                  1e-9 * std::max(1.0, form.m.frobenius()));
        }
    }
}

TEST_CASE("term decomposition") {
    const Spectrum lam({0.8, 1.4, 0.6, 1.1, 0.9});
    const int k = 3;
    const TermDecomposition zero = term_decomposition(k, lam, std::vector<double>(5, 0.0));
    CHECK(zero.a == 0.0);
    CHECK(zero.b == 0.0);
    CHECK(zero.c == 0.0);
    CHECK(zero.e == 0.0);

    const TermDecomposition ones = term_decomposition(k, lam, std::vector<double>(5, 1.0));
    CHECK(rel_err(ones.a, 9.0) < 1e-12);
    CHECK(rel_err(ones.e, 6.0) < 1e-12);
    CHECK(rel_err(-ones.a + ones.e, -3.0) < 1e-12);

    CounterRng rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const auto eta = random_direction(5, rng);
        const TermDecomposition t = term_decomposition(k, lam, eta);
        CHECK(t.a >= 0.0);
        CHECK(t.c >= 0.0);
        CHECK(std::abs(t.b - t.c - t.e) <= 1e-10 * std::max({1.0, t.b, t.c, std::abs(t.e)}));
        CHECK(rel_err(-t.a + t.e, d2f_tilde(k, lam, eta)) < 1e-9);
    }

    // past the enumeration budget
    const Spectrum wide(std::vector<double>(40, 1.0));
    CHECK_THROWS_AS(term_decomposition(20, wide, std::vector<double>(40, 0.0)), TooLargeError);
}

TEST_CASE("pair matrix determinant identities") {
    CounterRng rng(29);
    // k = 2: unit off-diagonal, det = (-1)^{n-1} (n-1) independent of lambda
    for (int n = 3; n <= 8; ++n) {
        const Spectrum lam = random_positive_spectrum(n, rng);
        const double det = det_lu(g_matrix(2, lam));
        const double expected = ((n - 1) % 2 == 0 ? 1.0 : -1.0) * (n - 1);
        CHECK(rel_err(det, expected) < 1e-9);
        CHECK_FALSE(g_matrix_degenerate(2, lam));
    }

    const double det43 = det_lu(g_matrix(3, Spectrum({1, 1, 1, 1})));
    CHECK(rel_err(det43, -48.0) < 1e-10);

    // duality scaling: det G_{n-k+2}(1/lambda) = det G_k(lambda) / prod(lambda)^{n-2}
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 6;
        const int k = 3 + static_cast<int>(rng.below(3)); // 3..5
        const Spectrum lam = random_positive_spectrum(n, rng, 0.5, 1.8);
        double prod = 1.0;
        for (double v : lam.values) prod *= v;
        const double lhs = det_lu(g_matrix(n - k + 2, dual_spectrum(lam)));
        const double rhs = det_lu(g_matrix(k, lam)) / std::pow(prod, n - 2);
        CHECK(rel_err(lhs, rhs) < 1e-8);
    }
}

TEST_CASE("second differential of the k-th root is nonpositive and matches finite differences") {
    CounterRng rng(31);
    const Spectrum lam = random_positive_spectrum(5, rng);
    CHECK(std::abs(d2g_k(3, lam, lam.values)) < 1e-9);
    CHECK_THROWS_AS(d2g_k(1, lam, lam.values), BadDegreeError);

    // Wider step: the default would leave the 3-point stencil
    // rounding-dominated for a function of size O(1).
    oracle::FDConfig coarse;
    coarse.relative_step = 2e-4;
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 5, k = 3;
        const Spectrum l = random_positive_spectrum(n, rng);
        const auto xi = random_direction(n, rng);
        const double val = d2g_k(k, l, xi);
        CHECK(val <= 1e-9 * std::max(1.0, std::abs(val)));
        const double fd = oracle::fd_second_directional(
            [&](const std::vector<double>& x) {
                return std::pow(sigma(k, Spectrum(x)), 1.0 / k);
            },
            l.values, xi, coarse);
        CHECK(std::abs(val - fd) <= 1e-6 * std::max(1.0, std::abs(val)));
    }
}

TEST_CASE("midrange ratio bounds") {
    // all-ones, n = 10, k = 7: every deleted ratio equals gamma_k = 3/7
    const Spectrum ones(std::vector<double>(10, 1.0));
    const RatioBoundsReport rep = ratio_bounds_check(7, ones);
    CHECK(rep.all_ok);
    CHECK(rep.last_entry_margin == doctest::Approx(3.0 / 7.0 - 1.0));
    CHECK(rep.sup_residual < 1e-12);

    CHECK_THROWS_AS(ratio_bounds_check(2, ones), BadRangeError);
    std::vector<double> outside(10, 1.0);
    outside[9] = 0.1; // below the scheduled ratio 3/7
    std::sort(outside.begin(), outside.end(), std::greater<double>());
    CHECK_THROWS_AS(ratio_bounds_check(7, Spectrum(outside)), BadRangeError);

    CounterRng rng(37);
    const GammaSchedule sched = gamma_schedule(10, 7);
    for (int trial = 0; trial < 25; ++trial) {
        Spectrum lam = verify::sample_sigma_slice(sched, rng);
        std::sort(lam.values.begin(), lam.values.end(), std::greater<double>());
        CHECK(ratio_bounds_check(7, lam).all_ok);
    }
}

TEST_CASE("scaled form is negative semidefinite on the positive cone") {
    CounterRng rng(41);
    const int n = 6;
    for (int k = 2; k <= n - 1; ++k) {
        for (int trial = 0; trial < 25; ++trial) {
            const Spectrum lam = random_positive_spectrum(n, rng, 0.05, 2.0);
            const SymEigen eig = sym_eigen(tilde_coeff_matrix(k, lam).m);
            CHECK(eig.eigenvalues.front() <= 1e-10 * std::max(1.0, std::abs(eig.eigenvalues.back())));
        }
    }
}

TEST_CASE("scaled form is strictly negative definite on the scheduled cones") {
    CounterRng rng(43);
    // free-listed degrees hold on the whole positive cone
    const int n = 7;
    for (int k : {2, 3, 4, n - 2, n - 1}) {
        for (int trial = 0; trial < 20; ++trial) {
            const Spectrum lam = random_positive_spectrum(n, rng, 0.05, 2.0);
            const SymEigen eig = sym_eigen(tilde_coeff_matrix(k, lam).m);
            CHECK(eig.eigenvalues.front() < 0.0);
        }
    }
    // midrange degree on its slice
    const GammaSchedule sched = gamma_schedule(10, 7);
    for (int trial = 0; trial < 20; ++trial) {
        CounterRng sub = CounterRng::substream(43, static_cast<std::uint64_t>(trial));
        const Spectrum lam = verify::sample_sigma_slice(sched, sub);
        const SymEigen eig = sym_eigen(tilde_coeff_matrix(7, lam).m);
        CHECK(eig.eigenvalues.front() < 0.0);
    }
}

TEST_CASE("nondegenerate pair matrix implies strict definiteness on samples") {
    CounterRng rng(47);
    const int n = 6;
    for (int k = 2; k <= n - 1; ++k) {
        for (int trial = 0; trial < 15; ++trial) {
            const Spectrum lam = random_positive_spectrum(n, rng, 0.1, 2.0);
            if (g_matrix_degenerate(k, lam)) continue;
            const SymEigen eig = sym_eigen(tilde_coeff_matrix(k, lam).m);
            CHECK(eig.eigenvalues.front() < 0.0);
        }
    }
}
