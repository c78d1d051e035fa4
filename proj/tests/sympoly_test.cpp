#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "hessk/combinations.hpp"
#include "hessk/sympoly.hpp"
#include "test_helpers.hpp"

using namespace hessk;
using hessk_test::random_positive_spectrum;
using hessk_test::rel_err;

namespace {

double brute_force_sigma(int k, const Spectrum& lam) {
    if (k == 0) return 1.0;
    double total = 0.0;
    detail::for_each_combination(lam.size(), k, [&](const std::vector<int>& idx) {
        double p = 1.0;
        for (int i : idx) p *= lam[i];
        total += p;
    });
    return total;
}

} // namespace

TEST_CASE("spectrum construction guards") {
    CHECK_THROWS_AS(Spectrum({1.0}), BadRangeError);
    CHECK_THROWS_AS(Spectrum({1.0, std::numeric_limits<double>::infinity()}), NonFiniteError);
}

TEST_CASE("sigma basics") {
    CHECK(sigma(2, Spectrum({1, 1, 1})) == doctest::Approx(3.0));
    CHECK(sigma(0, Spectrum({4, 5, 6})) == 1.0);
    CHECK(sigma(2, Spectrum({1, 2, 3})) == doctest::Approx(11.0));
    CHECK_THROWS_AS(sigma(-1, Spectrum({1, 2})), BadDegreeError);
    CHECK_THROWS_AS(sigma(3, Spectrum({1, 2})), BadDegreeError);
}

TEST_CASE("sigma recurrence matches subset enumeration") {
    CounterRng rng(17);
    for (int n = 2; n <= 10; ++n) {
        const Spectrum lam = random_positive_spectrum(n, rng, -1.5, 2.0);
        for (int k = 0; k <= n; ++k) {
            CHECK(rel_err(sigma(k, lam), brute_force_sigma(k, lam)) < 1e-10);
        }
    }
}

TEST_CASE("deleted sigma examples") {
    CHECK(sigma_deleted(1, Spectrum({1, 2, 3}), 1) == doctest::Approx(4.0));
    const Spectrum lam({1, 2, 3, 4});
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (i != j) CHECK(sigma_deleted2(0, lam, i, j) == 1.0);
        }
    }
    CHECK(sigma_deleted2(2, lam, 0, 2) == doctest::Approx(8.0));
    CHECK_THROWS_AS(sigma_deleted(1, lam, 4), BadIndexError);
    CHECK_THROWS_AS(sigma_deleted2(1, lam, 2, 2), BadIndexError);
}

TEST_CASE("single and double deletion identities") {
    CounterRng rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 3 + static_cast<int>(rng.below(6));
        const Spectrum lam = random_positive_spectrum(n, rng);
        for (int k = 1; k <= n; ++k) {
            for (int i = 0; i < n; ++i) {
                const double direct = sigma(k, lam);
                const double split =
                    sigma_deleted(k, lam, i) + lam[i] * sigma_deleted(k - 1, lam, i);
                CHECK(rel_err(direct, split) < 1e-12);
            }
        }
        for (int k = 2; k <= n; ++k) {
            for (int i = 0; i < n; ++i) {
                for (int j = i + 1; j < n; ++j) {
                    const double expand = sigma_deleted2(k, lam, i, j) +
                                          lam[i] * sigma_deleted2(k - 1, lam, i, j) +
                                          lam[j] * sigma_deleted2(k - 1, lam, i, j) +
                                          lam[i] * lam[j] * sigma_deleted2(k - 2, lam, i, j);
                    CHECK(rel_err(sigma(k, lam), expand) < 1e-12);
                }
            }
        }
    }
}

TEST_CASE("dual spectrum and the duality identity") {
    const Spectrum ones({1, 1, 1});
    for (double v : dual_spectrum(ones).values) CHECK(v == 1.0);

    const Spectrum two({2, 4});
    CHECK(dual_spectrum(two)[0] == doctest::Approx(0.5));
    CHECK(dual_spectrum(two)[1] == doctest::Approx(0.25));

    CHECK_THROWS_AS(dual_spectrum(Spectrum({1, -1})), NotPositiveError);

    // sigma_k(lambda) = prod(lambda) * sigma_{n-k}(1/lambda)
    const Spectrum lam({1, 2, 3});
    CHECK(rel_err(sigma(2, lam), 6.0 * sigma(1, dual_spectrum(lam))) < 1e-12);

    CounterRng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(7));
        const Spectrum l = random_positive_spectrum(n, rng, 0.3, 3.0);
        double prod = 1.0;
        for (double v : l.values) prod *= v;
        for (int k = 0; k <= n; ++k) {
            CHECK(rel_err(sigma(k, l), prod * sigma(n - k, dual_spectrum(l))) < 1e-10);
        }
    }
}

TEST_CASE("gamma schedule branches") {
    const GammaSchedule mid = gamma_schedule(10, 7);
    CHECK(mid.branch == GammaBranch::Midrange);
    CHECK(mid.gamma_k == doctest::Approx(3.0 / 7.0));

    const GammaSchedule low = gamma_schedule(12, 5);
    CHECK(low.branch == GammaBranch::LowDual);
    CHECK(low.gamma_k == doctest::Approx(1.0 / 3.0));

    const GammaSchedule fr = gamma_schedule(6, 2, 0.5);
    CHECK(fr.branch == GammaBranch::Free);
    CHECK(fr.gamma_k == 0.5);

    CHECK_THROWS_AS(gamma_schedule(6, 2), MissingFreeGammaError);
    CHECK_THROWS_AS(gamma_schedule(6, 2, 1.5), BadRangeError);
    CHECK_THROWS_AS(gamma_schedule(6, 6), BadRangeError);
    CHECK_THROWS_AS(gamma_schedule(2, 2), BadRangeError);
}

TEST_CASE("free branch takes precedence on small-n overlaps") {
    // n = 7: k = 4 sits in both the free list and the midrange window.
    const GammaSchedule s = gamma_schedule(7, 4, 0.3);
    CHECK(s.branch == GammaBranch::Free);
    CHECK(s.gamma_k == 0.3);
}

TEST_CASE("every feasible (n, k) resolves to a branch") {
    for (int n = 3; n <= 16; ++n) {
        for (int k = 2; k <= n - 1; ++k) {
            const GammaSchedule s = gamma_schedule(n, k, 0.5);
            CHECK(s.gamma_k > 0.0);
            CHECK(s.gamma_k < 1.0);
        }
    }
}

TEST_CASE("midrange gammas are strictly nested") {
    const int n = 14;
    double prev = 1.0;
    for (int k = n / 2 + 1; k <= n - 3; ++k) {
        const GammaSchedule s = gamma_schedule(n, k);
        CHECK(s.gamma_k < prev);
        prev = s.gamma_k;
    }
}

TEST_CASE("cone membership") {
    CHECK(in_gamma_cone(Spectrum({1, 1, 1}), 3));
    CHECK_FALSE(in_gamma_cone(Spectrum({-1, -1, -1}), 1));
    CHECK(in_gamma_cone(Spectrum({3, 3, -1}), 2)); // sigma_1 = 5, sigma_2 = 3
    CHECK_FALSE(in_gamma_cone(Spectrum({3, 3, -1}), 3));
}

TEST_CASE("sigma gamma membership") {
    const GammaSchedule s = gamma_schedule(4, 2, 0.5);
    CHECK(in_sigma_gamma(Spectrum({1, 1, 1, 1}), s));
    CHECK_FALSE(in_sigma_gamma(Spectrum({1, 1, 1, 0.2}), s));

    const GammaSchedule mid = gamma_schedule(10, 7);
    std::vector<double> v(10, 1.0);
    v[9] = 0.45;
    CHECK(in_sigma_gamma(Spectrum(v), mid)); // 0.45 >= 3/7
    v[9] = 0.42;
    CHECK_FALSE(in_sigma_gamma(Spectrum(v), mid));
}

TEST_CASE("sigma gamma cone is closed under the dual") {
    CounterRng rng(41);
    const GammaSchedule s = gamma_schedule(6, 3, 0.4);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> v(6);
        for (double& x : v) x = rng.uniform(0.4, 1.0);
        const Spectrum lam(v);
        if (!in_sigma_gamma(lam, s)) continue;
        CHECK(in_sigma_gamma(dual_spectrum(lam), s));
    }
}
