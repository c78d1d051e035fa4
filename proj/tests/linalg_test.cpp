#include <doctest.h>

#include <cmath>
#include <limits>

#include "hessk/linalg.hpp"
#include "test_helpers.hpp"

using namespace hessk;
using hessk_test::random_matrix;

namespace {

DenseMatrix random_symmetric(int n, CounterRng& rng) { return random_matrix(n, rng).sym_part(); }
DenseMatrix random_skew(int n, CounterRng& rng) { return random_matrix(n, rng).skew_part(); }

double reconstruction_residual(const DenseMatrix& a, const SymEigen& e) {
    const DenseMatrix d = DenseMatrix::diagonal(e.eigenvalues);
    const DenseMatrix rebuilt = e.eigenvectors * d * e.eigenvectors.transpose();
    return (rebuilt - a).frobenius();
}

} // namespace

TEST_CASE("matrix construction rejects non-finite entries") {
    CHECK_THROWS_AS(DenseMatrix(2, 2, std::vector<double>{1.0, 0.0, 0.0,
                                                          std::numeric_limits<double>::quiet_NaN()}),
                    NonFiniteError);
    CHECK_THROWS_AS(DenseMatrix(2, 2, std::vector<double>{1.0, 2.0, 3.0}), BadRangeError);
}

TEST_CASE("sym_eigen on the identity") {
    const SymEigen e = sym_eigen(DenseMatrix::identity(3));
    for (double v : e.eigenvalues) CHECK(v == doctest::Approx(1.0));
    const DenseMatrix gram = e.eigenvectors.transpose() * e.eigenvectors;
    CHECK((gram - DenseMatrix::identity(3)).frobenius() < 1e-10 * 3);
}

TEST_CASE("sym_eigen sorts a diagonal matrix descending") {
    const SymEigen e = sym_eigen(DenseMatrix::diagonal({3.0, 1.0, 2.0}));
    CHECK(e.eigenvalues[0] == doctest::Approx(3.0));
    CHECK(e.eigenvalues[1] == doctest::Approx(2.0));
    CHECK(e.eigenvalues[2] == doctest::Approx(1.0));
}

TEST_CASE("sym_eigen 2x2 closed-form case") {
    const SymEigen e = sym_eigen(DenseMatrix::from_rows({{2, 1}, {1, 2}}));
    CHECK(e.eigenvalues[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(e.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sym_eigen rejects an asymmetric input") {
    CHECK_THROWS_AS(sym_eigen(DenseMatrix::from_rows({{1, 2}, {0, 1}})), NotSymmetricError);
}

TEST_CASE("sym_eigen invariants on random symmetric matrices") {
    CounterRng rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(8));
        const DenseMatrix a = random_symmetric(n, rng);
        const SymEigen e = sym_eigen(a);
        CHECK(reconstruction_residual(a, e) <= 1e-10 * std::max(1.0, a.frobenius()));
        const DenseMatrix gram = e.eigenvectors.transpose() * e.eigenvectors;
        CHECK((gram - DenseMatrix::identity(a.rows())).frobenius() <= 1e-10 * n);
        for (std::size_t i = 0; i + 1 < e.eigenvalues.size(); ++i) {
            CHECK(e.eigenvalues[i] >= e.eigenvalues[i + 1]);
        }
    }
}

TEST_CASE("det_lu basics") {
    CHECK(det_lu(DenseMatrix::identity(5)) == doctest::Approx(1.0));
    CHECK(det_lu(DenseMatrix::from_rows({{0, 1}, {-1, 0}})) == doctest::Approx(1.0));
    // all-ones minus identity at n = 4
    DenseMatrix j(4, 4, 1.0);
    for (int i = 0; i < 4; ++i) j(i, i) = 0.0;
    CHECK(det_lu(j) == doctest::Approx(-3.0).epsilon(1e-12));
}

TEST_CASE("det_lu of a singular matrix is exactly zero") {
    const DenseMatrix a = DenseMatrix::from_rows({{1, 2}, {2, 4}});
    CHECK(det_lu(a) == 0.0);
}

TEST_CASE("det_lu equals the eigenvalue product for symmetric matrices") {
    CounterRng rng(55);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(6));
        const DenseMatrix a = random_symmetric(n, rng);
        double prod = 1.0;
        for (double v : sym_eigen(a).eigenvalues) prod *= v;
        CHECK(hessk_test::rel_err(det_lu(a), prod) < 1e-8);
    }
}

TEST_CASE("invert basics") {
    const DenseMatrix i2 = invert(DenseMatrix::identity(2));
    CHECK((i2 - DenseMatrix::identity(2)).frobenius() < 1e-14);

    const DenseMatrix d = invert(DenseMatrix::diagonal({2.0, 4.0}));
    CHECK(d(0, 0) == doctest::Approx(0.5));
    CHECK(d(1, 1) == doctest::Approx(0.25));

    // (I + beta)^{-1} = (I - beta)/2 for the 2x2 rotation generator with b = 1
    const DenseMatrix r = DenseMatrix::from_rows({{1, 1}, {-1, 1}});
    const DenseMatrix expected = DenseMatrix::from_rows({{0.5, -0.5}, {0.5, 0.5}});
    CHECK((invert(r) - expected).frobenius() < 1e-14);

    CHECK_THROWS_AS(invert(DenseMatrix::from_rows({{1, 2}, {2, 4}})), SingularError);
}

TEST_CASE("invert residual on random matrices") {
    CounterRng rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(8));
        const DenseMatrix a = random_matrix(n, rng);
        if (std::abs(det_lu(a)) < 1e-6) continue;
        const DenseMatrix prod = a * invert(a);
        CHECK((prod - DenseMatrix::identity(a.rows())).frobenius() <= 1e-9 * n);
    }
}

TEST_CASE("skew_spectrum basics") {
    const auto zero = skew_spectrum(DenseMatrix(4, 4, 0.0));
    for (double v : zero) CHECK(v == 0.0);

    const auto one = skew_spectrum(DenseMatrix::from_rows({{0, 0.7}, {-0.7, 0}}));
    REQUIRE(one.size() == 1);
    CHECK(one[0] == doctest::Approx(0.7));

    const auto two = skew_spectrum(DenseMatrix::from_rows({{0, 3, 0}, {-3, 0, 4}, {0, -4, 0}}));
    REQUIRE(two.size() == 2);
    CHECK(two[0] == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(two[1] == 0.0);

    CHECK_THROWS_AS(skew_spectrum(DenseMatrix::identity(2)), NotSkewError);
}

TEST_CASE("op_norm basics") {
    CHECK(op_norm(DenseMatrix::identity(4)) == doctest::Approx(1.0));
    CHECK(op_norm(DenseMatrix::diagonal({1.0, -5.0, 2.0})) == doctest::Approx(5.0));
    CHECK(op_norm(DenseMatrix::from_rows({{0, 3, 0}, {-3, 0, 4}, {0, -4, 0}})) ==
          doctest::Approx(5.0));
}

TEST_CASE("operator norm vs Frobenius norm sandwich") {
    CounterRng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(6));
        const DenseMatrix a = random_matrix(n, rng);
        const double opn = op_norm(a);
        const double fro = a.frobenius();
        CHECK(opn <= fro * (1 + 1e-12));
        CHECK(fro <= std::sqrt(static_cast<double>(n)) * opn * (1 + 1e-12));
    }
}

TEST_CASE("skew determinants are nonnegative (even) or zero (odd)") {
    CounterRng rng(9);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(7));
        const DenseMatrix b = random_skew(n, rng);
        const double det = det_lu(b);
        if (n % 2 == 0) {
            CHECK(det >= -1e-10 * std::pow(std::max(1.0, b.frobenius()), n));
        } else {
            CHECK(std::abs(det) <= 1e-10 * std::pow(std::max(1.0, b.frobenius()), n));
        }
    }
}
