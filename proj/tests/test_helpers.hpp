#pragma once

#include <cmath>
#include <vector>

#include "hessk/matrix.hpp"
#include "hessk/rng.hpp"
#include "hessk/sympoly.hpp"

namespace hessk_test {

inline double rel_err(double a, double b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

inline hessk::Spectrum random_positive_spectrum(int n, hessk::CounterRng& rng, double lo = 0.2,
                                                double hi = 2.0) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (double& x : v) x = rng.uniform(lo, hi);
    return hessk::Spectrum(std::move(v));
}

inline std::vector<double> random_direction(int n, hessk::CounterRng& rng) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (double& x : v) x = rng.normal();
    return v;
}

inline hessk::DenseMatrix random_matrix(int n, hessk::CounterRng& rng) {
    hessk::DenseMatrix m(static_cast<std::size_t>(n), static_cast<std::size_t>(n), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rng.normal();
    return m;
}

} // namespace hessk_test
