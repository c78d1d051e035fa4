#include "hessk/sympoly.hpp"

#include <algorithm>
#include <cmath>

namespace hessk {

Spectrum::Spectrum(std::vector<double> v) : values(std::move(v)) {
    if (values.size() < 2) throw BadRangeError("spectrum needs at least two entries");
    for (double x : values) {
        if (!std::isfinite(x)) throw NonFiniteError("spectrum entry is not finite");
    }
}

const char* to_string(GammaBranch b) {
    switch (b) {
        case GammaBranch::Free: return "FREE";
        case GammaBranch::Midrange: return "MIDRANGE";
        case GammaBranch::LowDual: return "LOW_DUAL";
    }
    return "?";
}

namespace detail {

double elementary_symmetric(const std::vector<double>& values, int k) {
    if (k == 0) return 1.0;
    if (k < 0 || static_cast<std::size_t>(k) > values.size()) return 0.0;
    std::vector<double> e(static_cast<std::size_t>(k) + 1, 0.0);
    e[0] = 1.0;
    for (std::size_t m = 0; m < values.size(); ++m) {
        const double x = values[m];
        const int top = std::min<int>(k, static_cast<int>(m) + 1);
        for (int j = top; j >= 1; --j) e[j] += x * e[j - 1];
    }
    return e[static_cast<std::size_t>(k)];
}

} // namespace detail

namespace {

void check_degree(int k, int n) {
    if (k < 0 || k > n) throw BadDegreeError("sigma degree out of [0, n]");
}

void check_index(int i, int n) {
    if (i < 0 || i >= n) throw BadIndexError("spectrum index out of range");
}

} // namespace

double sigma(int k, const Spectrum& lambda) {
    check_degree(k, lambda.size());
    return detail::elementary_symmetric(lambda.values, k);
}

double sigma_deleted(int k, const Spectrum& lambda, int i) {
    check_degree(k, lambda.size());
    check_index(i, lambda.size());
    std::vector<double> reduced = lambda.values;
    reduced.erase(reduced.begin() + i);
    return detail::elementary_symmetric(reduced, k);
}

double sigma_deleted2(int k, const Spectrum& lambda, int i, int j) {
    check_degree(k, lambda.size());
    check_index(i, lambda.size());
    check_index(j, lambda.size());
    if (i == j) throw BadIndexError("two-index deletion needs distinct indices");
    std::vector<double> reduced = lambda.values;
    reduced.erase(reduced.begin() + std::max(i, j));
    reduced.erase(reduced.begin() + std::min(i, j));
    return detail::elementary_symmetric(reduced, k);
}

Spectrum dual_spectrum(const Spectrum& lambda) {
    std::vector<double> out(lambda.values.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (lambda.values[i] <= 0.0) throw NotPositiveError("dual_spectrum needs positive entries");
        out[i] = 1.0 / lambda.values[i];
    }
    return Spectrum(std::move(out));
}

GammaSchedule gamma_schedule(int n, int k, std::optional<double> free_gamma) {
    if (n < 3 || k < 2 || k > n - 1) {
        throw BadRangeError("gamma_schedule requires n >= 3 and 2 <= k <= n-1");
    }
    GammaSchedule s;
    s.n = n;
    s.k = k;
    const bool free_branch = (k == 2 || k == 3 || k == 4 || k == n - 2 || k == n - 1);
    if (free_branch) {
        if (!free_gamma.has_value()) {
            throw MissingFreeGammaError("gamma must be supplied for k in {2,3,4,n-2,n-1}");
        }
        if (!(*free_gamma > 0.0 && *free_gamma < 1.0)) {
            throw BadRangeError("free gamma must lie in (0,1)");
        }
        s.branch = GammaBranch::Free;
        s.gamma_k = *free_gamma;
        return s;
    }
    if (k >= n / 2 + 1 && k <= n - 3) {
        s.branch = GammaBranch::Midrange;
        s.gamma_k = static_cast<double>(n - k) / static_cast<double>(k);
        return s;
    }
    if (k >= 5 && k <= n / 2) {
        s.branch = GammaBranch::LowDual;
        s.gamma_k = static_cast<double>(k - 2) / static_cast<double>(n - (k - 2));
        return s;
    }
    throw BadRangeError("no schedule branch covers this (n, k)");
}

bool in_gamma_cone(const Spectrum& lambda, int k) {
    const int n = lambda.size();
    if (k < 1 || k > n) throw BadDegreeError("cone degree out of [1, n]");
    if (k == n) {
        return std::all_of(lambda.values.begin(), lambda.values.end(),
                           [](double x) { return x > 0.0; });
    }
    for (int j = 1; j <= k; ++j) {
        if (detail::elementary_symmetric(lambda.values, j) <= 0.0) return false;
    }
    return true;
}

bool in_sigma_gamma(const Spectrum& lambda, const GammaSchedule& sched) {
    if (sched.n != lambda.size()) {
        throw BadRangeError("schedule dimension does not match spectrum length");
    }
    const auto [mn, mx] = std::minmax_element(lambda.values.begin(), lambda.values.end());
    if (*mn <= 0.0) return false;
    return *mn >= sched.gamma_k * *mx;
}

} // namespace hessk
