#pragma once

#include <optional>
#include <vector>

#include "hessk/errors.hpp"

namespace hessk {

/// A vector of eigenvalues / diagonal entries. At least two finite entries.
struct Spectrum {
    std::vector<double> values;

    explicit Spectrum(std::vector<double> v);

    int size() const { return static_cast<int>(values.size()); }
    double operator[](int i) const { return values[static_cast<std::size_t>(i)]; }
};

enum class GammaBranch { Free, Midrange, LowDual };

/// The ratio parameter gamma_k of the cone Sigma_(gamma_k), fixed per (n, k):
///   Free      k in {2, 3, 4, n-2, n-1}   gamma caller-supplied in (0,1)
///   Midrange  floor(n/2)+1 <= k <= n-3   gamma = (n-k)/k
///   LowDual   5 <= k <= floor(n/2)       gamma = (k-2)/(n-(k-2))
/// Free takes precedence when ranges overlap at small n.
struct GammaSchedule {
    int n = 0;
    int k = 0;
    double gamma_k = 0.0;
    GammaBranch branch = GammaBranch::Free;
};

const char* to_string(GammaBranch b);

/// Elementary symmetric polynomial sigma_k(lambda); sigma_0 = 1.
double sigma(int k, const Spectrum& lambda);

/// sigma_k with entry i set to zero (0-based index).
double sigma_deleted(int k, const Spectrum& lambda, int i);

/// sigma_k with entries i and j set to zero, i != j.
double sigma_deleted2(int k, const Spectrum& lambda, int i, int j);

/// Entrywise reciprocal; requires all entries > 0.
Spectrum dual_spectrum(const Spectrum& lambda);

GammaSchedule gamma_schedule(int n, int k, std::optional<double> free_gamma = std::nullopt);

/// Membership in Gamma_k: sigma_j > 0 for j = 1..k. For k = n this is the
/// positive cone, tested directly as all entries > 0.
bool in_gamma_cone(const Spectrum& lambda, int k);

/// Membership in Sigma_(gamma_k): all entries positive and min >= gamma*max.
bool in_sigma_gamma(const Spectrum& lambda, const GammaSchedule& sched);

namespace detail {
/// e_k of an arbitrary value span by the prefix recurrence, O(len*k).
double elementary_symmetric(const std::vector<double>& values, int k);
} // namespace detail

} // namespace hessk
