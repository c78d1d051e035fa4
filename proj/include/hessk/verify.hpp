#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hessk/matform.hpp"
#include "hessk/rng.hpp"
#include "hessk/scalarform.hpp"
#include "hessk/sympoly.hpp"

namespace hessk::verify {

/// Every derived constant of the admissible-set estimates for one
/// (n, k, delta, gamma_k), including the empirically estimated uniform
/// definiteness constant gamma_k_uniform.
struct ConstantsLedger {
    int n = 0;
    int k = 0;
    double delta = 0.0;
    double gamma_k = 0.0;
    double c4 = 0.0;
    double c6 = 0.0;
    double c7 = 0.0; // equal to c6 by definition
    double c8 = 0.0;
    double c9 = 0.0;
    double c12 = 0.0;
    double mu_k = 0.0;
    double gamma_k_uniform = 0.0;
    double c10 = 0.0;
    double c11 = 0.0;
    double delta0 = 0.0;
    double delta1 = 0.0;
    double d = 0.0;
};

/// The delta-dependent base constants, exposed so tests can recompute the
/// chain independently.
double c6_of(int k, double delta);
double c9_of(int k, double delta);

ConstantsLedger build_ledger(int n, int k, double delta, const GammaSchedule& sched,
                             double gamma_uniform);

/// Aggregated outcome of one inequality suite. Margins are signed LHS - RHS
/// values of the checked "LHS <= RHS" statements, so negative means slack; a
/// violation is a margin above 1e-9 * max(1, |LHS|, |RHS|).
struct VerificationReport {
    std::string suite;
    int n = 0;
    int k = 0;
    double delta = 0.0;
    double mu = 0.0;
    double gamma_k = 0.0;
    int samples = 0;
    int violations = 0;
    double worst_margin = 0.0;
    std::uint64_t seed = 0;
    double wall_ms = 0.0;
    ConstantsLedger ledger;
};

/// Field-by-field equality except for the wall time.
bool same_results(const VerificationReport& a, const VerificationReport& b);

/// Random spectrum on the unit sphere inside Sigma_(gamma_k): the max entry
/// is 1 and the rest are uniform in [gamma_k, 1] before shuffling and
/// normalizing.
Spectrum sample_sigma_slice(const GammaSchedule& sched, CounterRng& rng);

/// Random member of D_{delta,mu,gamma_k}: omega is Q^T diag(lambda) Q with a
/// rescaled slice spectrum and a Haar-like orthogonal Q, beta a random skew
/// rescaled to ||beta|| = u * min(mu, delta*lambda_min(omega)).
AugmentedMatrix sample_admissible(int n, int k, const AdmissibilityParams& params,
                                  CounterRng& rng);

/// Largest mu that every draw of the admissible sampler can satisfy for the
/// given slice schedule and delta.
double feasible_mu(int n, const GammaSchedule& sched, double delta);

/// Empirical uniform-definiteness constant: the minimum over sampled
/// lambda in Sigma_(gamma_k) of -(max eigenvalue of the scaled coefficient
/// matrix), sharpened by corner patterns and local multiplicative descent.
/// The value is an upper bound on the true constant.
struct GammaEstimate {
    double value = 0.0;
    std::vector<double> minimizer;
};
GammaEstimate estimate_gamma_uniform(const GammaSchedule& sched, int budget,
                                     std::uint64_t seed);

/// Reduced-frame second-differential bounds (symmetric, skew, cross and
/// combined increments against the ledger constants).
VerificationReport suite_reduced_bounds(int n, int k, const AdmissibilityParams& params,
                                        int samples, std::uint64_t seed);

/// Strict bound d2F(R,P) <= -C10 |P~~|^2 for symmetric increments, plus the
/// per-pair minor-weight lower bound mu_k.
VerificationReport suite_symmetric_definiteness(const GammaSchedule& sched, double delta,
                                                int samples, std::uint64_t seed);

/// d-concavity of F_k on D_{delta,mu,gamma_k}: the first-order Taylor gap
/// against d = 4 n C12 delta^2, the pairwise skew-difference bound, and the
/// second-differential skew bound.
VerificationReport suite_dconcavity(const GammaSchedule& sched, double delta, double mu,
                                    int pairs, std::uint64_t seed);

/// Deleted-ratio bounds over sampled descending spectra (midrange schedules
/// only).
VerificationReport suite_ratio_bounds(const GammaSchedule& sched, int samples,
                                      std::uint64_t seed);

/// Worker count for the sample loops: HESSK_THREADS if set, else the
/// hardware concurrency. Results do not depend on it.
int thread_count();

} // namespace hessk::verify
