#include "hessk/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <thread>

#include "hessk/combinations.hpp"

namespace hessk::verify {

namespace {

constexpr double kInequalityTol = 1e-9;

struct SampleStats {
    double worst = -1e300;
    int violations = 0;
};

void check_le(SampleStats& st, double lhs, double rhs) {
    const double margin = lhs - rhs;
    st.worst = std::max(st.worst, margin);
    const double tol = kInequalityTol * std::max({1.0, std::abs(lhs), std::abs(rhs)});
    if (margin > tol) ++st.violations;
}

void check_margin(SampleStats& st, double margin, double scale) {
    st.worst = std::max(st.worst, margin);
    if (margin > kInequalityTol * std::max(1.0, scale)) ++st.violations;
}

/// Runs fn over sample indices with per-sample derived rng streams. The
/// reduction is in index order, so serial and parallel runs agree bit for
/// bit. A sample that throws surfaces as the error of the lowest failing
/// chunk, independent of the worker count.
SampleStats map_reduce_samples(int count, std::uint64_t seed,
                               const std::function<SampleStats(int, CounterRng&)>& fn) {
    std::vector<SampleStats> per_sample(static_cast<std::size_t>(std::max(count, 0)));
    const int workers = std::min(thread_count(), std::max(count, 1));

    auto run_range = [&](int lo, int hi) {
        for (int i = lo; i < hi; ++i) {
            CounterRng rng = CounterRng::substream(seed, static_cast<std::uint64_t>(i));
            per_sample[static_cast<std::size_t>(i)] = fn(i, rng);
        }
    };

    if (workers <= 1 || count < 2) {
        run_range(0, count);
    } else {
        const int chunk = (count + workers - 1) / workers;
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            const int lo = w * chunk;
            const int hi = std::min(count, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back([&, w, lo, hi] {
                try {
                    run_range(lo, hi);
                } catch (...) {
                    errors[static_cast<std::size_t>(w)] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        for (const std::exception_ptr& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }

    SampleStats total;
    for (const SampleStats& s : per_sample) {
        total.worst = std::max(total.worst, s.worst);
        total.violations += s.violations;
    }
    if (count <= 0) total.worst = 0.0;
    return total;
}

DenseMatrix random_gaussian(int n, CounterRng& rng) {
    DenseMatrix m(static_cast<std::size_t>(n), static_cast<std::size_t>(n), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rng.normal();
    return m;
}

/// QR of a Gaussian sample by modified Gram-Schmidt. The diagonal of R comes
/// out positive, which pins the sign of every column.
DenseMatrix random_orthogonal(int n, CounterRng& rng) {
    while (true) {
        DenseMatrix a = random_gaussian(n, rng);
        DenseMatrix q(a.rows(), a.cols(), 0.0);
        bool ok = true;
        for (int j = 0; j < n && ok; ++j) {
            std::vector<double> v(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = a(i, j);
            for (int c = 0; c < j; ++c) {
                double proj = 0.0;
                for (int i = 0; i < n; ++i) proj += q(i, c) * v[static_cast<std::size_t>(i)];
                for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] -= proj * q(i, c);
            }
            double rjj = 0.0;
            for (double x : v) rjj += x * x;
            rjj = std::sqrt(rjj);
            if (rjj < 1e-8) {
                ok = false;
                break;
            }
            for (int i = 0; i < n; ++i) q(i, j) = v[static_cast<std::size_t>(i)] / rjj;
        }
        if (ok) return q;
    }
}

QuadraticFormMatrix tilde_form(int k, const Spectrum& lambda) {
    return tilde_coeff_matrix(k, lambda);
}

double definiteness_margin(int k, const Spectrum& lambda) {
    const SymEigen eig = sym_eigen(tilde_form(k, lambda).m);
    return -eig.eigenvalues.front();
}

ConstantsLedger ledger_for_suite(int n, int k, double delta, const GammaSchedule& sched,
                                 int samples, std::uint64_t seed) {
    const int budget = std::clamp(samples, 500, 4000);
    const GammaEstimate est =
        estimate_gamma_uniform(sched, budget, CounterRng::substream(seed, 0xabcdef).next_u64());
    return build_ledger(n, k, delta, sched, est.value);
}

double wall_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

} // namespace

int thread_count() {
    if (const char* env = std::getenv("HESSK_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

double c6_of(int k, double delta) {
    const double d2 = delta * delta;
    const double pairs = std::pow(2.0, k / 2) - 1.0;
    return pairs + k * d2 / ((1.0 - d2) * (1.0 - d2)) + 2.0 * k / (1.0 - d2);
}

double c9_of(int k, double delta) {
    const double d2 = delta * delta;
    return 2.0 * k *
           ((1.0 + (std::sqrt(static_cast<double>(k)) - 1.0) * d2) / ((1.0 - d2) * (1.0 - d2)) +
            1.0 / (1.0 + d2));
}

ConstantsLedger build_ledger(int n, int k, double delta, const GammaSchedule& sched,
                             double gamma_uniform) {
    if (!(delta >= 0.0 && delta < 1.0)) throw BadDeltaError("delta must lie in [0, 1)");
    if (sched.n != n || sched.k != k) throw BadRangeError("schedule does not match (n, k)");

    ConstantsLedger led;
    led.n = n;
    led.k = k;
    led.delta = delta;
    led.gamma_k = sched.gamma_k;
    led.c6 = c6_of(k, delta);
    led.c7 = led.c6;
    led.c4 = 2.0 * led.c6 + 8.0;
    led.c8 = 1.0 + led.c4 * delta;
    led.c9 = c9_of(k, delta);
    led.c12 = led.c9 * led.c9 + led.c8;
    led.mu_k = (static_cast<double>(k - 1) * k) / (static_cast<double>(n - 1) * n) *
               std::pow(sched.gamma_k, k);
    led.gamma_k_uniform = gamma_uniform;
    led.c11 = std::min(gamma_uniform, led.mu_k);
    led.c10 = 0.5 * led.c11;
    led.delta0 = std::min(0.5, std::sqrt(led.c11 / (2.0 * led.c4)));
    led.delta1 = std::min(led.delta0, std::sqrt(led.c11 / (led.c4 + 1.0)));
    led.d = 4.0 * n * led.c12 * delta * delta;
    return led;
}

bool same_results(const VerificationReport& a, const VerificationReport& b) {
    const auto ledger_eq = [](const ConstantsLedger& x, const ConstantsLedger& y) {
        return x.n == y.n && x.k == y.k && x.delta == y.delta && x.gamma_k == y.gamma_k &&
               x.c4 == y.c4 && x.c6 == y.c6 && x.c7 == y.c7 && x.c8 == y.c8 && x.c9 == y.c9 &&
               x.c12 == y.c12 && x.mu_k == y.mu_k && x.gamma_k_uniform == y.gamma_k_uniform &&
               x.c10 == y.c10 && x.c11 == y.c11 && x.delta0 == y.delta0 &&
               x.delta1 == y.delta1 && x.d == y.d;
    };
    return a.suite == b.suite && a.n == b.n && a.k == b.k && a.delta == b.delta && a.mu == b.mu &&
           a.gamma_k == b.gamma_k && a.samples == b.samples && a.violations == b.violations &&
           a.worst_margin == b.worst_margin && a.seed == b.seed && ledger_eq(a.ledger, b.ledger);
}

Spectrum sample_sigma_slice(const GammaSchedule& sched, CounterRng& rng) {
    const int n = sched.n;
    for (int attempt = 0; attempt < 100; ++attempt) {
        std::vector<double> v(static_cast<std::size_t>(n));
        v[0] = 1.0;
        for (int i = 1; i < n; ++i) v[static_cast<std::size_t>(i)] = rng.uniform(sched.gamma_k, 1.0);
        rng.shuffle(v);
        double norm = 0.0;
        for (double x : v) norm += x * x;
        norm = std::sqrt(norm);
        for (double& x : v) x /= norm;
        Spectrum s(std::move(v));
        if (in_sigma_gamma(s, sched)) return s;
    }
    throw Error("sigma slice sampler failed to produce a cone member");
}

double feasible_mu(int n, const GammaSchedule& sched, double delta) {
    // The sampler's lambda_min is at least 0.5 * gamma_k / sqrt(n): entries
    // lie in [gamma_k, 1] before normalizing by at most sqrt(n) and scaling
    // by at least 0.5.
    return 0.95 * delta * 0.5 * sched.gamma_k / std::sqrt(static_cast<double>(n));
}

AugmentedMatrix sample_admissible(int n, int k, const AdmissibilityParams& params,
                                  CounterRng& rng) {
    if (!params.schedule.has_value()) {
        throw BadRangeError("sample_admissible needs a schedule in the params");
    }
    if (params.schedule->n != n || params.schedule->k != k) {
        throw BadRangeError("schedule does not match (n, k)");
    }
    for (int attempt = 0; attempt < 64; ++attempt) {
        Spectrum slice = sample_sigma_slice(*params.schedule, rng);
        const double scale = rng.uniform(0.5, 2.0);
        std::vector<double> lambda = slice.values;
        for (double& x : lambda) x *= scale;
        const double lmin = *std::min_element(lambda.begin(), lambda.end());

        if (params.mu > params.delta * lmin * (1.0 + 1e-12)) {
            throw InfeasibleParamsError(
                "mu exceeds delta * lambda_min for the sampled spectrum; lower mu "
                "(see feasible_mu) or raise delta");
        }

        const DenseMatrix q = random_orthogonal(n, rng);
        const DenseMatrix omega = q.transpose() * DenseMatrix::diagonal(lambda) * q;

        DenseMatrix beta(static_cast<std::size_t>(n), static_cast<std::size_t>(n), 0.0);
        const double cap = std::min(params.mu, params.delta * lmin);
        if (cap > 0.0) {
            DenseMatrix raw = random_gaussian(n, rng).skew_part();
            const double norm = op_norm(raw);
            if (norm > 0.0) {
                const double target = rng.next_double() * cap;
                beta = raw * (target / norm);
            }
        }

        AugmentedMatrix out = AugmentedMatrix::from(omega.sym_part() + beta);
        if (in_admissible(out, params)) return out;
    }
    throw Error("admissible sampler failed to produce a member");
}

GammaEstimate estimate_gamma_uniform(const GammaSchedule& sched, int budget,
                                     std::uint64_t seed) {
    const int n = sched.n;
    const int k = sched.k;

    GammaEstimate best;
    best.value = 1e300;

    auto consider = [&](const Spectrum& lambda) {
        const double margin = definiteness_margin(k, lambda);
        if (margin < best.value) {
            best.value = margin;
            best.minimizer = lambda.values;
        }
    };

    // Corner patterns: j entries at gamma_k, the rest at 1. The scaled form
    // is 0-homogeneous in lambda and permutation-equivariant, so one
    // representative per count suffices.
    for (int j = 1; j < n; ++j) {
        std::vector<double> v(static_cast<std::size_t>(n), 1.0);
        for (int i = 0; i < j; ++i) v[static_cast<std::size_t>(i)] = sched.gamma_k;
        consider(Spectrum(std::move(v)));
    }
    {
        std::vector<double> ones(static_cast<std::size_t>(n), 1.0);
        consider(Spectrum(std::move(ones)));
    }

    CounterRng rng(seed);
    for (int i = 0; i < budget; ++i) consider(sample_sigma_slice(sched, rng));

    // Local multiplicative descent from the best point, projected back into
    // the cone.
    double step = 0.25;
    while (step > 1e-4) {
        bool improved = false;
        for (int c = 0; c < n; ++c) {
            for (double dir : {1.0, -1.0}) {
                std::vector<double> v = best.minimizer;
                v[static_cast<std::size_t>(c)] *= 1.0 + dir * step;
                Spectrum trial(std::move(v));
                if (!in_sigma_gamma(trial, sched)) continue;
                const double margin = definiteness_margin(k, trial);
                if (margin < best.value) {
                    best.value = margin;
                    best.minimizer = trial.values;
                    improved = true;
                }
            }
        }
        if (!improved) step *= 0.5;
    }

    if (!(best.value > 0.0)) {
        throw NonPositiveEstimateError(
            "scaled form is not negative definite at a sampled point");
    }
    return best;
}

VerificationReport suite_reduced_bounds(int n, int k, const AdmissibilityParams& params,
                                        int samples, std::uint64_t seed) {
    if (!params.schedule.has_value()) {
        throw BadRangeError("suite_reduced_bounds needs a schedule in the params");
    }
    const auto t0 = std::chrono::steady_clock::now();
    const ConstantsLedger led = ledger_for_suite(n, k, params.delta, *params.schedule, samples, seed);
    const double delta = params.delta;

    const SampleStats stats =
        map_reduce_samples(samples, seed, [&](int, CounterRng& rng) {
            SampleStats st;
            const AugmentedMatrix r = sample_admissible(n, k, params, rng);
            const DenseMatrix zero(r.r().rows(), r.r().cols(), 0.0);
            const ConjugateReduced cr = conjugate_reduce(r, zero);
            const DenseMatrix& rt = cr.r_tilde.r();
            const DenseMatrix dm = DenseMatrix::diagonal(cr.d);

            const DenseMatrix p = random_gaussian(n, rng).sym_part();
            const DenseMatrix q = random_gaussian(n, rng).skew_part();
            const double pp2 = [&] {
                const DenseMatrix v = double_tilde(cr.d, p);
                return v.dot(v);
            }();
            const double qq2 = [&] {
                const DenseMatrix v = double_tilde(cr.d, q);
                return v.dot(v);
            }();

            const double d2f_dp = d2F(dm, k, p);
            check_le(st, d2F(rt, k, p), d2f_dp + led.c4 * delta * delta * pp2);
            check_le(st, d2F(rt, k, q), led.c8 * qq2);
            check_le(st, cross_term(rt, k, p, q).direct,
                     led.c9 * delta * std::sqrt(pp2 * qq2));
            check_le(st, d2F(rt, k, p + q),
                     d2f_dp + (led.c4 + 1.0) * delta * delta * pp2 +
                         (led.c9 * led.c9 + led.c8) * qq2);
            return st;
        });

    VerificationReport rep;
    rep.suite = "reduced-bounds";
    rep.n = n;
    rep.k = k;
    rep.delta = params.delta;
    rep.mu = params.mu;
    rep.gamma_k = params.schedule->gamma_k;
    rep.samples = samples;
    rep.violations = stats.violations;
    rep.worst_margin = stats.worst;
    rep.seed = seed;
    rep.ledger = led;
    rep.wall_ms = wall_since(t0);
    return rep;
}

VerificationReport suite_symmetric_definiteness(const GammaSchedule& sched, double delta,
                                                int samples, std::uint64_t seed) {
    const auto t0 = std::chrono::steady_clock::now();
    const int n = sched.n;
    const int k = sched.k;
    const ConstantsLedger led = ledger_for_suite(n, k, delta, sched, samples, seed);
    const AdmissibilityParams params(delta, feasible_mu(n, sched, delta), sched);

    const SampleStats stats =
        map_reduce_samples(samples, seed, [&](int, CounterRng& rng) {
            SampleStats st;
            const AugmentedMatrix r = sample_admissible(n, k, params, rng);
            const DenseMatrix p = random_gaussian(n, rng).sym_part();
            const ConjugateReduced cr = conjugate_reduce(r, p);
            const DenseMatrix pp = double_tilde(cr.d, cr.m_tilde);
            check_le(st, d2F(r.r(), k, p), -led.c10 * pp.dot(pp));

            // Per-pair minor weight against mu_k, by direct enumeration.
            const std::vector<double>& lambda = cr.d;
            const double sk = detail::elementary_symmetric(lambda, k);
            std::vector<double> pair_weight(static_cast<std::size_t>(n * n), 0.0);
            detail::for_each_combination(n, k, [&](const std::vector<int>& idx) {
                double w = 1.0;
                for (int i : idx) w *= lambda[static_cast<std::size_t>(i)];
                w /= sk;
                for (std::size_t a = 0; a < idx.size(); ++a)
                    for (std::size_t b = a + 1; b < idx.size(); ++b)
                        pair_weight[static_cast<std::size_t>(idx[a] * n + idx[b])] += w;
            });
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b)
                    check_le(st, led.mu_k, pair_weight[static_cast<std::size_t>(a * n + b)]);
            return st;
        });

    VerificationReport rep;
    rep.suite = "symmetric-definiteness";
    rep.n = n;
    rep.k = k;
    rep.delta = delta;
    rep.mu = params.mu;
    rep.gamma_k = sched.gamma_k;
    rep.samples = samples;
    rep.violations = stats.violations;
    rep.worst_margin = stats.worst;
    rep.seed = seed;
    rep.ledger = led;
    rep.wall_ms = wall_since(t0);
    return rep;
}

VerificationReport suite_dconcavity(const GammaSchedule& sched, double delta, double mu,
                                    int pairs, std::uint64_t seed) {
    const auto t0 = std::chrono::steady_clock::now();
    const int n = sched.n;
    const int k = sched.k;
    const ConstantsLedger led = ledger_for_suite(n, k, delta, sched, pairs, seed);
    const AdmissibilityParams params(delta, mu, sched);

    const SampleStats stats = map_reduce_samples(pairs, seed, [&](int, CounterRng& rng) {
        SampleStats st;
        const AugmentedMatrix r0 = sample_admissible(n, k, params, rng);
        const AugmentedMatrix r1 = sample_admissible(n, k, params, rng);
        const DenseMatrix dr = r1.r() - r0.r();
        const DenseMatrix dbeta = r1.beta() - r0.beta();

        const double gap =
            F_k(r1.r(), k) - F_k(r0.r(), k) - grad_F_k(r0.r(), k).dot(dr);

        // First-order Taylor gap against the uniform constant d.
        check_le(st, gap, led.d);

        // Pairwise skew-difference bound; the largest lambda_min over the
        // tau grid gives the smallest admissible right-hand side.
        double lmin_largest = 0.0;
        for (int g = 1; g <= 9; ++g) {
            const double tau = 0.1 * g;
            const DenseMatrix omega_tau = r0.omega() * (1.0 - tau) + r1.omega() * tau;
            lmin_largest = std::max(lmin_largest, sym_eigen(omega_tau).min());
        }
        const double dbeta2 = dbeta.dot(dbeta);
        check_le(st, gap, led.c12 * dbeta2 / (lmin_largest * lmin_largest));

        // Second-differential skew bound at the left endpoint.
        check_le(st, d2F(r0.r(), k, dr),
                 led.c12 * dbeta2 / (r0.lambda_min() * r0.lambda_min()));
        return st;
    });

    VerificationReport rep;
    rep.suite = "dconcavity";
    rep.n = n;
    rep.k = k;
    rep.delta = delta;
    rep.mu = mu;
    rep.gamma_k = sched.gamma_k;
    rep.samples = pairs;
    rep.violations = stats.violations;
    rep.worst_margin = stats.worst;
    rep.seed = seed;
    rep.ledger = led;
    rep.wall_ms = wall_since(t0);
    return rep;
}

VerificationReport suite_ratio_bounds(const GammaSchedule& sched, int samples,
                                      std::uint64_t seed) {
    if (sched.branch != GammaBranch::Midrange) {
        throw BadBranchError("suite_ratio_bounds requires a midrange schedule");
    }
    const auto t0 = std::chrono::steady_clock::now();
    const int n = sched.n;
    const int k = sched.k;
    const ConstantsLedger led = ledger_for_suite(n, k, 0.0, sched, samples, seed);

    const SampleStats stats = map_reduce_samples(samples, seed, [&](int, CounterRng& rng) {
        SampleStats st;
        Spectrum lambda = sample_sigma_slice(sched, rng);
        std::sort(lambda.values.begin(), lambda.values.end(), std::greater<double>());
        const RatioBoundsReport rb = ratio_bounds_check(k, lambda);
        const double scale = lambda[0];
        check_margin(st, rb.last_entry_margin, scale);
        check_margin(st, rb.ratio_order_margin, scale);
        check_margin(st, rb.per_index_margin, scale);
        if (!rb.sup_value_ok) ++st.violations;
        st.worst = std::max(st.worst, rb.sup_residual - 1e-9);
        return st;
    });

    VerificationReport rep;
    rep.suite = "ratio-bounds";
    rep.n = n;
    rep.k = k;
    rep.delta = 0.0;
    rep.mu = 0.0;
    rep.gamma_k = sched.gamma_k;
    rep.samples = samples;
    rep.violations = stats.violations;
    rep.worst_margin = stats.worst;
    rep.seed = seed;
    rep.ledger = led;
    rep.wall_ms = wall_since(t0);
    return rep;
}

} // namespace hessk::verify
