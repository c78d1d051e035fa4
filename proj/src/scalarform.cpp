#include "hessk/scalarform.hpp"

#include <algorithm>
#include <cmath>

#include "hessk/combinations.hpp"
#include "hessk/linalg.hpp"

namespace hessk {

namespace {

double require_positive_sigma(int k, const Spectrum& lambda) {
    const double sk = sigma(k, lambda);
    if (sk <= 0.0) throw NonPositiveSigmaError("sigma_k(lambda) must be positive");
    return sk;
}

void check_vector_size(const std::vector<double>& v, int n, const char* who) {
    if (static_cast<int>(v.size()) != n) {
        throw BadRangeError(std::string(who) + ": direction length does not match spectrum");
    }
}

void require_positive_entries(const Spectrum& lambda, const char* who) {
    for (double x : lambda.values) {
        if (x <= 0.0) throw NotPositiveError(std::string(who) + ": spectrum must be positive");
    }
}

} // namespace

double QuadraticFormMatrix::evaluate(const std::vector<double>& v) const {
    if (v.size() != m.rows()) throw BadRangeError("quadratic form: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) row += m(i, j) * v[j];
        s += v[i] * row;
    }
    return s;
}

double f_k(int k, const Spectrum& lambda) {
    return std::log(require_positive_sigma(k, lambda));
}

std::vector<double> grad_f_k(int k, const Spectrum& lambda) {
    const double sk = require_positive_sigma(k, lambda);
    const int n = lambda.size();
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        g[static_cast<std::size_t>(i)] = sigma_deleted(k - 1, lambda, i) / sk;
    }
    return g;
}

QuadraticFormMatrix hessian_f_k(int k, const Spectrum& lambda) {
    const double sk = require_positive_sigma(k, lambda);
    const int n = lambda.size();
    std::vector<double> del1(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) del1[static_cast<std::size_t>(i)] = sigma_deleted(k - 1, lambda, i);

    DenseMatrix h(static_cast<std::size_t>(n), static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        const double di = del1[static_cast<std::size_t>(i)];
        h(i, i) = -(di * di) / (sk * sk);
        for (int j = i + 1; j < n; ++j) {
            const double mixed = (k >= 2) ? sigma_deleted2(k - 2, lambda, i, j) : 0.0;
            const double hij = mixed / sk - di * del1[static_cast<std::size_t>(j)] / (sk * sk);
            h(i, j) = hij;
            h(j, i) = hij;
        }
    }
    return QuadraticFormMatrix{std::move(h)};
}

double d2f(int k, const Spectrum& lambda, const std::vector<double>& xi) {
    check_vector_size(xi, lambda.size(), "d2f");
    return hessian_f_k(k, lambda).evaluate(xi);
}

double d2f_tilde(int k, const Spectrum& lambda, const std::vector<double>& eta) {
    check_vector_size(eta, lambda.size(), "d2f_tilde");
    std::vector<double> xi(eta.size());
    for (std::size_t i = 0; i < eta.size(); ++i) xi[i] = lambda.values[i] * eta[i];
    return d2f(k, lambda, xi);
}

PairCoeff pair_coeff(int k, const Spectrum& lambda, int i, int j) {
    const int n = lambda.size();
    if (k < 2 || k > n - 1) throw BadRangeError("pair_coeff requires 2 <= k <= n-1");
    if (i == j) throw BadIndexError("pair_coeff needs distinct indices");
    const double s_k1 = sigma_deleted2(k - 1, lambda, i, j);
    const double s_k = sigma_deleted2(k, lambda, i, j);
    const double s_k2 = sigma_deleted2(k - 2, lambda, i, j);
    PairCoeff out;
    out.half_form = 0.5 * s_k1 * s_k1 - s_k * s_k2;
    out.full_form = s_k1 * s_k1 - s_k * s_k2;
    const double sk = require_positive_sigma(k, lambda);
    const double hij = ((k >= 2 ? sigma_deleted2(k - 2, lambda, i, j) : 0.0) / sk) -
                       sigma_deleted(k - 1, lambda, i) * sigma_deleted(k - 1, lambda, j) / (sk * sk);
    out.hessian_implied = -sk * sk * hij;
    return out;
}

QuadraticFormMatrix tilde_coeff_matrix(int k, const Spectrum& lambda) {
    QuadraticFormMatrix h = hessian_f_k(k, lambda);
    const int n = lambda.size();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) h.m(i, j) *= lambda[i] * lambda[j];
    return h;
}

TermDecomposition term_decomposition(int k, const Spectrum& lambda, const std::vector<double>& eta) {
    const int n = lambda.size();
    check_vector_size(eta, n, "term_decomposition");
    detail::require_enumeration_budget(n, k);
    const double sk = require_positive_sigma(k, lambda);

    TermDecomposition t;
    double mean = 0.0;
    detail::for_each_combination(n, k, [&](const std::vector<int>& idx) {
        double weight = 1.0;
        double sum = 0.0;
        double sumsq = 0.0;
        for (int p : idx) {
            weight *= lambda[p];
            sum += eta[static_cast<std::size_t>(p)];
            sumsq += eta[static_cast<std::size_t>(p)] * eta[static_cast<std::size_t>(p)];
        }
        weight /= sk;
        mean += weight * sum;
        t.b += weight * sum * sum;
        t.c += weight * sumsq;
        double cross = 0.0;
        for (std::size_t p = 0; p < idx.size(); ++p)
            for (std::size_t q = 0; q < idx.size(); ++q)
                if (p != q)
                    cross += eta[static_cast<std::size_t>(idx[p])] *
                             eta[static_cast<std::size_t>(idx[q])];
        t.e += weight * cross;
    });
    t.a = mean * mean;

    const double scale = std::max({1.0, std::abs(t.b), std::abs(t.c), std::abs(t.e)});
    if (std::abs(t.b - t.c - t.e) > 1e-10 * scale) {
        throw Error("term decomposition identity B - C = E violated beyond rounding");
    }
    return t;
}

DenseMatrix g_matrix(int k, const Spectrum& lambda) {
    const int n = lambda.size();
    if (k < 2 || k > n - 1) throw BadDegreeError("g_matrix requires 2 <= k <= n-1");
    DenseMatrix g(static_cast<std::size_t>(n), static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double v = sigma_deleted2(k - 2, lambda, i, j);
            g(i, j) = v;
            g(j, i) = v;
        }
    }
    return g;
}

bool g_matrix_degenerate(int k, const Spectrum& lambda) {
    const DenseMatrix g = g_matrix(k, lambda);
    const double scale = g.max_abs();
    if (scale == 0.0) return true;
    const double det = det_lu(g);
    return std::abs(det) <= 1e-10 * std::pow(scale, static_cast<double>(lambda.size()));
}

double d2g_k(int k, const Spectrum& lambda, const std::vector<double>& xi) {
    const int n = lambda.size();
    check_vector_size(xi, n, "d2g_k");
    if (k < 2 || k > n) throw BadDegreeError("d2g_k requires 2 <= k <= n");
    require_positive_entries(lambda, "d2g_k");
    detail::require_enumeration_budget(n, k);
    const double sk = require_positive_sigma(k, lambda);

    double mean = 0.0, second = 0.0, squares = 0.0, cross = 0.0;
    detail::for_each_combination(n, k, [&](const std::vector<int>& idx) {
        double weight = 1.0;
        double sum = 0.0;
        double sumsq = 0.0;
        for (int p : idx) {
            weight *= lambda[p];
            const double r = xi[static_cast<std::size_t>(p)] / lambda[p];
            sum += r;
            sumsq += r * r;
        }
        weight /= sk;
        mean += weight * sum;
        second += weight * sum * sum;
        squares += weight * sumsq;
        cross += weight * (sum * sum - sumsq);
    });

    const double bracket =
        -mean * mean + second - squares + cross / static_cast<double>(k - 1);
    return (static_cast<double>(k - 1) / static_cast<double>(k * k)) *
           std::pow(sk, 1.0 / static_cast<double>(k)) * bracket;
}

RatioBoundsReport ratio_bounds_check(int k, const Spectrum& lambda) {
    const int n = lambda.size();
    if (!(k >= n / 2 + 1 && k <= n - 3)) {
        throw BadRangeError("ratio_bounds_check applies to the midrange schedule only");
    }
    require_positive_entries(lambda, "ratio_bounds_check");
    for (int i = 0; i + 1 < n; ++i) {
        if (lambda[i] < lambda[i + 1]) {
            throw BadRangeError("ratio_bounds_check expects a descending spectrum");
        }
    }
    const double gamma_sched = static_cast<double>(n - k) / static_cast<double>(k);
    if (lambda[n - 1] < gamma_sched * lambda[0]) {
        throw BadRangeError("ratio_bounds_check expects a spectrum inside the scheduled slice");
    }

    std::vector<double> ratio(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        ratio[static_cast<std::size_t>(j)] =
            sigma_deleted(k, lambda, j) / sigma_deleted(k - 1, lambda, j);
    }

    RatioBoundsReport rep;
    const double rn = ratio[static_cast<std::size_t>(n - 1)];
    rep.last_entry_margin = rn - lambda[n - 1];
    rep.last_entry_ok = rep.last_entry_margin <= 0.0;

    rep.ratio_order_margin = -1e300;
    rep.per_index_margin = -1e300;
    for (int j = 0; j < n; ++j) {
        if (j < n - 1) {
            rep.ratio_order_margin =
                std::max(rep.ratio_order_margin, ratio[static_cast<std::size_t>(j)] - rn);
        }
        rep.per_index_margin =
            std::max(rep.per_index_margin, ratio[static_cast<std::size_t>(j)] - lambda[j]);
    }
    rep.ratio_order_ok = rep.ratio_order_margin <= 0.0;
    rep.per_index_ok = rep.per_index_margin <= 0.0;

    // Supremum over descending positive spectra of the last deleted ratio is
    // attained at equal entries with the value gamma_k * lambda_1.
    Spectrum equal(std::vector<double>(static_cast<std::size_t>(n), lambda[0]));
    const double sup =
        sigma_deleted(k, equal, n - 1) / sigma_deleted(k - 1, equal, n - 1);
    rep.sup_residual = std::abs(sup - gamma_sched * lambda[0]) /
                       std::max(1.0, std::abs(gamma_sched * lambda[0]));
    rep.sup_value_ok = rep.sup_residual <= 1e-9;

    rep.all_ok = rep.last_entry_ok && rep.ratio_order_ok && rep.per_index_ok && rep.sup_value_ok;
    return rep;
}

} // namespace hessk
