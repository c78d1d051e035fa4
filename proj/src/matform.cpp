#include "hessk/matform.hpp"

#include <algorithm>
#include <cmath>

#include "hessk/combinations.hpp"

namespace hessk {

namespace {

DenseMatrix invert_minor(const DenseMatrix& sub) {
    try {
        return invert(sub);
    } catch (const SingularError&) {
        throw SingularMinorError("principal minor is singular to tolerance");
    }
}

double product_at(const std::vector<double>& d, const std::vector<int>& idx) {
    double p = 1.0;
    for (int i : idx) p *= d[static_cast<std::size_t>(i)];
    return p;
}

/// Diagonal of the symmetric part, after checking the matrix is reduced
/// (diagonal-plus-skew) with positive diagonal.
std::vector<double> reduced_diagonal(const AugmentedMatrix& rt, const char* who) {
    const DenseMatrix& omega = rt.omega();
    const int n = rt.n();
    std::vector<double> d = omega.diagonal_entries();
    double scale = 1e-300;
    for (double v : d) scale = std::max(scale, std::abs(v));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (std::abs(omega(i, j)) > 1e-10 * scale) {
                throw BadRangeError(std::string(who) + ": expects a reduced (diagonal-plus-skew) matrix");
            }
        }
        if (d[static_cast<std::size_t>(i)] <= 0.0) {
            throw NotPositiveDefiniteError(std::string(who) + ": diagonal part must be positive");
        }
    }
    return d;
}

} // namespace

MinorIndex::MinorIndex(std::vector<int> idx) : indices(std::move(idx)) {
    if (indices.empty()) throw BadIndexError("minor index tuple must be nonempty");
    for (std::size_t p = 0; p < indices.size(); ++p) {
        if (indices[p] < 0) throw BadIndexError("minor index out of range");
        if (p > 0 && indices[p - 1] >= indices[p]) {
            throw BadIndexError("minor indices must be strictly increasing");
        }
    }
}

AdmissibilityParams::AdmissibilityParams(double delta_, double mu_,
                                         std::optional<GammaSchedule> sched)
    : delta(delta_), mu(mu_), schedule(std::move(sched)) {
    if (!(delta >= 0.0 && delta < 1.0)) throw BadDeltaError("delta must lie in [0, 1)");
    if (mu < 0.0) throw BadRangeError("mu must be nonnegative");
}

AugmentedMatrix AugmentedMatrix::from(DenseMatrix r) {
    require_square(r, "AugmentedMatrix");
    AugmentedMatrix out;
    out.omega_ = r.sym_part();
    out.beta_ = r.skew_part();
    out.eig_ = sym_eigen(out.omega_);
    out.r_ = std::move(r);
    return out;
}

std::vector<MinorIndex> all_minors(int n, int k) {
    if (k < 1 || k > n) throw BadDegreeError("minor size out of [1, n]");
    detail::require_enumeration_budget(n, k);
    std::vector<MinorIndex> out;
    out.reserve(static_cast<std::size_t>(detail::binomial(n, k)));
    detail::for_each_combination(n, k, [&](const std::vector<int>& idx) {
        out.push_back(MinorIndex(idx));
    });
    return out;
}

DenseMatrix minor_matrix(const DenseMatrix& r, const MinorIndex& idx) {
    return r.submatrix(idx.indices);
}

double minor_det(const DenseMatrix& r, const MinorIndex& idx) {
    return det_lu(minor_matrix(r, idx));
}

double minor_log(const DenseMatrix& r, const MinorIndex& idx) {
    const double det = minor_det(r, idx);
    if (det <= 0.0) throw NonPositiveMinorError("principal minor determinant must be positive");
    return std::log(det);
}

double S_k(const DenseMatrix& r, int k) {
    require_square(r, "S_k");
    const int n = static_cast<int>(r.rows());
    if (k < 1 || k > n) throw BadDegreeError("S_k degree out of [1, n]");
    detail::require_enumeration_budget(n, k);
    double s = 0.0;
    detail::for_each_combination(n, k, [&](const std::vector<int>& idx) {
        s += det_lu(r.submatrix(idx));
    });
    return s;
}

double F_k(const DenseMatrix& r, int k) {
    const double s = S_k(r, k);
    if (s <= 0.0) throw NonPositiveSkError("S_k(R) must be positive for F_k");
    return std::log(s);
}

DenseMatrix grad_F_k(const DenseMatrix& r, int k) {
    require_square(r, "grad_F_k");
    const int n = static_cast<int>(r.rows());
    if (k < 1 || k > n) throw BadDegreeError("grad_F_k degree out of [1, n]");
    detail::require_enumeration_budget(n, k);

    const double s = S_k(r, k);
    if (s <= 0.0) throw NonPositiveSkError("S_k(R) must be positive for grad_F_k");

    DenseMatrix grad(r.rows(), r.cols(), 0.0);
    detail::for_each_combination(n, k, [&](const std::vector<int>& idx) {
        const DenseMatrix sub = r.submatrix(idx);
        const double det = det_lu(sub);
        const DenseMatrix inv = invert_minor(sub);
        const double w = det / s;
        for (int p = 0; p < k; ++p) {
            for (int q = 0; q < k; ++q) {
                grad(idx[static_cast<std::size_t>(p)], idx[static_cast<std::size_t>(q)]) +=
                    w * inv(static_cast<std::size_t>(q), static_cast<std::size_t>(p));
            }
        }
    });
    return grad;
}

double d2F(const DenseMatrix& r, int k, const DenseMatrix& m) {
    require_square(r, "d2F");
    if (m.rows() != r.rows() || m.cols() != r.cols()) {
        throw BadRangeError("d2F: increment dimension mismatch");
    }
    const int n = static_cast<int>(r.rows());
    if (k < 1 || k > n) throw BadDegreeError("d2F degree out of [1, n]");
    detail::require_enumeration_budget(n, k);

    double s = 0.0;
    double weighted_t1 = 0.0;
    double weighted_t1_sq = 0.0;
    double weighted_curv = 0.0;
    detail::for_each_combination(n, k, [&](const std::vector<int>& idx) {
        const DenseMatrix sub = r.submatrix(idx);
        const DenseMatrix msub = m.submatrix(idx);
        const double det = det_lu(sub);
        const DenseMatrix inv = invert_minor(sub);
        const DenseMatrix im = inv * msub;
        const double t1 = im.trace();
        const double t2 = (im * im).trace();
        s += det;
        weighted_t1 += det * t1;
        weighted_t1_sq += det * t1 * t1;
        weighted_curv += det * (-t2);
    });
    if (s <= 0.0) throw NonPositiveSkError("S_k(R) must be positive for d2F");
    const double mean = weighted_t1 / s;
    return -mean * mean + weighted_t1_sq / s + weighted_curv / s;
}

std::pair<DenseMatrix, DenseMatrix> split_pq(const DenseMatrix& m) {
    return {m.sym_part(), m.skew_part()};
}

CrossTerm cross_term(const DenseMatrix& r, int k, const DenseMatrix& p, const DenseMatrix& q) {
    CrossTerm out;
    out.via_split = 0.5 * (d2F(r, k, p + q) - d2F(r, k, p) - d2F(r, k, q));

    const int n = static_cast<int>(r.rows());
    detail::require_enumeration_budget(n, k);
    double s = 0.0, wp = 0.0, wq = 0.0, wpq = 0.0, wcurv = 0.0;
    detail::for_each_combination(n, k, [&](const std::vector<int>& idx) {
        const DenseMatrix sub = r.submatrix(idx);
        const double det = det_lu(sub);
        const DenseMatrix inv = invert_minor(sub);
        const DenseMatrix ip = inv * p.submatrix(idx);
        const DenseMatrix iq = inv * q.submatrix(idx);
        const double tp = ip.trace();
        const double tq = iq.trace();
        s += det;
        wp += det * tp;
        wq += det * tq;
        wpq += det * tp * tq;
        wcurv += det * (-(ip * iq).trace());
    });
    if (s <= 0.0) throw NonPositiveSkError("S_k(R) must be positive for cross_term");
    out.direct = -(wp / s) * (wq / s) + wpq / s + wcurv / s;
    return out;
}

ConjugateReduced conjugate_reduce(const AugmentedMatrix& r, const DenseMatrix& m) {
    if (r.lambda_min() <= 0.0) {
        throw NotPositiveDefiniteError("conjugate_reduce needs a positive definite symmetric part");
    }
    if (m.rows() != r.r().rows() || m.cols() != r.r().cols()) {
        throw BadRangeError("conjugate_reduce: increment dimension mismatch");
    }
    const DenseMatrix c = r.eig().eigenvectors.transpose();
    const DenseMatrix ct = r.eig().eigenvectors;

    ConjugateReduced out;
    out.basis = c;
    out.d = r.eig().eigenvalues;
    // Rebuild as exactly diagonal-plus-skew; the symmetric off-diagonal resid
    // of C R C^T is eigensolver noise.
    const DenseMatrix rt_raw = c * r.r() * ct;
    DenseMatrix rt = rt_raw.skew_part();
    for (std::size_t i = 0; i < rt.rows(); ++i) rt(i, i) += out.d[i];
    out.r_tilde = AugmentedMatrix::from(std::move(rt));
    out.m_tilde = c * m * ct;
    return out;
}

DenseMatrix double_tilde(const std::vector<double>& d, const DenseMatrix& x) {
    if (d.size() != x.rows() || !x.square()) {
        throw BadRangeError("double_tilde: dimension mismatch");
    }
    std::vector<double> root(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] <= 0.0) throw NotPositiveError("double_tilde needs a positive diagonal");
        root[i] = std::sqrt(d[i]);
    }
    DenseMatrix y = x;
    for (std::size_t i = 0; i < y.rows(); ++i)
        for (std::size_t j = 0; j < y.cols(); ++j) y(i, j) /= root[i] * root[j];
    return y;
}

SigmaTildeReport sigma_tilde_diag(const AugmentedMatrix& rt, int k) {
    const std::vector<double> d = reduced_diagonal(rt, "sigma_tilde_diag");
    const int n = rt.n();
    if (k < 1 || k > n) throw BadDegreeError("minor size out of [1, n]");
    detail::require_enumeration_budget(n, k);

    SigmaTildeReport rep;
    detail::for_each_combination(n, k, [&](const std::vector<int>& idx) {
        std::vector<double> dsub(idx.size());
        for (std::size_t p = 0; p < idx.size(); ++p) dsub[p] = d[static_cast<std::size_t>(idx[p])];
        const DenseMatrix sigma_sub = double_tilde(dsub, rt.beta().submatrix(idx));
        DenseMatrix eye_plus = sigma_sub;
        for (std::size_t i = 0; i < eye_plus.rows(); ++i) eye_plus(i, i) += 1.0;
        // K is pinned by the symmetric part of the inverse: with sigma skew,
        // sym((I+sigma)^{-1}) = (I-sigma^2)^{-1} = I + K, which keeps K at
        // second order in the norm of sigma.
        DenseMatrix kmat = invert_minor(eye_plus).sym_part();
        for (std::size_t i = 0; i < kmat.rows(); ++i) kmat(i, i) -= 1.0;

        MinorScaling ms{MinorIndex(idx), op_norm(sigma_sub), kmat.frobenius()};
        rep.max_sigma_norm = std::max(rep.max_sigma_norm, ms.sigma_norm);
        rep.max_k_frob = std::max(rep.max_k_frob, ms.k_frob);
        rep.minors.push_back(std::move(ms));
    });
    return rep;
}

HFactorsReport h_factors(const AugmentedMatrix& rt, int k) {
    const std::vector<double> d = reduced_diagonal(rt, "h_factors");
    const int n = rt.n();
    if (k < 1 || k > n) throw BadDegreeError("minor size out of [1, n]");
    detail::require_enumeration_budget(n, k);

    const double sk_d = detail::elementary_symmetric(d, k);
    const double sk_rt = S_k(rt.r(), k);
    if (sk_d <= 0.0 || sk_rt <= 0.0) {
        throw NonPositiveSkError("h_factors needs positive S_k");
    }

    HFactorsReport rep;
    rep.min_h = 1e300;
    double weighted_h = 0.0;
    detail::for_each_combination(n, k, [&](const std::vector<int>& idx) {
        const double det_d = product_at(d, idx);
        if (det_d <= 0.0) throw SingularMinorError("diagonal minor must be positive");
        const double g_rt = det_lu(rt.r().submatrix(idx));

        MinorFactor f{MinorIndex(idx), 0.0, 0.0, 0.0};
        f.h = g_rt / det_d - 1.0;
        f.g = g_rt * sk_d / (sk_rt * det_d) - 1.0;

        std::vector<double> dsub(idx.size());
        for (std::size_t p = 0; p < idx.size(); ++p) dsub[p] = d[static_cast<std::size_t>(idx[p])];
        const DenseMatrix sigma_sub = double_tilde(dsub, rt.beta().submatrix(idx));
        double prod = 1.0;
        if (idx.size() >= 2) {
            for (double eta : skew_spectrum(sigma_sub)) prod *= 1.0 + eta * eta;
        }
        f.h_eta_product = prod - 1.0;

        weighted_h += f.h * det_d;
        rep.min_h = std::min(rep.min_h, f.h);
        rep.max_h = std::max(rep.max_h, f.h);
        rep.max_abs_g = std::max(rep.max_abs_g, std::abs(f.g));
        rep.max_h_mismatch = std::max(rep.max_h_mismatch, std::abs(f.h - f.h_eta_product));
        rep.minors.push_back(std::move(f));
    });
    rep.h_k = weighted_h / sk_d;
    return rep;
}

bool in_admissible(const AugmentedMatrix& r, const AdmissibilityParams& params) {
    const double slack = 1e-10;
    const double lmin = r.lambda_min();
    if (lmin <= 0.0) return false;
    const double beta_norm = op_norm(r.beta());
    if (beta_norm > params.mu * (1.0 + slack) + 1e-300) return false;
    if (params.mu > params.delta * lmin * (1.0 + slack) + 1e-300) return false;
    if (params.schedule.has_value()) {
        return in_sigma_gamma(Spectrum(r.eig().eigenvalues), *params.schedule);
    }
    return true;
}

} // namespace hessk
