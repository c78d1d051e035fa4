#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hessk/linalg.hpp"
#include "hessk/matrix.hpp"
#include "hessk/sympoly.hpp"

namespace hessk {

/// Strictly increasing 0-based index tuple selecting a principal minor.
struct MinorIndex {
    std::vector<int> indices;

    explicit MinorIndex(std::vector<int> idx);
    int size() const { return static_cast<int>(indices.size()); }
};

/// Parameters of the admissible set: ||beta|| <= mu <= delta * lambda_min(omega),
/// optionally restricted to spectra in Sigma_(gamma_k).
struct AdmissibilityParams {
    double delta = 0.0;
    double mu = 0.0;
    std::optional<GammaSchedule> schedule;

    AdmissibilityParams(double delta_, double mu_,
                        std::optional<GammaSchedule> sched = std::nullopt);
};

/// A real square matrix R = omega + beta stored with its symmetric part,
/// skew part, and the cached eigendecomposition of omega.
class AugmentedMatrix {
public:
    AugmentedMatrix() = default;

    static AugmentedMatrix from(DenseMatrix r);

    const DenseMatrix& r() const { return r_; }
    const DenseMatrix& omega() const { return omega_; }
    const DenseMatrix& beta() const { return beta_; }
    const SymEigen& eig() const { return eig_; }

    int n() const { return static_cast<int>(r_.rows()); }
    double lambda_min() const { return eig_.min(); }

private:
    DenseMatrix r_, omega_, beta_;
    SymEigen eig_;
};

/// All k-element minors of an n-dimensional matrix in lexicographic order.
/// Throws TooLargeError past the 10^6 enumeration budget.
std::vector<MinorIndex> all_minors(int n, int k);

DenseMatrix minor_matrix(const DenseMatrix& r, const MinorIndex& idx);
double minor_det(const DenseMatrix& r, const MinorIndex& idx);
double minor_log(const DenseMatrix& r, const MinorIndex& idx);

/// Sum of all k-by-k principal minors.
double S_k(const DenseMatrix& r, int k);

/// F_k(R) = log S_k(R).
double F_k(const DenseMatrix& r, int k);

/// Gradient matrix of F_k: each minor scatters its inverse-transpose into its
/// index positions, weighted by G/S_k.
DenseMatrix grad_F_k(const DenseMatrix& r, int k);

/// Second differential d^2 F_k(R, M), evaluated per minor through the trace
/// identities tr(A^-1 M) and -tr(A^-1 M A^-1 M) for d log det.
double d2F(const DenseMatrix& r, int k, const DenseMatrix& m);

/// Symmetric/skew split of an increment.
std::pair<DenseMatrix, DenseMatrix> split_pq(const DenseMatrix& m);

/// Mixed bilinear term H_k of the split identity
/// d2F(M) = d2F(P) + d2F(Q) + 2 H_k(P, Q), computed two ways.
struct CrossTerm {
    double via_split = 0.0; // [d2F(M) - d2F(P) - d2F(Q)] / 2
    double direct = 0.0;    // bilinear trace evaluation
};
CrossTerm cross_term(const DenseMatrix& r, int k, const DenseMatrix& p, const DenseMatrix& q);

/// Conjugation by the orthogonal eigenbasis of omega: R_tilde = D + beta_tilde
/// with D the descending eigenvalue diagonal, and M_tilde = C M C^T.
struct ConjugateReduced {
    AugmentedMatrix r_tilde;
    DenseMatrix m_tilde;
    DenseMatrix basis;      // orthogonal C with C omega C^T = D
    std::vector<double> d;  // diagonal of D, descending
};
ConjugateReduced conjugate_reduce(const AugmentedMatrix& r, const DenseMatrix& m);

/// D^{-1/2} X D^{-1/2} for a positive diagonal given by d.
DenseMatrix double_tilde(const std::vector<double>& d, const DenseMatrix& x);

/// Per-minor scaling diagnostics of a reduced matrix D + beta_tilde:
/// sigma_sub = D_sub^{-1/2} beta_sub D_sub^{-1/2} and the second-order
/// correction K_sub = sym((I + sigma_sub)^{-1}) - I = (I - sigma_sub^2)^{-1} - I.
struct MinorScaling {
    MinorIndex idx;
    double sigma_norm = 0.0; // operator norm of sigma_sub
    double k_frob = 0.0;     // Frobenius norm of K_sub
};
struct SigmaTildeReport {
    std::vector<MinorScaling> minors;
    double max_sigma_norm = 0.0;
    double max_k_frob = 0.0;
};
SigmaTildeReport sigma_tilde_diag(const AugmentedMatrix& r_tilde, int k);

/// Per-minor determinant inflation factors of a reduced matrix:
/// G_sub(R_tilde) = (1 + h_sub) det(D_sub), their S_k-weighted aggregate h_k,
/// and the normalized weight shifts g_sub. h_eta_product recomputes h_sub
/// from the skew spectrum of sigma_sub as prod(1 + eta^2) - 1.
struct MinorFactor {
    MinorIndex idx;
    double h = 0.0;
    double g = 0.0;
    double h_eta_product = 0.0;
};
struct HFactorsReport {
    std::vector<MinorFactor> minors;
    double h_k = 0.0;
    double min_h = 0.0;
    double max_h = 0.0;
    double max_abs_g = 0.0;
    double max_h_mismatch = 0.0;
};
HFactorsReport h_factors(const AugmentedMatrix& r_tilde, int k);

/// Membership in D_{delta,mu} (and in Sigma_(gamma_k) when the params carry a
/// schedule). Comparisons allow 1e-10 relative rounding slack.
bool in_admissible(const AugmentedMatrix& r, const AdmissibilityParams& params);

} // namespace hessk
