#pragma once

#include <vector>

#include "hessk/matrix.hpp"
#include "hessk/sympoly.hpp"

namespace hessk {

/// Symmetric coefficient matrix of a quadratic form v -> v^T M v.
struct QuadraticFormMatrix {
    DenseMatrix m;

    double evaluate(const std::vector<double>& v) const;
    int size() const { return static_cast<int>(m.rows()); }
};

/// The four subset-sum terms of the scaled second differential,
/// d2f_tilde = -A + B - C with B - C = E.
struct TermDecomposition {
    double a = 0.0; // squared weighted mean, >= 0
    double b = 0.0; // weighted second moment of subset sums
    double c = 0.0; // weighted sum of squares, >= 0
    double e = 0.0; // weighted off-diagonal products
};

/// Two closed forms for the off-diagonal coefficient of the scaled form,
/// differing by a factor 1/2 on the squared term, plus the value implied by
/// the analytic Hessian. The enumeration oracle selects full_form; see
/// docs/coefficient_check.md.
struct PairCoeff {
    double half_form = 0.0;       // 0.5*[sigma_{k-1}^{(i,j)}]^2 - sigma_k^{(i,j)} * sigma_{k-2}^{(i,j)}
    double full_form = 0.0;       //     [sigma_{k-1}^{(i,j)}]^2 - sigma_k^{(i,j)} * sigma_{k-2}^{(i,j)}
    double hessian_implied = 0.0; // -sigma_k^2 * H_ij, from the gradient/Hessian route
};

/// Outcome of the midrange deleted-ratio bounds for a descending spectrum.
struct RatioBoundsReport {
    bool last_entry_ok = false;  // lambda_n >= sigma_k^{(n)}/sigma_{k-1}^{(n)}
    double last_entry_margin = 0.0;
    bool ratio_order_ok = false; // deleted ratio max attained at the last index
    double ratio_order_margin = 0.0;
    bool per_index_ok = false;   // lambda_j >= sigma_k^{(j)}/sigma_{k-1}^{(j)} for all j
    double per_index_margin = 0.0;
    bool sup_value_ok = false;   // ratio at equal entries equals gamma_k * lambda_1
    double sup_residual = 0.0;
    bool all_ok = false;
};

/// f_k(lambda) = log sigma_k(lambda).
double f_k(int k, const Spectrum& lambda);

/// Gradient of f_k; component i is sigma_{k-1}^{(i)}/sigma_k.
std::vector<double> grad_f_k(int k, const Spectrum& lambda);

/// Analytic Hessian of f_k.
QuadraticFormMatrix hessian_f_k(int k, const Spectrum& lambda);

/// Second differential d2f_k(lambda, xi) = xi^T H xi.
double d2f(int k, const Spectrum& lambda, const std::vector<double>& xi);

/// Scaled second differential: d2f_k(lambda, lambda*eta) with the entrywise
/// product.
double d2f_tilde(int k, const Spectrum& lambda, const std::vector<double>& eta);

PairCoeff pair_coeff(int k, const Spectrum& lambda, int i, int j);

/// Symmetric matrix M with eta^T M eta = d2f_tilde(k, lambda, eta), assembled
/// as diag(lambda) * H * diag(lambda). This is the authoritative form for
/// definiteness tests.
QuadraticFormMatrix tilde_coeff_matrix(int k, const Spectrum& lambda);

/// Subset-sum evaluation of the four tilde terms.
TermDecomposition term_decomposition(int k, const Spectrum& lambda, const std::vector<double>& eta);

/// Zero-diagonal matrix with off-diagonal entries sigma_{k-2}^{(i,j)}; its
/// nondegeneracy decides strict definiteness of the scaled form.
DenseMatrix g_matrix(int k, const Spectrum& lambda);
bool g_matrix_degenerate(int k, const Spectrum& lambda);

/// Second differential of g_k = sigma_k^(1/k); nonpositive on the positive
/// cone and zero along rays.
double d2g_k(int k, const Spectrum& lambda, const std::vector<double>& xi);

/// Checks the deleted-ratio bounds for a midrange schedule; lambda must be
/// sorted descending with positive entries.
RatioBoundsReport ratio_bounds_check(int k, const Spectrum& lambda_sorted_desc);

} // namespace hessk
