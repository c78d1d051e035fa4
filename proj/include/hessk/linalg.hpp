#pragma once

#include <vector>

#include "hessk/matrix.hpp"

namespace hessk {

/// Eigendecomposition of a symmetric matrix: A = V diag(w) V^T with
/// eigenvalues w sorted descending and orthonormal columns in V.
struct SymEigen {
    std::vector<double> eigenvalues;
    DenseMatrix eigenvectors;

    double min() const { return eigenvalues.back(); }
    double max() const { return eigenvalues.front(); }
};

/// Cyclic Jacobi eigensolver. The input must be symmetric to a relative
/// tolerance of 1e-12 * |A|_F. Eigenvector columns have their
/// largest-magnitude component fixed positive so repeated runs agree.
SymEigen sym_eigen(const DenseMatrix& a);

/// Determinant via partially pivoted elimination. A matrix singular to
/// 1e-12 * |A|_F yields exactly 0.
double det_lu(const DenseMatrix& a);

/// Gauss-Jordan inverse with partial pivoting. Throws SingularError when a
/// pivot falls below 1e-12 * |A|_F.
DenseMatrix invert(const DenseMatrix& a);

/// Nonnegative spectrum of a skew-symmetric matrix: the values eta_j >= 0,
/// one per conjugate pair of eigenvalues +-i*eta_j, plus a trailing zero for
/// odd dimension, sorted descending. Computed as singular values of B, i.e.
/// square roots of the eigenvalues of B^T B.
std::vector<double> skew_spectrum(const DenseMatrix& b);

/// Operator norm (largest singular value).
double op_norm(const DenseMatrix& a);

} // namespace hessk
