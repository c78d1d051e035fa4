#pragma once

#include <functional>
#include <vector>

#include "hessk/matrix.hpp"
#include "hessk/scalarform.hpp"
#include "hessk/sympoly.hpp"

namespace hessk::oracle {

/// Central finite differences with a relative step.
struct FDConfig {
    double relative_step = 1e-5;
};

using VectorField = std::function<double(const std::vector<double>&)>;
using MatrixField = std::function<double(const DenseMatrix&)>;

std::vector<double> fd_grad(const VectorField& f, const std::vector<double>& x,
                            FDConfig cfg = {});
DenseMatrix fd_grad(const MatrixField& f, const DenseMatrix& x, FDConfig cfg = {});

double fd_second_directional(const VectorField& f, const std::vector<double>& x,
                             const std::vector<double>& direction, FDConfig cfg = {});
double fd_second_directional(const MatrixField& f, const DenseMatrix& x,
                             const DenseMatrix& direction, FDConfig cfg = {});

/// Coefficients e_1..e_n of the characteristic polynomial via the
/// Faddeev-LeVerrier trace recurrence; e_k equals the sum of the k-by-k
/// principal minors.
std::vector<double> charpoly_ek(const DenseMatrix& a);

/// Literal subset-sum evaluation of the second differential of log sigma_k.
double subset_d2f(int k, const Spectrum& lambda, const std::vector<double>& xi);

/// Literal subset-sum evaluation of the four scaled terms.
TermDecomposition subset_terms(int k, const Spectrum& lambda, const std::vector<double>& eta);

} // namespace hessk::oracle
