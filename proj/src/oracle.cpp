#include "hessk/oracle.hpp"

#include <cmath>

#include "hessk/combinations.hpp"

namespace hessk::oracle {

namespace {

void check_step(const FDConfig& cfg) {
    if (!(cfg.relative_step > 1e-9 && cfg.relative_step < 1e-2)) {
        throw BadRangeError("finite-difference relative step out of (1e-9, 1e-2)");
    }
}

double scale_of(const std::vector<double>& x) {
    double m = 1.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
}

double probe(const VectorField& f, const std::vector<double>& x) {
    const double v = f(x);
    if (!std::isfinite(v)) throw NonFiniteError("objective is not finite at a probe point");
    return v;
}

double probe(const MatrixField& f, const DenseMatrix& x) {
    const double v = f(x);
    if (!std::isfinite(v)) throw NonFiniteError("objective is not finite at a probe point");
    return v;
}

} // namespace

std::vector<double> fd_grad(const VectorField& f, const std::vector<double>& x, FDConfig cfg) {
    check_step(cfg);
    const double h = cfg.relative_step * scale_of(x);
    std::vector<double> grad(x.size());
    std::vector<double> probe_point = x;
    for (std::size_t i = 0; i < x.size(); ++i) {
        probe_point[i] = x[i] + h;
        const double fp = probe(f, probe_point);
        probe_point[i] = x[i] - h;
        const double fm = probe(f, probe_point);
        probe_point[i] = x[i];
        grad[i] = (fp - fm) / (2.0 * h);
    }
    return grad;
}

DenseMatrix fd_grad(const MatrixField& f, const DenseMatrix& x, FDConfig cfg) {
    check_step(cfg);
    const double h = cfg.relative_step * std::max(1.0, x.max_abs());
    DenseMatrix grad(x.rows(), x.cols(), 0.0);
    DenseMatrix probe_point = x;
    for (std::size_t i = 0; i < x.rows(); ++i) {
        for (std::size_t j = 0; j < x.cols(); ++j) {
            probe_point(i, j) = x(i, j) + h;
            const double fp = probe(f, probe_point);
            probe_point(i, j) = x(i, j) - h;
            const double fm = probe(f, probe_point);
            probe_point(i, j) = x(i, j);
            grad(i, j) = (fp - fm) / (2.0 * h);
        }
    }
    return grad;
}

double fd_second_directional(const VectorField& f, const std::vector<double>& x,
                             const std::vector<double>& direction, FDConfig cfg) {
    check_step(cfg);
    const double h = cfg.relative_step * scale_of(x);
    std::vector<double> plus = x, minus = x;
    for (std::size_t i = 0; i < x.size(); ++i) {
        plus[i] += h * direction[i];
        minus[i] -= h * direction[i];
    }
    return (probe(f, plus) - 2.0 * probe(f, x) + probe(f, minus)) / (h * h);
}

double fd_second_directional(const MatrixField& f, const DenseMatrix& x,
                             const DenseMatrix& direction, FDConfig cfg) {
    check_step(cfg);
    const double h = cfg.relative_step * std::max(1.0, x.max_abs());
    DenseMatrix plus = x, minus = x;
    plus += direction * h;
    minus -= direction * h;
    return (probe(f, plus) - 2.0 * probe(f, x) + probe(f, minus)) / (h * h);
}

std::vector<double> charpoly_ek(const DenseMatrix& a) {
    require_square(a, "charpoly_ek");
    const int n = static_cast<int>(a.rows());
    if (n > 64) throw TooLargeError("charpoly_ek supports n <= 64");

    // M_1 = I, a_{n-1} = -tr(A); M_j = A M_{j-1} + a_{n-j+1} I,
    // a_{n-j} = -tr(A M_j)/j; then e_j = (-1)^j a_{n-j}.
    std::vector<double> ek(static_cast<std::size_t>(n));
    DenseMatrix m = DenseMatrix::identity(a.rows());
    double coeff = 0.0;
    for (int j = 1; j <= n; ++j) {
        if (j > 1) {
            m = a * m;
            for (int i = 0; i < n; ++i) m(i, i) += coeff;
        }
        coeff = -(a * m).trace() / static_cast<double>(j);
        ek[static_cast<std::size_t>(j - 1)] = (j % 2 == 0) ? coeff : -coeff;
    }
    return ek;
}

double subset_d2f(int k, const Spectrum& lambda, const std::vector<double>& xi) {
    const int n = lambda.size();
    if (static_cast<int>(xi.size()) != n) throw BadRangeError("subset_d2f: direction length");
    detail::require_enumeration_budget(n, k);
    const double sk = sigma(k, lambda);
    if (sk <= 0.0) throw NonPositiveSigmaError("subset_d2f needs sigma_k > 0");

    double mean = 0.0, second = 0.0, squares = 0.0;
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
    });
    return -mean * mean + second - squares;
}

TermDecomposition subset_terms(int k, const Spectrum& lambda, const std::vector<double>& eta) {
    const int n = lambda.size();
    if (static_cast<int>(eta.size()) != n) throw BadRangeError("subset_terms: direction length");
    detail::require_enumeration_budget(n, k);
    const double sk = sigma(k, lambda);
    if (sk <= 0.0) throw NonPositiveSigmaError("subset_terms needs sigma_k > 0");

    TermDecomposition t;
    double mean = 0.0;
    detail::for_each_combination(n, k, [&](const std::vector<int>& idx) {
        double weight = 1.0;
        double sum = 0.0, sumsq = 0.0;
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
        for (std::size_t p = 0; p < idx.size(); ++p) {
            for (std::size_t q = 0; q < idx.size(); ++q) {
                if (p == q) continue;
                cross += eta[static_cast<std::size_t>(idx[p])] *
                         eta[static_cast<std::size_t>(idx[q])];
            }
        }
        t.e += weight * cross;
    });
    t.a = mean * mean;
    return t;
}

} // namespace hessk::oracle
