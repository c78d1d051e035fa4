#include "hessk/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hessk {

namespace {

constexpr int kJacobiSweepBudget = 30;

double offdiag_frobenius(const DenseMatrix& a) {
    const std::size_t n = a.rows();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
    return std::sqrt(2.0 * s);
}

void require_symmetric(const DenseMatrix& a, const char* who) {
    require_square(a, who);
    const double tol = 1e-12 * std::max(a.frobenius(), 1e-300);
    const std::size_t n = a.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(a(i, j) - a(j, i)) > tol)
                throw NotSymmetricError(std::string(who) + ": matrix is not symmetric");
}

} // namespace

SymEigen sym_eigen(const DenseMatrix& input) {
    require_symmetric(input, "sym_eigen");
    const std::size_t n = input.rows();

    DenseMatrix a = input.sym_part(); // exact symmetry for the iteration
    DenseMatrix v = DenseMatrix::identity(n);

    const double scale = std::max(a.frobenius(), 1e-300);
    const double stop = 1e-14 * scale;

    int sweep = 0;
    while (offdiag_frobenius(a) > stop) {
        if (++sweep > kJacobiSweepBudget) {
            throw NoConvergenceError("sym_eigen: Jacobi sweep budget exhausted");
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= 1e-300 * scale) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                const double app = a(p, p), aqq = a(q, q);
                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t r = 0; r < n; ++r) {
                    if (r != p && r != q) {
                        const double arp = a(r, p), arq = a(r, q);
                        a(r, p) = a(p, r) = arp - s * (arq + tau * arp);
                        a(r, q) = a(q, r) = arq + s * (arp - tau * arq);
                    }
                    const double vrp = v(r, p), vrq = v(r, q);
                    v(r, p) = vrp - s * (vrq + tau * vrp);
                    v(r, q) = vrq + s * (vrp - tau * vrq);
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

    SymEigen out;
    out.eigenvalues.resize(n);
    out.eigenvectors = DenseMatrix(n, n, 0.0);
    for (std::size_t col = 0; col < n; ++col) {
        const std::size_t src = order[col];
        out.eigenvalues[col] = a(src, src);
        // Fix the overall sign: largest-magnitude component positive.
        std::size_t arg = 0;
        double best = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            if (std::abs(v(r, src)) > best) {
                best = std::abs(v(r, src));
                arg = r;
            }
        }
        const double sign = v(arg, src) < 0 ? -1.0 : 1.0;
        for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, col) = sign * v(r, src);
    }
    return out;
}

double det_lu(const DenseMatrix& input) {
    require_square(input, "det_lu");
    const std::size_t n = input.rows();
    if (n == 0) return 1.0;
    DenseMatrix a = input;
    const double tol = 1e-12 * a.frobenius();

    double det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
        const double p = a(piv, col);
        if (std::abs(p) <= tol) return 0.0;
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
            det = -det;
        }
        det *= a(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a(r, col) / a(col, col);
            if (f == 0.0) continue;
            for (std::size_t j = col; j < n; ++j) a(r, j) -= f * a(col, j);
        }
    }
    return det;
}

DenseMatrix invert(const DenseMatrix& input) {
    require_square(input, "invert");
    const std::size_t n = input.rows();
    DenseMatrix a = input;
    DenseMatrix inv = DenseMatrix::identity(n);
    const double tol = 1e-12 * std::max(a.frobenius(), 1e-300);

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
        if (std::abs(a(piv, col)) <= tol) {
            throw SingularError("invert: matrix is singular to tolerance");
        }
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(piv, j), a(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        }
        const double d = a(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) /= d;
            inv(col, j) /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a(r, col);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                a(r, j) -= f * a(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

std::vector<double> skew_spectrum(const DenseMatrix& b) {
    require_square(b, "skew_spectrum");
    const std::size_t n = b.rows();
    const double tol = 1e-12 * std::max(1.0, b.frobenius());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            if (std::abs(b(i, j) + b(j, i)) > tol)
                throw NotSkewError("skew_spectrum: matrix is not skew-symmetric");

    // Eigenvalues of B^T B come in equal pairs (eta^2, eta^2); pick every
    // other one of the descending list, which also yields the trailing zero
    // for odd dimension. Values below the relative noise floor collapse to
    // exact zeros so rank-deficient spectra come out clean.
    const DenseMatrix g = b.transpose() * b;
    SymEigen eig = sym_eigen(g.sym_part());
    const double floor = 1e-13 * std::max(eig.eigenvalues.front(), 0.0);
    std::vector<double> out;
    out.reserve((n + 1) / 2);
    for (std::size_t i = 0; i < n; i += 2) {
        const double v = eig.eigenvalues[i];
        out.push_back(v <= floor ? 0.0 : std::sqrt(v));
    }
    return out;
}

double op_norm(const DenseMatrix& a) {
    if (a.rows() == 0 || a.cols() == 0) return 0.0;
    const DenseMatrix g = a.transpose() * a;
    SymEigen eig = sym_eigen(g.sym_part());
    return std::sqrt(std::max(0.0, eig.eigenvalues.front()));
}

} // namespace hessk
