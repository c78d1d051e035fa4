#include "hessk/matrix.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace hessk {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), entries_(rows * cols, fill) {
    check_finite();
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
        throw BadRangeError("entry array length does not match rows*cols");
    }
    check_finite();
}

void DenseMatrix::check_finite() const {
    for (double v : entries_) {
        if (!std::isfinite(v)) throw NonFiniteError("matrix entry is not finite");
    }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::diagonal(const std::vector<double>& d) {
    DenseMatrix m(d.size(), d.size(), 0.0);
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    m.check_finite();
    return m;
}

DenseMatrix DenseMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw BadRangeError("matrix needs at least one row");
    const std::size_t cols = rows.front().size();
    std::vector<double> flat;
    flat.reserve(rows.size() * cols);
    for (const auto& r : rows) {
        if (r.size() != cols) throw BadRangeError("ragged rows in matrix literal");
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return DenseMatrix(rows.size(), cols, std::move(flat));
}

DenseMatrix DenseMatrix::transpose() const {
    DenseMatrix t(cols_, rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

DenseMatrix DenseMatrix::sym_part() const {
    require_square(*this, "sym_part");
    DenseMatrix s(rows_, cols_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) s(i, j) = 0.5 * ((*this)(i, j) + (*this)(j, i));
    return s;
}

DenseMatrix DenseMatrix::skew_part() const {
    require_square(*this, "skew_part");
    DenseMatrix s(rows_, cols_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) s(i, j) = 0.5 * ((*this)(i, j) - (*this)(j, i));
    return s;
}

std::vector<double> DenseMatrix::diagonal_entries() const {
    require_square(*this, "diagonal_entries");
    std::vector<double> d(rows_);
    for (std::size_t i = 0; i < rows_; ++i) d[i] = (*this)(i, i);
    return d;
}

DenseMatrix DenseMatrix::submatrix(const std::vector<int>& idx) const {
    require_square(*this, "submatrix");
    const std::size_t k = idx.size();
    DenseMatrix sub(k, k, 0.0);
    for (std::size_t p = 0; p < k; ++p) {
        const int ip = idx[p];
        if (ip < 0 || static_cast<std::size_t>(ip) >= rows_) {
            throw BadIndexError("submatrix index out of range");
        }
        if (p > 0 && idx[p - 1] >= ip) {
            throw BadIndexError("submatrix indices must be strictly increasing");
        }
        for (std::size_t q = 0; q < k; ++q) sub(p, q) = (*this)(ip, idx[q]);
    }
    return sub;
}

double DenseMatrix::trace() const {
    require_square(*this, "trace");
    double t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double DenseMatrix::frobenius() const {
    double s = 0.0;
    for (double v : entries_) s += v * v;
    return std::sqrt(s);
}

double DenseMatrix::max_abs() const {
    double m = 0.0;
    for (double v : entries_) m = std::max(m, std::abs(v));
    return m;
}

double DenseMatrix::dot(const DenseMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw BadRangeError("dot: dimension mismatch");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < entries_.size(); ++i) s += entries_[i] * other.entries_[i];
    return s;
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw BadRangeError("add: dimension mismatch");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
    return *this;
}

DenseMatrix& DenseMatrix::operator-=(const DenseMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw BadRangeError("subtract: dimension mismatch");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
    return *this;
}

DenseMatrix& DenseMatrix::operator*=(double s) {
    for (double& v : entries_) v *= s;
    return *this;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols_ != b.rows_) throw BadRangeError("matmul: dimension mismatch");
    DenseMatrix c(a.rows_, b.cols_, 0.0);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t p = 0; p < a.cols_; ++p) {
            const double aip = a(i, p);
            if (aip == 0.0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aip * b(p, j);
        }
    }
    return c;
}

std::vector<double> DenseMatrix::apply(const std::vector<double>& x) const {
    if (x.size() != cols_) throw BadRangeError("apply: dimension mismatch");
    std::vector<double> y(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

void require_square(const DenseMatrix& a, const char* who) {
    if (!a.square()) throw BadRangeError(std::string(who) + ": matrix must be square");
}

} // namespace hessk
