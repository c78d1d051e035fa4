#pragma once

#include <cstddef>
#include <vector>

#include "hessk/errors.hpp"

namespace hessk {

/// Dense row-major matrix of 64-bit floats. Entries must be finite on
/// construction; dimensions are fixed for the lifetime of the object.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

    static DenseMatrix identity(std::size_t n);
    static DenseMatrix diagonal(const std::vector<double>& d);
    static DenseMatrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    double operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

    const std::vector<double>& entries() const { return entries_; }

    DenseMatrix transpose() const;
    DenseMatrix sym_part() const;   // (A + A^T)/2
    DenseMatrix skew_part() const;  // (A - A^T)/2

    std::vector<double> diagonal_entries() const;

    /// Principal submatrix picked by strictly increasing 0-based indices.
    DenseMatrix submatrix(const std::vector<int>& idx) const;

    double trace() const;
    double frobenius() const;
    double max_abs() const;

    /// Frobenius inner product sum_ij A_ij B_ij.
    double dot(const DenseMatrix& other) const;

    DenseMatrix& operator+=(const DenseMatrix& other);
    DenseMatrix& operator-=(const DenseMatrix& other);
    DenseMatrix& operator*=(double s);

    friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
    friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
    friend DenseMatrix operator*(DenseMatrix a, double s) { return a *= s; }
    friend DenseMatrix operator*(double s, DenseMatrix a) { return a *= s; }
    friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);

    std::vector<double> apply(const std::vector<double>& x) const;

private:
    void check_finite() const;

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> entries_;
};

void require_square(const DenseMatrix& a, const char* who);

} // namespace hessk
