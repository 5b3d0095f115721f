// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace mimo {

using cdouble = std::complex<double>;

// Relative tolerance used when deciding whether a matrix is Hermitian.
inline constexpr double kHermitianTol = 1e-12;

// Dense row-major complex matrix. Value type, equality is bitwise on entries.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols);  // zero-initialized
    ComplexMatrix(int rows, int cols, std::vector<cdouble> entries);

    static ComplexMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cdouble& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    const cdouble& operator()(int i, int j) const {
        return data_[static_cast<std::size_t>(i) * cols_ + j];
    }

    std::span<cdouble> row(int i) { return {data_.data() + static_cast<std::size_t>(i) * cols_, static_cast<std::size_t>(cols_)}; }
    std::span<const cdouble> row(int i) const { return {data_.data() + static_cast<std::size_t>(i) * cols_, static_cast<std::size_t>(cols_)}; }

    cdouble* data() { return data_.data(); }
    const cdouble* data() const { return data_.data(); }
    std::size_t size() const { return data_.size(); }

    ComplexMatrix conjugate_transpose() const;

    // max_{i,j} |a_{i,j}|
    double max_abs() const;
    double frobenius_norm() const;

    // max_{i,j} |a_{i,j} - conj(a_{j,i})| <= tol * max(1, max_abs)
    bool is_hermitian(double tol = kHermitianTol) const;

    bool operator==(const ComplexMatrix& other) const = default;

  private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<cdouble> data_;
};

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cdouble scale, const ComplexMatrix& a);

// C = A * B
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
// C = A * B^H
ComplexMatrix matmul_conjt(const ComplexMatrix& a, const ComplexMatrix& b);
// H * H^H, exactly hermitianized
ComplexMatrix gram(const ComplexMatrix& h);

// Splits a square A into its diagonal part and the complementary
// off-diagonal part; the two add back to A bit-exactly.
std::pair<ComplexMatrix, ComplexMatrix> split_diag_offdiag(const ComplexMatrix& a);

// max_i sum_j |a_{i,j}|; upper bound on the operator norm of a Hermitian A.
double row_sum_norm_bound(const ComplexMatrix& a);

// Square block (f_{i,j})_{i0 < i,j <= n} left after dropping the first i0
// rows and columns, 0 <= i0 <= n-1.
ComplexMatrix trailing_principal_submatrix(const ComplexMatrix& f, int i0);

}  // namespace mimo
