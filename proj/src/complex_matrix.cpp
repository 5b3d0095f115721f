// SPDX-License-Identifier: Apache-2.0

#include "mimo/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mimo/kernels.hpp"

namespace mimo {

ComplexMatrix::ComplexMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {
    if (rows <= 0 || cols <= 0)
        throw std::invalid_argument("ComplexMatrix: dimensions must be positive");
}

ComplexMatrix::ComplexMatrix(int rows, int cols, std::vector<cdouble> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows <= 0 || cols <= 0)
        throw std::invalid_argument("ComplexMatrix: dimensions must be positive");
    if (data_.size() != static_cast<std::size_t>(rows) * cols)
        throw std::invalid_argument("ComplexMatrix: entry count does not match rows*cols");
}

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::conjugate_transpose() const {
    ComplexMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            t(j, i) = std::conj((*this)(i, j));
    return t;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const cdouble& z : data_)
        m = std::max(m, std::abs(z));
    return m;
}

double ComplexMatrix::frobenius_norm() const {
    return std::sqrt(kernels::abs2_sum(data_.data(), data_.size()));
}

bool ComplexMatrix::is_hermitian(double tol) const {
    if (!square())
        return false;
    double worst = 0.0;
    for (int i = 0; i < rows_; ++i)
        for (int j = i; j < cols_; ++j)
            worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return worst <= tol * std::max(1.0, max_abs());
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix addition: shape mismatch");
    ComplexMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.size(); ++i)
        c.data()[i] = a.data()[i] + b.data()[i];
    return c;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix subtraction: shape mismatch");
    ComplexMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.size(); ++i)
        c.data()[i] = a.data()[i] - b.data()[i];
    return c;
}

ComplexMatrix operator*(cdouble scale, const ComplexMatrix& a) {
    ComplexMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.size(); ++i)
        c.data()[i] = scale * a.data()[i];
    return c;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("matmul: inner dimensions do not match");
    ComplexMatrix c(a.rows(), b.cols());
    const std::size_t n = static_cast<std::size_t>(b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        cdouble* crow = c.row(i).data();
        for (int k = 0; k < a.cols(); ++k)
            kernels::axpy(a(i, k), b.row(k).data(), crow, n);
    }
    return c;
}

ComplexMatrix matmul_conjt(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.cols())
        throw std::invalid_argument("matmul_conjt: inner dimensions do not match");
    ComplexMatrix c(a.rows(), b.rows());
    const std::size_t n = static_cast<std::size_t>(a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < b.rows(); ++j)
            c(i, j) = kernels::cdotc(a.row(i).data(), b.row(j).data(), n);
    return c;
}

ComplexMatrix gram(const ComplexMatrix& h) {
    ComplexMatrix g = matmul_conjt(h, h);
    for (int i = 0; i < g.rows(); ++i) {
        g(i, i) = g(i, i).real();
        for (int j = i + 1; j < g.cols(); ++j) {
            const cdouble m = 0.5 * (g(i, j) + std::conj(g(j, i)));
            g(i, j) = m;
            g(j, i) = std::conj(m);
        }
    }
    return g;
}

std::pair<ComplexMatrix, ComplexMatrix> split_diag_offdiag(const ComplexMatrix& a) {
    if (!a.square())
        throw std::invalid_argument("split_diag_offdiag: matrix must be square");
    ComplexMatrix d(a.rows(), a.cols());
    ComplexMatrix o = a;
    for (int i = 0; i < a.rows(); ++i) {
        d(i, i) = a(i, i);
        o(i, i) = 0.0;
    }
    return {std::move(d), std::move(o)};
}

double row_sum_norm_bound(const ComplexMatrix& a) {
    if (!a.square())
        throw std::invalid_argument("row_sum_norm_bound: matrix must be square");
    double worst = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        worst = std::max(worst, kernels::abs_sum(a.row(i).data(), a.row(i).size()));
    return worst;
}

ComplexMatrix trailing_principal_submatrix(const ComplexMatrix& f, int i0) {
    if (!f.square())
        throw std::invalid_argument("trailing_principal_submatrix: matrix must be square");
    if (i0 < 0 || i0 >= f.rows())
        throw std::invalid_argument("trailing_principal_submatrix: i0 out of range [0, " +
                                    std::to_string(f.rows() - 1) + "]");
    const int m = f.rows() - i0;
    ComplexMatrix t(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            t(i, j) = f(i0 + i, i0 + j);
    return t;
}

}  // namespace mimo
