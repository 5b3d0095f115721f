// SPDX-License-Identifier: Apache-2.0

#include "mimo/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "mimo/kernels.hpp"

namespace mimo {

namespace {

double offdiag_frobenius(const ComplexMatrix& a) {
    double sum = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (i != j)
                sum += std::norm(a(i, j));
    return std::sqrt(sum);
}

}  // namespace

SpectralSummary hermitian_eigen(const ComplexMatrix& input, bool want_vectors,
                                const JacobiOptions& opts) {
    if (!input.square())
        throw std::invalid_argument("hermitian_eigen: matrix must be square");
    if (!input.is_hermitian())
        throw std::invalid_argument("hermitian_eigen: matrix is not Hermitian within tolerance");

    const int n = input.rows();
    ComplexMatrix a = input;
    // vt holds the transpose of the accumulated unitary Q (A = Q diag Q^H),
    // so each rotation touches two contiguous rows instead of two columns.
    ComplexMatrix vt = want_vectors ? ComplexMatrix::identity(n) : ComplexMatrix();

    const double norm_target = opts.convergence_tol * input.frobenius_norm();
    const std::size_t un = static_cast<std::size_t>(n);

    double off = offdiag_frobenius(a);
    int sweeps = 0;
    while (off > norm_target) {
        if (sweeps >= opts.max_sweeps)
            throw std::runtime_error(
                "hermitian_eigen: no convergence after " + std::to_string(opts.max_sweeps) +
                " sweeps; off-diagonal mass " + std::to_string(off));
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cdouble apq = a(p, q);
                const double r = std::abs(apq);
                if (r == 0.0)
                    continue;
                const cdouble u = apq / r;  // unit phase of the pivot
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * r);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                // A <- J^H A J with J = I except J_pp=c, J_pq=s*u,
                // J_qp=-s*conj(u), J_qq=c. Rows first, then columns.
                kernels::rotate_pair(a.row(p).data(), a.row(q).data(), un, 1, c, s * u);
                kernels::rotate_pair(&a(0, p), &a(0, q), un, n, c, s * std::conj(u));
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = app - t * r;
                a(q, q) = aqq + t * r;

                if (want_vectors)
                    kernels::rotate_pair(vt.row(p).data(), vt.row(q).data(), un, 1, c,
                                         s * std::conj(u));
            }
        }
        ++sweeps;
        off = offdiag_frobenius(a);
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return a(i, i).real() > a(j, j).real(); });

    SpectralSummary out;
    out.iterations = sweeps;
    out.eigenvalues.resize(n);
    for (int i = 0; i < n; ++i)
        out.eigenvalues[i] = a(order[i], order[i]).real();

    if (want_vectors) {
        ComplexMatrix v(n, n);
        for (int col = 0; col < n; ++col)
            for (int i = 0; i < n; ++i)
                v(i, col) = vt(order[col], i);  // eigenvector i of Q is row i of vt

        // residual: max_i ||A v_i - lambda_i v_i||
        ComplexMatrix av = matmul(input, v);
        double worst = 0.0;
        for (int col = 0; col < n; ++col) {
            double sq = 0.0;
            for (int i = 0; i < n; ++i)
                sq += std::norm(av(i, col) - out.eigenvalues[col] * v(i, col));
            worst = std::max(worst, std::sqrt(sq));
        }
        out.max_residual = worst;
        out.eigenvectors = std::move(v);
    } else {
        out.max_residual = off;
    }
    return out;
}

int counting_function(std::span<const double> eigs, double x) {
    // first position with eig <= x in a non-increasing sequence
    auto it = std::lower_bound(eigs.begin(), eigs.end(), x,
                               [](double eig, double value) { return eig > value; });
    return static_cast<int>(it - eigs.begin());
}

double operator_norm(const ComplexMatrix& a) {
    SpectralSummary s = hermitian_eigen(a, false);
    double worst = 0.0;
    for (double eig : s.eigenvalues)
        worst = std::max(worst, std::abs(eig));
    return worst;
}

std::vector<double> step_function_probe_points(std::span<const double> breakpoints,
                                               double scale) {
    const double eps = 1e-9 * std::max(1.0, scale);
    std::vector<double> pts(breakpoints.begin(), breakpoints.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    std::vector<double> probes;
    probes.reserve(3 * pts.size() + 2);
    if (pts.empty())
        return probes;
    probes.push_back(pts.front() - 1.0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        probes.push_back(pts[i] - eps);
        if (i + 1 < pts.size())
            probes.push_back(0.5 * (pts[i] + pts[i + 1]));
    }
    probes.push_back(pts.back() + 1.0);
    return probes;
}

InterlacingReport check_interlacing_counting(const ComplexMatrix& mfull, int n_a) {
    if (!mfull.square())
        throw std::invalid_argument("check_interlacing_counting: matrix must be square");
    if (n_a < 1 || n_a >= mfull.rows())
        throw std::invalid_argument("check_interlacing_counting: n_A must satisfy 1 <= n_A < dim");

    const SpectralSummary full = hermitian_eigen(mfull, false);
    const ComplexMatrix b = trailing_principal_submatrix(mfull, n_a);
    const SpectralSummary sub = hermitian_eigen(b, false);

    std::vector<double> brk = full.eigenvalues;
    brk.insert(brk.end(), sub.eigenvalues.begin(), sub.eigenvalues.end());
    double scale = 0.0;
    for (double v : brk)
        scale = std::max(scale, std::abs(v));

    InterlacingReport rep;
    rep.worst_margin = std::numeric_limits<double>::infinity();
    for (double x : step_function_probe_points(brk, scale)) {
        const int lhs = counting_function(full.eigenvalues, x);
        const int rhs = n_a + counting_function(sub.eigenvalues, x);
        rep.worst_margin = std::min(rep.worst_margin, static_cast<double>(rhs - lhs));
        ++rep.checked_points;
    }
    rep.holds = rep.worst_margin >= 0.0;
    return rep;
}

}  // namespace mimo
