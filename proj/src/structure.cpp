// SPDX-License-Identifier: Apache-2.0

#include "mimo/structure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "mimo/eigen.hpp"

namespace mimo::structure {

namespace {
constexpr double kDiagTol = 1e-12;
constexpr double kRhoTol = 1e-9;
}  // namespace

std::pair<std::vector<int>, ComplexMatrix> sort_diagonal_descending(const ComplexMatrix& f) {
    if (!f.square())
        throw std::invalid_argument("sort_diagonal_descending: matrix must be square");
    const int n = f.rows();
    const double scale = std::max(1.0, f.max_abs());
    std::vector<double> diag(n);
    for (int i = 0; i < n; ++i) {
        const cdouble d = f(i, i);
        if (std::abs(d.imag()) > kDiagTol * scale)
            throw std::invalid_argument("sort_diagonal_descending: diagonal is not real");
        if (d.real() < -kDiagTol * scale)
            throw std::invalid_argument("sort_diagonal_descending: negative diagonal entry");
        diag[i] = d.real();
    }

    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(),
                     [&](int i, int j) { return diag[i] > diag[j]; });

    ComplexMatrix sorted(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            sorted(i, j) = f(perm[i], perm[j]);
    return {std::move(perm), std::move(sorted)};
}

double minimal_alpha(const ComplexMatrix& f) {
    if (!f.square())
        throw std::invalid_argument("minimal_alpha: matrix must be square");
    const int n = f.rows();
    if (n == 1)
        return 0.0;

    // suffix sums of the strict upper triangle: s[i] = sum_{j>k>=i} |f_{k,j}|
    std::vector<double> s(n + 1, 0.0);
    for (int i = n - 1; i >= 0; --i) {
        double row = 0.0;
        for (int j = i + 1; j < n; ++j)
            row += std::abs(f(i, j));
        s[i] = s[i + 1] + row;
    }

    double max_diag = 0.0;
    for (int i = 0; i < n; ++i)
        max_diag = std::max(max_diag, f(i, i).real());
    const double zero_tol = kDiagNoiseRel * max_diag;
    // accumulated round-off in a trailing block scales with its entry count
    const double mass_tol = 1e-15 * static_cast<double>(n) * n * max_diag;

    double alpha = 0.0;
    for (int i = 0; i < n - 1; ++i) {
        const double fi = f(i, i).real();
        if (fi <= zero_tol) {
            if (s[i] > mass_tol)
                throw std::invalid_argument(
                    "minimal_alpha: zero diagonal entry with positive off-diagonal mass; "
                    "no finite alpha exists");
            continue;
        }
        alpha = std::max(alpha, s[i] / fi);
    }
    return alpha;
}

A1PrimeReport check_a1_prime(const ComplexMatrix& f, double alpha) {
    if (!f.square())
        throw std::invalid_argument("check_a1_prime: matrix must be square");
    const int n = f.rows();
    double max_diag = 0.0;
    for (int i = 0; i < n; ++i)
        max_diag = std::max(max_diag, f(i, i).real());
    // debris blocks of a rank-deficient input carry round-off norms that do
    // not count as violations
    const double noise_tol = 1e-12 * max_diag;

    A1PrimeReport rep;
    rep.holds = true;
    rep.worst_margin = std::numeric_limits<double>::infinity();
    for (int i0 = 0; i0 < n; ++i0) {
        const auto parts = split_diag_offdiag(trailing_principal_submatrix(f, i0));
        const double norm_o = operator_norm(parts.second);
        const double margin = alpha * f(i0, i0).real() - norm_o;
        if (margin < rep.worst_margin) {
            rep.worst_margin = margin;
            if (margin < -noise_tol && rep.holds) {
                rep.holds = false;
                rep.worst_i0 = i0;
            }
        }
    }
    return rep;
}

std::pair<double, double> fit_power_envelope(std::span<const double> diag_sorted,
                                             std::optional<double> gamma_fixed) {
    const std::size_t n = diag_sorted.size();
    if (n == 0 || diag_sorted[0] <= 0.0)
        throw std::invalid_argument("fit_power_envelope: leading diagonal entry must be positive");

    double gamma;
    if (gamma_fixed) {
        gamma = *gamma_fixed;
    } else {
        // centered least squares of -log f_i against log i over positive entries
        std::vector<double> xs, ys;
        for (std::size_t i = 0; i < n; ++i) {
            if (diag_sorted[i] <= 0.0)
                continue;
            xs.push_back(std::log(static_cast<double>(i + 1)));
            ys.push_back(-std::log(diag_sorted[i]));
        }
        if (xs.size() < 2)
            throw std::invalid_argument(
                "fit_power_envelope: need at least 2 positive entries to fit gamma");
        double mean_x = 0.0, mean_y = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            mean_x += xs[i];
            mean_y += ys[i];
        }
        mean_x /= xs.size();
        mean_y /= ys.size();
        double sxx = 0.0, sxy = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sxx += (xs[i] - mean_x) * (xs[i] - mean_x);
            sxy += (xs[i] - mean_x) * (ys[i] - mean_y);
        }
        if (sxx <= 0.0)
            throw std::invalid_argument("fit_power_envelope: degenerate abscissae");
        gamma = sxy / sxx;
    }

    double f_plus = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        if (diag_sorted[i] > 0.0)
            f_plus = std::max(f_plus,
                              diag_sorted[i] * std::pow(static_cast<double>(i + 1), gamma));
    return {f_plus, gamma};
}

StructureReport build_structure_report(const ComplexMatrix& f,
                                       std::optional<double> gamma_fixed) {
    auto [perm, sorted] = sort_diagonal_descending(f);

    StructureReport rep;
    rep.permutation = std::move(perm);
    rep.diag_sorted.resize(sorted.rows());
    for (int i = 0; i < sorted.rows(); ++i)
        rep.diag_sorted[i] = sorted(i, i).real();
    // round-off debris on a rank-deficient diagonal reads as exact zero
    const double zero_tol =
        rep.diag_sorted.empty() ? 0.0 : kDiagNoiseRel * rep.diag_sorted.front();
    for (double& d : rep.diag_sorted)
        if (d <= zero_tol)
            d = 0.0;

    rep.alpha_min = minimal_alpha(sorted);
    auto [f_plus, gamma] = fit_power_envelope(rep.diag_sorted, gamma_fixed);
    rep.f_plus = f_plus;
    rep.gamma = gamma;
    rep.gamma_admissible = gamma > 1.0;
    rep.rho_plus = (1.0 + rep.alpha_min) * rep.f_plus;

    const SpectralSummary spec = hermitian_eigen(sorted, false);
    rep.spectral_radius = spec.eigenvalues.empty() ? 0.0 : spec.eigenvalues.front();
    rep.rho_margin = rep.rho_plus - rep.spectral_radius;
    rep.rho_certificate_ok = rep.rho_margin >= -kRhoTol * std::max(1.0, rep.rho_plus);
    return rep;
}

std::string report_to_json(const StructureReport& r) {
    nlohmann::json j;
    j["permutation"] = r.permutation;
    j["diag_sorted"] = r.diag_sorted;
    j["alpha_min"] = r.alpha_min;
    j["f_plus"] = r.f_plus;
    j["gamma"] = r.gamma;
    j["rho_plus"] = r.rho_plus;
    j["gamma_admissible"] = r.gamma_admissible;
    j["spectral_radius"] = r.spectral_radius;
    j["rho_margin"] = r.rho_margin;
    j["rho_certificate_ok"] = r.rho_certificate_ok;
    return j.dump(2);
}

}  // namespace mimo::structure
