// SPDX-License-Identifier: Apache-2.0

#include "mimo/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "mimo/eigen.hpp"

namespace mimo::capacity {

namespace {

constexpr double kLn2 = 0.69314718055994530941723212145818;
constexpr double kNegClampTol = 1e-12;

// PSD spectra may carry round-off negatives; clamp within tolerance of the
// spectral scale and reject anything worse.
std::vector<double> clamped_nonnegative(std::span<const double> values, const char* what) {
    double scale = 0.0;
    for (double v : values)
        scale = std::max(scale, std::abs(v));
    std::vector<double> out(values.begin(), values.end());
    for (double& v : out) {
        if (v < 0.0) {
            if (v < -kNegClampTol * std::max(1.0, scale))
                throw std::invalid_argument(std::string(what) +
                                            ": negative value beyond round-off tolerance");
            v = 0.0;
        }
    }
    return out;
}

}  // namespace

CapacityResult capacity_logdet(const ComplexMatrix& h, double kappa) {
    if (!h.square())
        throw std::invalid_argument("capacity_logdet: H must be square");
    if (kappa <= 0.0)
        throw std::invalid_argument("capacity_logdet: kappa must be positive");
    const int m = h.rows();
    const SpectralSummary s = hermitian_eigen(gram(h), false);
    const std::vector<double> nu = clamped_nonnegative(s.eigenvalues, "capacity_logdet");
    double bits = 0.0;
    for (double v : nu)
        bits += std::log1p(kappa / m * v) / kLn2;
    return {bits, kappa, m, Form::logdet};
}

CapacityResult capacity_from_singular_values(std::span<const double> mu, double kappa, int m) {
    if (kappa <= 0.0)
        throw std::invalid_argument("capacity_from_singular_values: kappa must be positive");
    if (static_cast<int>(mu.size()) != m)
        throw std::invalid_argument("capacity_from_singular_values: need M singular values");
    double bits = 0.0;
    for (double v : mu) {
        if (v < 0.0)
            throw std::invalid_argument("capacity_from_singular_values: negative singular value");
        bits += std::log1p(kappa / m * v * v) / kLn2;
    }
    return {bits, kappa, m, Form::singular_sum};
}

CapacityResult capacity_from_fading_eigs(std::span<const double> lambda, double kappa, int m) {
    if (kappa <= 0.0)
        throw std::invalid_argument("capacity_from_fading_eigs: kappa must be positive");
    if (static_cast<int>(lambda.size()) != m)
        throw std::invalid_argument("capacity_from_fading_eigs: need M eigenvalues");
    const std::vector<double> eigs = clamped_nonnegative(lambda, "capacity_from_fading_eigs");
    double bits = 0.0;
    for (double v : eigs)
        bits += std::log1p(kappa * m * v) / kLn2;
    return {bits, kappa, m, Form::fading_sum};
}

CapacityResult capacity_from_counting_integral(std::span<const double> lambda, double kappa,
                                               int m) {
    if (kappa <= 0.0)
        throw std::invalid_argument("capacity_from_counting_integral: kappa must be positive");
    if (static_cast<int>(lambda.size()) != m)
        throw std::invalid_argument("capacity_from_counting_integral: need M eigenvalues");
    std::vector<double> eigs = clamped_nonnegative(lambda, "capacity_from_counting_integral");
    std::sort(eigs.begin(), eigs.end());  // ascending

    // On (eigs[i-1], eigs[i]) the counting function equals n-i+1 (1-based i),
    // so the integral of N(x)/(1+kappa M x) accumulates interval by interval:
    //   (n-i+1) * [ln(1+kM*eigs[i]) - ln(1+kM*eigs[i-1])] / (kM)
    // and the capacity is kappa M / ln2 times the total.
    const double km = kappa * m;
    const int n = static_cast<int>(eigs.size());
    double integral_km = 0.0;  // integral scaled by kappa M
    double prev_log = 0.0;     // ln(1 + kM * 0)
    for (int i = 1; i <= n; ++i) {
        const double cur_log = std::log1p(km * eigs[i - 1]);
        integral_km += (n - i + 1) * (cur_log - prev_log);
        prev_log = cur_log;
    }
    return {integral_km / kLn2, kappa, m, Form::counting_integral};
}

}  // namespace mimo::capacity
