// SPDX-License-Identifier: Apache-2.0

#include "mimo/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "mimo/eigen.hpp"

namespace mimo::bounds {

namespace {
constexpr double kLn2 = 0.69314718055994530941723212145818;
constexpr int kGridPoints = 64;
}  // namespace

const char* to_string(BoundKind kind) {
    switch (kind) {
        case BoundKind::counting_power: return "counting_power";
        case BoundKind::counting_generic: return "counting_generic";
        case BoundKind::capacity_power: return "capacity_power";
        case BoundKind::capacity_exponential: return "capacity_exponential";
        case BoundKind::diag_counting: return "diag_counting";
        case BoundKind::densta_domination: return "densta_domination";
    }
    return "unknown";
}

std::string report_to_json(const BoundReport& r) {
    nlohmann::json j;
    j["kind"] = to_string(r.kind);
    j["applicable"] = r.applicable;
    j["holds"] = r.holds;
    j["worst_margin"] = r.worst_margin;
    j["checked_points"] = r.checked_points;
    return j.dump(2);
}

double counting_bound_power(double x, int m, double rho_plus, double gamma) {
    if (x <= 0.0)
        throw std::invalid_argument("counting_bound_power: x must be positive");
    if (m < 1 || rho_plus <= 0.0 || gamma <= 0.0)
        throw std::invalid_argument("counting_bound_power: invalid parameters");
    return std::min(static_cast<double>(m), std::pow(rho_plus / x, 1.0 / gamma));
}

Envelope power_envelope(double f_plus, double gamma) {
    if (f_plus <= 0.0 || gamma <= 0.0)
        throw std::invalid_argument("power_envelope: constants must be positive");
    return {[=](double t) { return f_plus * std::pow(t, -gamma); },
            [=](double y) { return std::pow(f_plus / y, 1.0 / gamma); }};
}

Envelope exponential_envelope(double f_plus, double gamma) {
    if (f_plus <= 0.0 || gamma <= 0.0)
        throw std::invalid_argument("exponential_envelope: constants must be positive");
    return {[=](double t) { return f_plus * std::exp(-gamma * (t - 1.0)); },
            [=](double y) { return 1.0 + std::log(f_plus / y) / gamma; }};
}

double counting_bound_generic(double x, int m, double alpha, const Envelope& env) {
    if (x <= 0.0)
        throw std::invalid_argument("counting_bound_generic: x must be positive");
    if (m < 1 || alpha < 0.0)
        throw std::invalid_argument("counting_bound_generic: invalid parameters");
    const double y = x / (1.0 + alpha);
    if (y > env.value(1.0))
        return 0.0;
    return std::min(static_cast<double>(m), env.inverse(y));
}

double capacity_bound_power(int m, double kappa, double rho_plus, double gamma) {
    if (m < 1 || kappa <= 0.0 || rho_plus <= 0.0)
        throw std::invalid_argument("capacity_bound_power: invalid parameters");
    if (gamma <= 1.0)
        throw std::invalid_argument(
            "capacity_bound_power: requires gamma > 1; use the exponential or generic bound");
    const double inv_gamma = 1.0 / gamma;
    return std::pow(kappa * rho_plus, inv_gamma) / kLn2 *
           std::pow(static_cast<double>(m), inv_gamma) *
           (gamma / (gamma - 1.0) + std::log1p(kappa * rho_plus * m));
}

double capacity_bound_exponential(int m, double kappa, double rho_plus, double gamma,
                                  bool squared_log) {
    if (m < 1 || kappa <= 0.0 || rho_plus <= 0.0 || gamma <= 0.0)
        throw std::invalid_argument("capacity_bound_exponential: invalid parameters");
    const double big_l = std::log1p(kappa * rho_plus * m);
    const double last = squared_log ? big_l * big_l / gamma : 2.0 * big_l / gamma;
    return (1.0 / gamma + big_l + last) / kLn2;
}

BoundReport verify_counting_bound(std::span<const double> fading_eigs,
                                  const structure::StructureReport& report) {
    BoundReport rep;
    rep.kind = BoundKind::counting_power;
    if (report.gamma <= 0.0 || report.rho_plus <= 0.0) {
        rep.applicable = false;
        return rep;
    }
    const int m = static_cast<int>(fading_eigs.size());
    const double rho = fading_eigs.empty() ? 0.0 : std::max(0.0, fading_eigs.front());
    const double eps = 1e-9 * std::max(1.0, rho);

    std::vector<double> xs;
    for (double eig : fading_eigs)
        if (eig - eps > 0.0)
            xs.push_back(eig - eps);
    if (report.rho_plus > eps) {
        const double lo = eps;
        const double hi = report.rho_plus;
        for (int i = 0; i < kGridPoints; ++i)
            xs.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (kGridPoints - 1)));
    }

    rep.worst_margin = std::numeric_limits<double>::infinity();
    for (double x : xs) {
        const double bound = counting_bound_power(x, m, report.rho_plus, report.gamma);
        const double actual = counting_function(fading_eigs, x);
        rep.worst_margin = std::min(rep.worst_margin, bound - actual);
        ++rep.checked_points;
    }
    if (rep.checked_points == 0)
        rep.worst_margin = 0.0;
    rep.holds = rep.worst_margin >= -kVerificationTol;
    return rep;
}

BoundReport verify_counting_bound_generic(std::span<const double> fading_eigs, int m,
                                          double alpha, const Envelope& env,
                                          double grid_hi) {
    BoundReport rep;
    rep.kind = BoundKind::counting_generic;
    const double rho = fading_eigs.empty() ? 0.0 : std::max(0.0, fading_eigs.front());
    const double eps = 1e-9 * std::max(1.0, rho);

    std::vector<double> xs;
    for (double eig : fading_eigs)
        if (eig - eps > 0.0)
            xs.push_back(eig - eps);
    if (grid_hi > eps) {
        for (int i = 0; i < kGridPoints; ++i)
            xs.push_back(eps * std::pow(grid_hi / eps, static_cast<double>(i) / (kGridPoints - 1)));
    }

    rep.worst_margin = std::numeric_limits<double>::infinity();
    for (double x : xs) {
        const double bound = counting_bound_generic(x, m, alpha, env);
        const double actual = counting_function(fading_eigs, x);
        rep.worst_margin = std::min(rep.worst_margin, bound - actual);
        ++rep.checked_points;
    }
    if (rep.checked_points == 0)
        rep.worst_margin = 0.0;
    rep.holds = rep.worst_margin >= -kVerificationTol;
    return rep;
}

BoundReport verify_densta_domination(const ComplexMatrix& f_sorted, double alpha) {
    if (!f_sorted.square())
        throw std::invalid_argument("verify_densta_domination: matrix must be square");
    if (alpha < 0.0)
        throw std::invalid_argument("verify_densta_domination: alpha must be nonnegative");

    const SpectralSummary spec = hermitian_eigen(f_sorted, false);
    const int n = f_sorted.rows();
    std::vector<double> diag(n);
    for (int i = 0; i < n; ++i)
        diag[i] = f_sorted(i, i).real();

    std::vector<double> brk = spec.eigenvalues;
    for (double d : diag)
        brk.push_back((1.0 + alpha) * d);
    double scale = 0.0;
    for (double b : brk)
        scale = std::max(scale, std::abs(b));

    // Probes stay above the round-off floor: in rank-deficient inputs both
    // step functions jump at uncorrelated 1e-16-scale debris values where an
    // integer count comparison is meaningless.
    const double floor = 1e-12 * scale;
    std::vector<double> xs;
    for (double x : step_function_probe_points(brk, scale))
        if (x >= floor)
            xs.push_back(x);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    BoundReport rep;
    rep.kind = BoundKind::densta_domination;
    rep.worst_margin = std::numeric_limits<double>::infinity();
    for (double x : xs) {
        const int lhs = counting_function(spec.eigenvalues, x);
        const int rhs = counting_function(diag, x / (1.0 + alpha));
        rep.worst_margin = std::min(rep.worst_margin, static_cast<double>(rhs - lhs));
        ++rep.checked_points;
    }
    if (rep.checked_points == 0)
        rep.worst_margin = 0.0;
    rep.holds = rep.worst_margin >= -kVerificationTol;
    return rep;
}

BoundReport verify_capacity_bound(double capacity_bits,
                                  const structure::StructureReport& report, double kappa,
                                  int m) {
    BoundReport rep;
    rep.kind = BoundKind::capacity_power;
    if (!report.gamma_admissible) {
        rep.applicable = false;
        return rep;
    }
    const double bound = capacity_bound_power(m, kappa, report.rho_plus, report.gamma);
    rep.worst_margin = bound - capacity_bits;
    rep.checked_points = 1;
    rep.holds = rep.worst_margin >= -kVerificationTol * std::max(1.0, std::abs(bound));
    return rep;
}

BoundReport verify_capacity_bound_exponential(double capacity_bits, double alpha,
                                              double f_plus, double gamma, double kappa,
                                              int m) {
    BoundReport rep;
    rep.kind = BoundKind::capacity_exponential;
    const double rho_plus = (1.0 + alpha) * f_plus;
    const double bound = capacity_bound_exponential(m, kappa, rho_plus, gamma);
    rep.worst_margin = bound - capacity_bits;
    rep.checked_points = 1;
    rep.holds = rep.worst_margin >= -kVerificationTol * std::max(1.0, std::abs(bound));
    return rep;
}

BoundReport verify_diag_counting_bound(std::span<const double> diag_sorted, double f_plus,
                                       double gamma) {
    BoundReport rep;
    rep.kind = BoundKind::diag_counting;
    if (f_plus <= 0.0 || gamma <= 0.0) {
        rep.applicable = false;
        return rep;
    }
    const int m = static_cast<int>(diag_sorted.size());
    const double scale = diag_sorted.empty() ? 0.0 : std::abs(diag_sorted.front());
    const double eps = 1e-9 * std::max(1.0, scale);

    rep.worst_margin = std::numeric_limits<double>::infinity();
    for (double d : diag_sorted) {
        for (double x : {d - eps, d + eps}) {
            if (x <= 0.0)
                continue;
            const double bound =
                std::min(static_cast<double>(m), std::pow(f_plus / x, 1.0 / gamma));
            const double actual = counting_function(diag_sorted, x);
            rep.worst_margin = std::min(rep.worst_margin, bound - actual);
            ++rep.checked_points;
        }
    }
    if (rep.checked_points == 0)
        rep.worst_margin = 0.0;
    rep.holds = rep.worst_margin >= -kVerificationTol;
    return rep;
}

}  // namespace mimo::bounds
