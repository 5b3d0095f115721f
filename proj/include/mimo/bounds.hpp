// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <span>
#include <string>

#include "mimo/complex_matrix.hpp"
#include "mimo/structure.hpp"

namespace mimo::bounds {

inline constexpr double kVerificationTol = 1e-9;

enum class BoundKind {
    counting_power,
    counting_generic,
    capacity_power,
    capacity_exponential,
    diag_counting,
    densta_domination,
};

const char* to_string(BoundKind kind);

struct BoundReport {
    BoundKind kind = BoundKind::counting_power;
    bool applicable = true;  // false when the hypotheses gate the check off
    bool holds = false;
    double worst_margin = 0.0;  // min over checked points of bound - actual
    int checked_points = 0;
};

std::string report_to_json(const BoundReport& r);

// min(M, rho_plus^{1/gamma} x^{-1/gamma}) for x > 0.
double counting_bound_power(double x, int m, double rho_plus, double gamma);

// Continuous decreasing envelope f on [1, inf) together with its inverse.
struct Envelope {
    std::function<double(double)> value;    // f(t)
    std::function<double(double)> inverse;  // f^{-1}(y), y in (0, f(1)]
};

Envelope power_envelope(double f_plus, double gamma);
Envelope exponential_envelope(double f_plus, double gamma);  // f_plus e^{-gamma(t-1)}

// min(M, f^{-1}(x / (1+alpha))) for x > 0; by convention 0 when the scaled
// argument exceeds f(1) (no index can exceed the envelope start).
double counting_bound_generic(double x, int m, double alpha, const Envelope& env);

// (kappa rho_plus)^{1/gamma} / ln2 * M^{1/gamma}
//   * (gamma/(gamma-1) + ln(1 + kappa rho_plus M)), gamma > 1 strictly.
double capacity_bound_power(int m, double kappa, double rho_plus, double gamma);

// Capacity bound for exponentially decaying diagonals:
//   [1/gamma + L + L^2/gamma] / ln2 with L = ln(1 + kappa rho_plus M).
// The squared-log form is the default; squared_log=false selects the
// alternative reading ln((1+kappa rho_plus M)^2) = 2L of the final term,
// which is strictly smaller for L > 2 and fails against exact exponential
// diagonals at moderate M, so it is exposed for comparison only.
double capacity_bound_exponential(int m, double kappa, double rho_plus, double gamma,
                                  bool squared_log = true);

// Checks N(x;F) <= counting_bound_power at every eigenvalue breakpoint minus
// eps and on a 64-point geometric grid over (eps, rho_plus]. Counting margins
// are integers against reals; tolerance is absolute. Marked inapplicable when
// the fitted gamma is not positive.
BoundReport verify_counting_bound(std::span<const double> fading_eigs,
                                  const structure::StructureReport& report);

// Same check against a generic envelope with explicit constants.
BoundReport verify_counting_bound_generic(std::span<const double> fading_eigs, int m,
                                          double alpha, const Envelope& env,
                                          double grid_hi);

// Checks N(x;F) <= N(x/(1+alpha); F_D) for all x >= 0 by sampling both step
// functions' breakpoints and midpoints. F must have its diagonal sorted
// non-increasing and alpha must be at least the minimal dominance constant.
BoundReport verify_densta_domination(const ComplexMatrix& f_sorted, double alpha);

// Checks C_M <= capacity_bound_power to relative tolerance; inapplicable
// when gamma <= 1.
BoundReport verify_capacity_bound(double capacity_bits,
                                  const structure::StructureReport& report, double kappa,
                                  int m);

// Checks C_M against the exponential-envelope capacity bound.
BoundReport verify_capacity_bound_exponential(double capacity_bits, double alpha,
                                              double f_plus, double gamma, double kappa,
                                              int m);

// Checks #{i : f_i > x} <= min(M, f_plus^{1/gamma} x^{-1/gamma}) at
// x = f_i -/+ eps over the sorted diagonal.
BoundReport verify_diag_counting_bound(std::span<const double> diag_sorted, double f_plus,
                                       double gamma);

}  // namespace mimo::bounds
