// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mimo/complex_matrix.hpp"

namespace mimo::structure {

// Diagonal entries below this fraction of the largest one are treated as
// numerically zero. Rank-deficient fading matrices carry round-off debris of
// order 1e-16 relative in place of exact zeros; genuine spectrum values at
// working scale sit many orders above this floor.
inline constexpr double kDiagNoiseRel = 1e-13;

// Structural certificate for a fading matrix with the diagonal sorted in
// decreasing order: the minimal off-diagonal dominance constant alpha, the
// power-law envelope f_plus * i^-gamma covering the diagonal, and the
// implied spectral-radius surrogate rho_plus = (1 + alpha) * f_plus.
struct StructureReport {
    std::vector<int> permutation;  // sorted position -> original index (0-based)
    std::vector<double> diag_sorted;
    double alpha_min = 0.0;
    double f_plus = 0.0;
    double gamma = 0.0;
    double rho_plus = 0.0;
    bool gamma_admissible = false;  // gamma > 1
    double spectral_radius = 0.0;
    double rho_margin = 0.0;         // rho_plus - spectral_radius
    bool rho_certificate_ok = false;  // rho_margin >= -tol
};

// Symmetric permutation P F P^T putting the (real, nonnegative) diagonal in
// non-increasing order; ties keep their original relative order. Returns the
// permutation (sorted position -> original index) and the permuted matrix.
std::pair<std::vector<int>, ComplexMatrix> sort_diagonal_descending(const ComplexMatrix& f);

// Smallest alpha such that sum_{j>k>=i} |f_{k,j}| <= alpha * f_i for every
// i = 1..M-1 (diagonal sorted non-increasing). Computed with suffix sums in
// O(M^2). Throws if some f_i = 0 has positive off-diagonal mass below it
// (no finite alpha exists); returns 0 for M = 1.
double minimal_alpha(const ComplexMatrix& f);

struct A1PrimeReport {
    bool holds = false;
    int worst_i0 = -1;          // first violating i0, or -1
    double worst_margin = 0.0;  // min over i0 of alpha*f_{i0+1} - ||offdiag block||
};

// For each i0, checks that the off-diagonal part of the trailing submatrix
// starting at i0 has operator norm at most alpha * f_{i0+1}.
A1PrimeReport check_a1_prime(const ComplexMatrix& f, double alpha);

// Envelope fit f_i <= f_plus * i^-gamma over a non-increasing diagonal.
// With gamma fixed, f_plus is the minimal admissible constant. With gamma
// free, gamma is the least-squares slope of -log f_i against log i over the
// positive entries and f_plus is then minimized; the certificate holds at
// every index with equality at the argmax.
std::pair<double, double> fit_power_envelope(std::span<const double> diag_sorted,
                                             std::optional<double> gamma_fixed);

// Full pipeline: sort diagonal, minimal alpha, envelope fit, rho_plus, and
// the rho_plus >= spectral radius certificate with its margin.
StructureReport build_structure_report(const ComplexMatrix& f,
                                       std::optional<double> gamma_fixed);

std::string report_to_json(const StructureReport& r);

}  // namespace mimo::structure
