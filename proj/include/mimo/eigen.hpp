// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mimo/complex_matrix.hpp"

namespace mimo {

struct JacobiOptions {
    int max_sweeps = 100;
    double convergence_tol = 1e-12;  // off-diagonal Frobenius mass vs ||A||_F
};

// Eigendecomposition of a Hermitian matrix. Eigenvalues are real and sorted
// non-increasing; when requested, eigenvectors are the columns of a unitary
// matrix ordered to match.
struct SpectralSummary {
    std::vector<double> eigenvalues;
    std::optional<ComplexMatrix> eigenvectors;
    double max_residual = 0.0;  // max_i ||A v_i - lambda_i v_i||_2 when vectors
                                // are present, else the final off-diagonal mass
    int iterations = 0;         // sweeps used
};

// Cyclic Jacobi eigensolver for dense Hermitian matrices. Sweeps the upper
// triangle in row order, each rotation annihilating one off-diagonal pair;
// stops when the off-diagonal Frobenius mass drops below
// convergence_tol * ||A||_F. Throws std::invalid_argument for non-square or
// non-Hermitian input and std::runtime_error when max_sweeps is exhausted
// (the message carries the achieved off-diagonal mass). Deterministic for
// identical input.
SpectralSummary hermitian_eigen(const ComplexMatrix& a, bool want_vectors,
                                const JacobiOptions& opts = {});

// Number of eigenvalues strictly greater than x. eigs must be sorted
// non-increasing; right-continuous non-increasing step function of x.
int counting_function(std::span<const double> eigs, double x);

// max_i |lambda_i| of a Hermitian matrix, computed spectrally.
double operator_norm(const ComplexMatrix& a);

struct InterlacingReport {
    bool holds = false;
    double worst_margin = 0.0;  // min over samples of n_A + N(x;B) - N(x;M)
    int checked_points = 0;
};

// Checks N(x;M) <= n_A + N(x;B) for the partition of a Hermitian matrix into
// a leading n_A block and the trailing block B. Both sides are
// right-continuous step functions whose breakpoints are the two spectra, so
// sampling just below every breakpoint plus the midpoints between
// consecutive breakpoints certifies the inequality for all real x.
InterlacingReport check_interlacing_counting(const ComplexMatrix& mfull, int n_a);

// Sample set for comparing step functions with the given breakpoints:
// every breakpoint minus eps_rel, midpoints of consecutive distinct
// breakpoints, and a point beyond each end. eps_rel = 1e-9 * max(1, scale).
std::vector<double> step_function_probe_points(std::span<const double> breakpoints,
                                               double scale);

}  // namespace mimo
