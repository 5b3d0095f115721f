// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>

#include "mimo/complex_matrix.hpp"

namespace mimo::capacity {

enum class Form { logdet, singular_sum, fading_sum, counting_integral };

struct CapacityResult {
    double bits = 0.0;   // per channel use at fixed frequency
    double kappa = 0.0;  // SNR ratio E_S / nu_0
    int m = 0;           // system size
    Form form = Form::logdet;
};

// log2 det(I + (kappa/M) H H^*), evaluated through the eigenvalues of the
// Hermitian Gram matrix as a sum of log2(1 + .) terms, never as a raw
// determinant product.
CapacityResult capacity_logdet(const ComplexMatrix& h, double kappa);

// sum_i log2(1 + (kappa/M) mu_i^2) over the singular values of H.
CapacityResult capacity_from_singular_values(std::span<const double> mu, double kappa, int m);

// sum_i log2(1 + kappa M lambda_i) over the eigenvalues of the fading
// matrix; equals the singular-value form when lambda_i = mu_i^2 / M^2.
// Round-off negatives in [-1e-12 * max|lambda|, 0) are clamped to zero.
CapacityResult capacity_from_fading_eigs(std::span<const double> lambda, double kappa, int m);

// Same quantity evaluated through the eigenvalue counting function:
// (kappa M / ln 2) * integral of N(x)/(1 + kappa M x) over (0, max lambda],
// computed exactly interval by interval from the step structure of N. A
// structural check of the integral identity, not a numerical quadrature.
CapacityResult capacity_from_counting_integral(std::span<const double> lambda, double kappa,
                                               int m);

}  // namespace mimo::capacity
