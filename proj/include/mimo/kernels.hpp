// SPDX-License-Identifier: Apache-2.0
//
// Data-parallel complex kernels used by the dense matrix layer.
//
// Every kernel exists in a scalar reference form and, on x86-64 builds, an
// AVX2/FMA form. The top-level entry points dispatch once at first use:
// the AVX2 path is taken when the binary was built with it, the CPU reports
// avx2+fma, and the environment variable MIMOCAP_KERNELS is unset or "auto".
// MIMOCAP_KERNELS=scalar forces the reference path (MIMOCAP_KERNELS=avx2
// requests the vector path and falls back to scalar if unavailable).

#pragma once

#include <complex>
#include <cstddef>

namespace mimo::kernels {

using cdouble = std::complex<double>;

// y[i] += a * x[i], contiguous arrays of length n.
void axpy(cdouble a, const cdouble* x, cdouble* y, std::size_t n);

// sum_i a[i] * conj(b[i]) over contiguous arrays of length n.
cdouble cdotc(const cdouble* a, const cdouble* b, std::size_t n);

// Plane rotation with real cosine c and complex coefficient s:
//   a[i] <- c*a[i] - s*b[i]
//   b[i] <- conj(s)*a_old[i] + c*b[i]
// stride is in elements and applies to both arrays (vector path requires
// stride 1; other strides run the reference loop).
void rotate_pair(cdouble* a, cdouble* b, std::size_t n, std::ptrdiff_t stride,
                 double c, cdouble s);

// sum_i |a[i]| and sum_i |a[i]|^2 over contiguous arrays of length n.
double abs_sum(const cdouble* a, std::size_t n);
double abs2_sum(const cdouble* a, std::size_t n);

// Name of the dispatched implementation: "scalar" or "avx2".
const char* active_backend();

namespace scalar {
void axpy(cdouble a, const cdouble* x, cdouble* y, std::size_t n);
cdouble cdotc(const cdouble* a, const cdouble* b, std::size_t n);
void rotate_pair(cdouble* a, cdouble* b, std::size_t n, std::ptrdiff_t stride,
                 double c, cdouble s);
double abs_sum(const cdouble* a, std::size_t n);
double abs2_sum(const cdouble* a, std::size_t n);
}  // namespace scalar

#if defined(MIMOCAP_HAVE_AVX2)
namespace avx2 {
bool supported();  // runtime CPU check (avx2 and fma)
void axpy(cdouble a, const cdouble* x, cdouble* y, std::size_t n);
cdouble cdotc(const cdouble* a, const cdouble* b, std::size_t n);
void rotate_pair(cdouble* a, cdouble* b, std::size_t n, std::ptrdiff_t stride,
                 double c, cdouble s);
double abs_sum(const cdouble* a, std::size_t n);
double abs2_sum(const cdouble* a, std::size_t n);
}  // namespace avx2
#endif

}  // namespace mimo::kernels
