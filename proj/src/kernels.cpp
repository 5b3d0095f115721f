// SPDX-License-Identifier: Apache-2.0

#include "mimo/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <mutex>

namespace mimo::kernels {

namespace scalar {

void axpy(cdouble a, const cdouble* x, cdouble* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        y[i] += a * x[i];
}

cdouble cdotc(const cdouble* a, const cdouble* b, std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        im += a[i].imag() * b[i].real() - a[i].real() * b[i].imag();
    }
    return {re, im};
}

void rotate_pair(cdouble* a, cdouble* b, std::size_t n, std::ptrdiff_t stride,
                 double c, cdouble s) {
    const cdouble sc = std::conj(s);
    for (std::size_t i = 0; i < n; ++i) {
        cdouble* pa = a + static_cast<std::ptrdiff_t>(i) * stride;
        cdouble* pb = b + static_cast<std::ptrdiff_t>(i) * stride;
        const cdouble ai = *pa;
        *pa = c * ai - s * (*pb);
        *pb = sc * ai + c * (*pb);
    }
}

double abs_sum(const cdouble* a, std::size_t n) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        sum += std::abs(a[i]);
    return sum;
}

double abs2_sum(const cdouble* a, std::size_t n) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        sum += std::norm(a[i]);
    return sum;
}

}  // namespace scalar

namespace {

struct Dispatch {
    void (*axpy)(cdouble, const cdouble*, cdouble*, std::size_t);
    cdouble (*cdotc)(const cdouble*, const cdouble*, std::size_t);
    void (*rotate_pair)(cdouble*, cdouble*, std::size_t, std::ptrdiff_t, double, cdouble);
    double (*abs_sum)(const cdouble*, std::size_t);
    double (*abs2_sum)(const cdouble*, std::size_t);
    const char* name;
};

constexpr Dispatch kScalar = {&scalar::axpy, &scalar::cdotc, &scalar::rotate_pair,
                              &scalar::abs_sum, &scalar::abs2_sum, "scalar"};

#if defined(MIMOCAP_HAVE_AVX2)
constexpr Dispatch kAvx2 = {&avx2::axpy, &avx2::cdotc, &avx2::rotate_pair,
                            &avx2::abs_sum, &avx2::abs2_sum, "avx2"};
#endif

Dispatch resolve() {
    const char* req = std::getenv("MIMOCAP_KERNELS");
    const bool force_scalar = req && std::strcmp(req, "scalar") == 0;
#if defined(MIMOCAP_HAVE_AVX2)
    if (!force_scalar && avx2::supported())
        return kAvx2;
#endif
    (void)force_scalar;
    return kScalar;
}

const Dispatch& table() {
    static const Dispatch d = resolve();
    return d;
}

}  // namespace

void axpy(cdouble a, const cdouble* x, cdouble* y, std::size_t n) {
    table().axpy(a, x, y, n);
}

cdouble cdotc(const cdouble* a, const cdouble* b, std::size_t n) {
    return table().cdotc(a, b, n);
}

void rotate_pair(cdouble* a, cdouble* b, std::size_t n, std::ptrdiff_t stride,
                 double c, cdouble s) {
    table().rotate_pair(a, b, n, stride, c, s);
}

double abs_sum(const cdouble* a, std::size_t n) {
    return table().abs_sum(a, n);
}

double abs2_sum(const cdouble* a, std::size_t n) {
    return table().abs2_sum(a, n);
}

const char* active_backend() {
    return table().name;
}

}  // namespace mimo::kernels
