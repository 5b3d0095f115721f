// SPDX-License-Identifier: Apache-2.0
//
// AVX2/FMA variants of the complex kernels. This translation unit is the
// only one compiled with -mavx2 -mfma; callers reach it through the runtime
// dispatch in kernels.cpp. Two doubles per complex value, two complex values
// per 256-bit vector, scalar tail for odd lengths.

#include "mimo/kernels.hpp"

#if defined(MIMOCAP_HAVE_AVX2)

#include <immintrin.h>

namespace mimo::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

// [re0,im0,re1,im1] -> [im0,re0,im1,re1]
inline __m256d swap_ri(__m256d v) {
    return _mm256_permute_pd(v, 0x5);
}

// complex product of each (re,im) pair in x with the broadcast value (ar,ai)
inline __m256d cmul_broadcast(__m256d x, __m256d ar, __m256d ai) {
    return _mm256_fmaddsub_pd(x, ar, _mm256_mul_pd(swap_ri(x), ai));
}

}  // namespace

bool supported() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

void axpy(cdouble a, const cdouble* x, cdouble* y, std::size_t n) {
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    const double* px = reinterpret_cast<const double*>(x);
    double* py = reinterpret_cast<double*>(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(px + 2 * i);
        __m256d yv = _mm256_loadu_pd(py + 2 * i);
        yv = _mm256_add_pd(yv, cmul_broadcast(xv, ar, ai));
        _mm256_storeu_pd(py + 2 * i, yv);
    }
    for (; i < n; ++i)
        y[i] += a * x[i];
}

cdouble cdotc(const cdouble* a, const cdouble* b, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d av = _mm256_loadu_pd(pa + 2 * i);
        __m256d bv = _mm256_loadu_pd(pb + 2 * i);
        acc_re = _mm256_fmadd_pd(av, bv, acc_re);              // ar*br, ai*bi
        acc_im = _mm256_fmadd_pd(swap_ri(av), bv, acc_im);     // ai*br, ar*bi
    }
    double re = hsum(acc_re);
    // imag = sum(even lanes) - sum(odd lanes) of acc_im
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc_im);
    double im = (lanes[0] + lanes[2]) - (lanes[1] + lanes[3]);
    for (; i < n; ++i) {
        re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        im += a[i].imag() * b[i].real() - a[i].real() * b[i].imag();
    }
    return {re, im};
}

void rotate_pair(cdouble* a, cdouble* b, std::size_t n, std::ptrdiff_t stride,
                 double c, cdouble s) {
    if (stride != 1) {
        scalar::rotate_pair(a, b, n, stride, c, s);
        return;
    }
    const __m256d cv = _mm256_set1_pd(c);
    const __m256d sr = _mm256_set1_pd(s.real());
    const __m256d si = _mm256_set1_pd(s.imag());
    double* pa = reinterpret_cast<double*>(a);
    double* pb = reinterpret_cast<double*>(b);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d av = _mm256_loadu_pd(pa + 2 * i);
        __m256d bv = _mm256_loadu_pd(pb + 2 * i);
        __m256d sb = cmul_broadcast(bv, sr, si);  // s*b
        // conj(s)*a: even lane ar*sr + ai*si, odd lane ai*sr - ar*si
        __m256d csa = _mm256_fmsubadd_pd(av, sr, _mm256_mul_pd(swap_ri(av), si));
        _mm256_storeu_pd(pa + 2 * i, _mm256_fmsub_pd(av, cv, sb));
        _mm256_storeu_pd(pb + 2 * i, _mm256_fmadd_pd(bv, cv, csa));
    }
    if (i < n)
        scalar::rotate_pair(a + i, b + i, n - i, 1, c, s);
}

double abs_sum(const cdouble* a, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d av = _mm256_loadu_pd(pa + 2 * i);
        __m256d sq = _mm256_mul_pd(av, av);
        __m256d mag2 = _mm256_hadd_pd(sq, sq);  // duplicated |.|^2 per lane pair
        acc = _mm256_add_pd(acc, _mm256_sqrt_pd(mag2));
    }
    double sum = 0.5 * hsum(acc);  // each magnitude counted twice above
    for (; i < n; ++i)
        sum += std::abs(a[i]);
    return sum;
}

double abs2_sum(const cdouble* a, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d av = _mm256_loadu_pd(pa + 2 * i);
        acc = _mm256_fmadd_pd(av, av, acc);
    }
    double sum = hsum(acc);
    for (; i < n; ++i)
        sum += std::norm(a[i]);
    return sum;
}

}  // namespace mimo::kernels::avx2

#endif  // MIMOCAP_HAVE_AVX2
