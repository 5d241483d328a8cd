#include <immintrin.h>

#include <cmath>

#include "sphoc/simd/kernels.hpp"

namespace sphoc::simd {
namespace detail {

namespace {

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
        acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4)));
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    acc0 = _mm256_add_pd(acc0, acc1);
    const __m128d lo = _mm256_castpd256_pd128(acc0);
    const __m128d hi = _mm256_extractf128_pd(acc0, 1);
    const __m128d pair = _mm_add_pd(lo, hi);
    double sum = _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
    for (; i < n; ++i) sum += a[i] * b[i];
    return sum;
}

void multiply_accumulate_avx2(const double* a, const double* b, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(out + i), prod));
    }
    for (; i < n; ++i) out[i] += a[i] * b[i];
}

void axpy_avx2(double w, const double* x, double* out, std::size_t n) {
    const __m256d wv = _mm256_set1_pd(w);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d prod = _mm256_mul_pd(wv, _mm256_loadu_pd(x + i));
        _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(out + i), prod));
    }
    for (; i < n; ++i) out[i] += w * x[i];
}

void threshold_ge_avx2(const double* v, double t, std::uint8_t* out, std::size_t n) {
    const __m256d tv = _mm256_set1_pd(t);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const int bits = _mm256_movemask_pd(_mm256_cmp_pd(_mm256_loadu_pd(v + i), tv, _CMP_GE_OQ));
        out[i] = bits & 1;
        out[i + 1] = (bits >> 1) & 1;
        out[i + 2] = (bits >> 2) & 1;
        out[i + 3] = (bits >> 3) & 1;
    }
    for (; i < n; ++i) out[i] = v[i] >= t ? 1 : 0;
}

void hough_bins_avx2(double x, double y, const double* cos_t, const double* sin_t, double offset,
                     double inv_res, std::int32_t* out, std::size_t n) {
    const __m256d xv = _mm256_set1_pd(x);
    const __m256d yv = _mm256_set1_pd(y);
    const __m256d off = _mm256_set1_pd(offset);
    const __m256d scale = _mm256_set1_pd(inv_res);
    const __m256d half = _mm256_set1_pd(0.5);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d rho = _mm256_add_pd(_mm256_mul_pd(xv, _mm256_loadu_pd(cos_t + i)),
                                    _mm256_mul_pd(yv, _mm256_loadu_pd(sin_t + i)));
        rho = _mm256_add_pd(_mm256_mul_pd(_mm256_add_pd(rho, off), scale), half);
        const __m128i idx = _mm256_cvttpd_epi32(_mm256_floor_pd(rho));
        _mm_storeu_si128(reinterpret_cast<__m128i*>(out + i), idx);
    }
    for (; i < n; ++i) {
        const double rho = x * cos_t[i] + y * sin_t[i];
        out[i] = static_cast<std::int32_t>(std::floor((rho + offset) * inv_res + 0.5));
    }
}

}  // namespace

const Kernels& avx2_table() noexcept {
    static constexpr Kernels table{
        "avx2",         dot_avx2,          multiply_accumulate_avx2,
        axpy_avx2,      threshold_ge_avx2, hough_bins_avx2,
    };
    return table;
}

}  // namespace detail
}  // namespace sphoc::simd
