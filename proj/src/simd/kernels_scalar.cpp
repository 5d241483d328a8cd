#include <cmath>

#include "sphoc/simd/kernels.hpp"

namespace sphoc::simd {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += a[i] * b[i];
    return sum;
}

void multiply_accumulate_scalar(const double* a, const double* b, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] += a[i] * b[i];
}

void axpy_scalar(double w, const double* x, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] += w * x[i];
}

void threshold_ge_scalar(const double* v, double t, std::uint8_t* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = v[i] >= t ? 1 : 0;
}

void hough_bins_scalar(double x, double y, const double* cos_t, const double* sin_t, double offset,
                       double inv_res, std::int32_t* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double rho = x * cos_t[i] + y * sin_t[i];
        out[i] = static_cast<std::int32_t>(std::floor((rho + offset) * inv_res + 0.5));
    }
}

}  // namespace

const Kernels& scalar_kernels() noexcept {
    static constexpr Kernels table{
        "scalar",          dot_scalar,          multiply_accumulate_scalar,
        axpy_scalar,       threshold_ge_scalar, hough_bins_scalar,
    };
    return table;
}

}  // namespace sphoc::simd
