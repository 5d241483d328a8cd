#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace sphoc::simd {

// Inner loops with a scalar reference and optional vector variants. All
// element-wise kernels are bit-identical across variants; `dot` may differ in
// the last bits because its reduction order differs.
struct Kernels {
    std::string_view name;

    double (*dot)(const double* a, const double* b, std::size_t n);
    // out[i] += a[i] * b[i]
    void (*multiply_accumulate)(const double* a, const double* b, double* out, std::size_t n);
    // out[i] += w * x[i]
    void (*axpy)(double w, const double* x, double* out, std::size_t n);
    // out[i] = v[i] >= t
    void (*threshold_ge)(const double* v, double t, std::uint8_t* out, std::size_t n);
    // out[i] = floor(((x * cos_t[i] + y * sin_t[i]) + offset) * inv_res + 0.5)
    void (*hough_bins)(double x, double y, const double* cos_t, const double* sin_t, double offset,
                       double inv_res, std::int32_t* out, std::size_t n);
};

const Kernels& scalar_kernels() noexcept;

/// nullptr unless AVX2 kernels were built and the CPU supports them.
const Kernels* avx2_kernels() noexcept;

/// Best available variant. SPHOC_SIMD=scalar forces the reference kernels.
const Kernels& active() noexcept;

inline double dot(std::span<const double> a, std::span<const double> b) {
    return active().dot(a.data(), b.data(), a.size());
}
inline void multiply_accumulate(std::span<const double> a, std::span<const double> b, std::span<double> out) {
    active().multiply_accumulate(a.data(), b.data(), out.data(), out.size());
}
inline void axpy(double w, std::span<const double> x, std::span<double> out) {
    active().axpy(w, x.data(), out.data(), out.size());
}
inline void threshold_ge(std::span<const double> v, double t, std::span<std::uint8_t> out) {
    active().threshold_ge(v.data(), t, out.data(), out.size());
}

}  // namespace sphoc::simd
