#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "sphoc/simd/kernels.hpp"

namespace sphoc::simd {
namespace {

std::vector<const Kernels*> variants() {
    std::vector<const Kernels*> out;
    if (const Kernels* k = avx2_kernels()) out.push_back(k);
    return out;
}

std::vector<double> random_values(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    std::vector<double> v(n);
    for (double& x : v) x = dist(rng);
    return v;
}

TEST(Simd, ActiveIsAKnownVariant) {
    const Kernels& k = active();
    EXPECT_TRUE(&k == &scalar_kernels() || &k == avx2_kernels());
}

TEST(Simd, VectorVariantsMatchScalar) {
    const auto vs = variants();
    if (vs.empty()) GTEST_SKIP() << "no vector kernels on this machine";
    const Kernels& ref = scalar_kernels();
    std::mt19937_64 rng(100);
    for (const Kernels* k : vs) {
        // Lengths cover empty, sub-register and tail cases.
        for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 37u, 38u, 180u, 1001u}) {
            const auto a = random_values(rng, n);
            const auto b = random_values(rng, n);
            EXPECT_NEAR(k->dot(a.data(), b.data(), n), ref.dot(a.data(), b.data(), n), 1e-12 * (1.0 + n)) << n;

            auto out_ref = random_values(rng, n);
            auto out_vec = out_ref;
            ref.multiply_accumulate(a.data(), b.data(), out_ref.data(), n);
            k->multiply_accumulate(a.data(), b.data(), out_vec.data(), n);
            EXPECT_EQ(out_vec, out_ref) << n;

            ref.axpy(0.37, a.data(), out_ref.data(), n);
            k->axpy(0.37, a.data(), out_vec.data(), n);
            EXPECT_EQ(out_vec, out_ref) << n;

            std::vector<std::uint8_t> m_ref(n), m_vec(n);
            auto v = a;
            if (n > 2) v[2] = 0.5;  // exact hit on the threshold
            ref.threshold_ge(v.data(), 0.5, m_ref.data(), n);
            k->threshold_ge(v.data(), 0.5, m_vec.data(), n);
            EXPECT_EQ(m_vec, m_ref) << n;
        }
    }
}

TEST(Simd, HoughBinsMatchScalar) {
    const auto vs = variants();
    if (vs.empty()) GTEST_SKIP() << "no vector kernels on this machine";
    std::vector<double> cos_t(180), sin_t(180);
    for (int k = 0; k < 180; ++k) {
        cos_t[k] = std::cos(k * M_PI / 180.0);
        sin_t[k] = std::sin(k * M_PI / 180.0);
    }
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> pos(0.0, 640.0);
    for (const Kernels* k : vs)
        for (int trial = 0; trial < 200; ++trial) {
            const double x = std::floor(pos(rng)) + 0.5;
            const double y = std::floor(pos(rng)) + 0.5;
            for (double res : {1.0, 0.5, 2.0}) {
                std::vector<std::int32_t> a(180), b(180);
                scalar_kernels().hough_bins(x, y, cos_t.data(), sin_t.data(), 905.0, 1.0 / res, a.data(), 180);
                k->hough_bins(x, y, cos_t.data(), sin_t.data(), 905.0, 1.0 / res, b.data(), 180);
                EXPECT_EQ(a, b);
            }
        }
}

TEST(Simd, ScalarReference) {
    const double a[] = {1, 2, 3};
    const double b[] = {4, 5, 6};
    EXPECT_EQ(scalar_kernels().dot(a, b, 3), 32.0);
    std::int32_t bins[1];
    const double c[] = {1.0}, s[] = {0.0};
    scalar_kernels().hough_bins(2.5, 7.5, c, s, 10.0, 1.0, bins, 1);
    EXPECT_EQ(bins[0], 13);  // floor(12.5 + 0.5)
}

}  // namespace
}  // namespace sphoc::simd
