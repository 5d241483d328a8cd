#include "sphoc/oracle_sim.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "sphoc/encoder.hpp"
#include "sphoc/error.hpp"
#include "sphoc/simd/kernels.hpp"

namespace sphoc {
namespace {

std::vector<double> gaussian_kernel(double sigma) {
    const auto radius = static_cast<std::ptrdiff_t>(std::ceil(3.0 * sigma));
    std::vector<double> weights(static_cast<std::size_t>(2 * radius + 1));
    double sum = 0.0;
    for (std::ptrdiff_t k = -radius; k <= radius; ++k) {
        const double v = std::exp(-static_cast<double>(k * k) / (2.0 * sigma * sigma));
        weights[static_cast<std::size_t>(k + radius)] = v;
        sum += v;
    }
    for (double& v : weights) v /= sum;
    return weights;
}

void blur_plane(Grid<double>& plane, const std::vector<double>& weights) {
    const std::size_t h = plane.height();
    const std::size_t w = plane.width();
    const std::size_t radius = weights.size() / 2;

    Grid<double> horizontal(h, w);
    std::vector<double> padded(w + 2 * radius);
    for (std::size_t y = 0; y < h; ++y) {
        const auto src = plane.row(y);
        std::fill(padded.begin(), padded.begin() + static_cast<std::ptrdiff_t>(radius), src.front());
        std::copy(src.begin(), src.end(), padded.begin() + static_cast<std::ptrdiff_t>(radius));
        std::fill(padded.end() - static_cast<std::ptrdiff_t>(radius), padded.end(), src.back());
        auto dst = horizontal.row(y);
        for (std::size_t k = 0; k < weights.size(); ++k)
            simd::axpy(weights[k], std::span<const double>(padded).subspan(k, w), dst);
    }

    std::fill(plane.values().begin(), plane.values().end(), 0.0);
    for (std::size_t y = 0; y < h; ++y) {
        auto dst = plane.row(y);
        for (std::size_t k = 0; k < weights.size(); ++k) {
            const auto offset = static_cast<std::ptrdiff_t>(y + k) - static_cast<std::ptrdiff_t>(radius);
            const auto src_y = static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(offset, 0, static_cast<std::ptrdiff_t>(h) - 1));
            simd::axpy(weights[k], horizontal.row(src_y), dst);
        }
    }
}

}  // namespace

void validate(const NoiseConfig& cfg) {
    if (!(cfg.blur_sigma >= 0.0) || !std::isfinite(cfg.blur_sigma))
        throw Error(ErrorCode::InvalidArgument, "blur_sigma must be a finite value >= 0");
    if (!(cfg.confusion_rate >= 0.0 && cfg.confusion_rate <= 1.0))
        throw Error(ErrorCode::InvalidArgument, "confusion_rate must lie in [0, 1]");
    if (!(cfg.background_leak >= 0.0 && cfg.background_leak <= 1.0))
        throw Error(ErrorCode::InvalidArgument, "background_leak must lie in [0, 1]");
}

void gaussian_blur(SoftPhocTensor& tensor, double sigma) {
    if (sigma <= 0.0 || tensor.height() == 0 || tensor.width() == 0) return;
    const std::vector<double> weights = gaussian_kernel(sigma);
    for (std::size_t c = 0; c < kNumClasses; ++c) {
        Grid<double> plane = tensor.channel_plane(c);
        blur_plane(plane, weights);
        tensor.set_channel_plane(c, plane);
    }
}

SoftPhocTensor corrupt(SoftPhocTensor tensor, const NoiseConfig& cfg) {
    validate(cfg);
    const bool blur = cfg.blur_sigma > 0.0;
    const bool confuse = cfg.confusion_rate > 0.0;
    const bool leak = cfg.background_leak > 0.0;
    if (!blur && !confuse && !leak) return tensor;

    gaussian_blur(tensor, cfg.blur_sigma);
    for (std::size_t y = 0; y < tensor.height(); ++y)
        for (std::size_t x = 0; x < tensor.width(); ++x) {
            auto px = tensor.pixel(y, x);
            double char_mass = 0.0;
            for (std::size_t c = 1; c < kNumClasses; ++c) char_mass += px[c];
            if (confuse) {
                const double uniform = cfg.confusion_rate * char_mass / static_cast<double>(kNumCharClasses);
                for (std::size_t c = 1; c < kNumClasses; ++c)
                    px[c] = (1.0 - cfg.confusion_rate) * px[c] + uniform;
            }
            if (leak) {
                for (std::size_t c = 1; c < kNumClasses; ++c) px[c] *= 1.0 - cfg.background_leak;
                px[kBackground.index] += cfg.background_leak * char_mass;
            }
            double total = 0.0;
            for (double v : px) total += v;
            if (total > 0.0)
                for (double& v : px) v /= total;
            else
                px[kBackground.index] = 1.0;
        }
    return tensor;
}

SoftPhocTensor simulate(const SceneAnnotation& scene, const NoiseConfig& cfg) {
    validate(cfg);
    return corrupt(embed_scene(scene), cfg);
}

}  // namespace sphoc
