#pragma once

#include <cstdint>

#include "sphoc/annotation.hpp"
#include "sphoc/tensor.hpp"

namespace sphoc {

/// Corruption applied to a ground-truth embedding to mimic network output.
struct NoiseConfig {
    double blur_sigma = 0.0;      // pixels
    double confusion_rate = 0.0;  // share of character mass spread uniformly over 37 classes
    double background_leak = 0.0; // share of character mass moved to background
    std::uint64_t seed = 0;
};

/// Throws Error{InvalidArgument} on out-of-range fields.
void validate(const NoiseConfig& cfg);

/// Applies blur, confusion and leak in that order, then renormalizes. Stages
/// whose parameter is zero are skipped, so an all-zero config returns the
/// input unchanged.
SoftPhocTensor corrupt(SoftPhocTensor tensor, const NoiseConfig& cfg);

/// embed_scene followed by corrupt.
SoftPhocTensor simulate(const SceneAnnotation& scene, const NoiseConfig& cfg);

/// Separable Gaussian blur of every channel, edges clamped. Kernel radius ceil(3 sigma).
void gaussian_blur(SoftPhocTensor& tensor, double sigma);

}  // namespace sphoc
