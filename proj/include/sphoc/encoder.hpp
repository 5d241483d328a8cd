#pragma once

#include <cstddef>
#include <string_view>

#include "sphoc/annotation.hpp"
#include "sphoc/tensor.hpp"

namespace sphoc {

/// Pixel columns [lower, upper) influenced by character `position` at pyramid `level`.
struct CharRegion {
    std::size_t position = 0;
    std::size_t level = 0;
    std::size_t lower = 0;
    std::size_t upper = 0;
};

/// Character p (1-based) spans [(p-1)/n, p/n] of the word; that span is snapped
/// outward to the level's bin edges and the edges are rounded half-up to columns.
/// Requires 1 <= p <= n, 1 <= level <= n, width >= n; throws Error{InvalidIndex}.
CharRegion char_region_bounds(std::size_t position, std::size_t length, std::size_t level,
                              std::size_t width);

/// Soft-PHOC of a rectified word crop: per-level histograms summed, then
/// L1-normalized over the 37 character channels. Background stays 0.
/// Every row is identical.
SoftPhocTensor encode_word(std::string_view transcription, std::size_t width, std::size_t height);

/// Column profile of encode_word as a width x 38 row-major vector.
std::vector<double> encode_word_profile(std::string_view transcription, std::size_t width);

struct CropSize {
    std::size_t width = 1;
    std::size_t height = 1;
};

/// Rounded mean side lengths, each >= 1, width >= character count.
CropSize crop_size_for(const WordAnnotation& word);

/// Scene-level Soft-PHOC: each word's crop annotation is warped back into the
/// image; pixels outside all words are background. Later words overwrite
/// earlier ones where they overlap.
SoftPhocTensor embed_scene(const SceneAnnotation& scene);

}  // namespace sphoc
