#include "sphoc/encoder.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sphoc/error.hpp"

namespace sphoc {
namespace {

// round_half_up(bin * width / level) in exact integer arithmetic.
std::size_t bin_edge(std::size_t bin, std::size_t level, std::size_t width) {
    return (2 * bin * width + level) / (2 * level);
}

}  // namespace

CharRegion char_region_bounds(std::size_t position, std::size_t length, std::size_t level,
                              std::size_t width) {
    if (position < 1 || position > length || level < 1 || level > length || width < length)
        throw Error(ErrorCode::InvalidIndex,
                    "char_region_bounds(p=" + std::to_string(position) + ", n=" + std::to_string(length) +
                        ", L=" + std::to_string(level) + ", W=" + std::to_string(width) + ")");
    const std::size_t first_bin = level * (position - 1) / length;
    const std::size_t last_bin = (level * position + length - 1) / length;  // exclusive
    return {position, level, bin_edge(first_bin, level, width), bin_edge(last_bin, level, width)};
}

std::vector<double> encode_word_profile(std::string_view transcription, std::size_t width) {
    const std::vector<CharClassId> classes = transcription_to_classes(transcription);
    const std::size_t n = classes.size();
    if (width < n)
        throw Error(ErrorCode::CropTooNarrow,
                    "crop width " + std::to_string(width) + " < " + std::to_string(n) + " characters");

    std::vector<double> profile(width * kNumClasses, 0.0);
    for (std::size_t level = 1; level <= n; ++level)
        for (std::size_t p = 1; p <= n; ++p) {
            const CharRegion r = char_region_bounds(p, n, level, width);
            const std::size_t channel = classes[p - 1].index;
            for (std::size_t x = r.lower; x < r.upper; ++x) profile[x * kNumClasses + channel] += 1.0;
        }

    for (std::size_t x = 0; x < width; ++x) {
        double* column = profile.data() + x * kNumClasses;
        double sum = 0.0;
        for (std::size_t c = 1; c < kNumClasses; ++c) sum += column[c];
        for (std::size_t c = 1; c < kNumClasses; ++c) column[c] /= sum;
    }
    return profile;
}

SoftPhocTensor encode_word(std::string_view transcription, std::size_t width, std::size_t height) {
    if (height < 1) throw Error(ErrorCode::InvalidArgument, "crop height must be >= 1");
    const std::vector<double> profile = encode_word_profile(transcription, width);
    SoftPhocTensor out(height, width);
    auto data = out.data();
    for (std::size_t y = 0; y < height; ++y)
        std::copy(profile.begin(), profile.end(), data.begin() + static_cast<std::ptrdiff_t>(y * profile.size()));
    return out;
}

CropSize crop_size_for(const WordAnnotation& word) {
    const std::size_t n = decode_utf8(word.transcription).size();
    const SideLengths sides = mean_side_lengths(word.quad);
    const auto rounded = [](double v) { return static_cast<std::size_t>(std::max(1.0, std::floor(v + 0.5))); };
    return {std::max(rounded(sides.horizontal), n), rounded(sides.vertical)};
}

SoftPhocTensor embed_scene(const SceneAnnotation& scene) {
    if (scene.image_width <= 0 || scene.image_height <= 0)
        throw Error(ErrorCode::InvalidArgument, "image dimensions must be positive");
    const auto img_w = static_cast<std::size_t>(scene.image_width);
    const auto img_h = static_cast<std::size_t>(scene.image_height);

    SoftPhocTensor out(img_h, img_w);
    for (std::size_t y = 0; y < img_h; ++y)
        for (std::size_t x = 0; x < img_w; ++x) out.at(y, x, kBackground.index) = 1.0;

    for (const WordAnnotation& word : scene.words) {
        require_valid_quad(word.quad);
        const CropSize crop = crop_size_for(word);
        // Rows of a word annotation are identical, so only the column profile is sampled.
        const std::vector<double> profile = encode_word_profile(word.transcription, crop.width);
        const double cw = static_cast<double>(crop.width);
        const double ch = static_cast<double>(crop.height);
        const Quad crop_rect{Point{0, 0}, Point{cw, 0}, Point{cw, ch}, Point{0, ch}};
        const Homography to_crop = Homography::from_correspondences(word.quad, crop_rect);

        const Rect box = bounding_rect(word.quad);
        const auto x_begin = static_cast<std::size_t>(std::max(0.0, std::floor(box.x0)));
        const auto y_begin = static_cast<std::size_t>(std::max(0.0, std::floor(box.y0)));
        const auto x_end = std::min(img_w, static_cast<std::size_t>(std::max(0.0, std::ceil(box.x1))));
        const auto y_end = std::min(img_h, static_cast<std::size_t>(std::max(0.0, std::ceil(box.y1))));

        for (std::size_t y = y_begin; y < y_end; ++y)
            for (std::size_t x = x_begin; x < x_end; ++x) {
                const Point centre{static_cast<double>(x) + 0.5, static_cast<double>(y) + 0.5};
                if (!contains(word.quad, centre)) continue;
                const std::optional<Point> uv = to_crop.apply(centre);
                if (!uv) continue;
                // Crop pixel i covers [i, i+1); its centre is i + 0.5.
                const double fu = std::clamp(uv->x - 0.5, 0.0, cw - 1.0);
                const auto i0 = static_cast<std::size_t>(std::floor(fu));
                const std::size_t i1 = std::min(i0 + 1, crop.width - 1);
                const double frac = fu - static_cast<double>(i0);

                auto px = out.pixel(y, x);
                double sum = 0.0;
                for (std::size_t c = 1; c < kNumClasses; ++c) {
                    const double v = (1.0 - frac) * profile[i0 * kNumClasses + c] +
                                     frac * profile[i1 * kNumClasses + c];
                    px[c] = v;
                    sum += v;
                }
                px[kBackground.index] = 0.0;
                for (std::size_t c = 1; c < kNumClasses; ++c) px[c] /= sum;
            }
    }
    return out;
}

}  // namespace sphoc
