#include "sphoc/masks_loss.hpp"

#include <algorithm>
#include <cmath>

#include "sphoc/error.hpp"

namespace sphoc {
namespace {

constexpr double kLogFloor = 1e-12;

double neg_log(double p) { return -std::log(std::max(p, kLogFloor)); }

Point pixel_centre(std::size_t y, std::size_t x) {
    return {static_cast<double>(x) + 0.5, static_cast<double>(y) + 0.5};
}

}  // namespace

MaskTriple build_masks(const SceneAnnotation& scene) {
    const auto h = static_cast<std::size_t>(std::max(scene.image_height, 0));
    const auto w = static_cast<std::size_t>(std::max(scene.image_width, 0));
    MaskTriple masks{Mask(h, w, 1), Mask(h, w, 0), Mask(h, w, 0)};
    const Rect image{0.0, 0.0, static_cast<double>(w), static_cast<double>(h)};

    for (const WordAnnotation& word : scene.words) {
        const Rect box = bounding_rect(word.quad);
        const Rect grown = intersect(Rect{box.x0 - box.width() / 2, box.y0 - box.height() / 2,
                                          box.x1 + box.width() / 2, box.y1 + box.height() / 2},
                                     image);
        const auto y0 = static_cast<std::size_t>(std::max(0.0, std::floor(grown.y0)));
        const auto x0 = static_cast<std::size_t>(std::max(0.0, std::floor(grown.x0)));
        const auto y1 = std::min(h, static_cast<std::size_t>(std::max(0.0, std::ceil(grown.y1))));
        const auto x1 = std::min(w, static_cast<std::size_t>(std::max(0.0, std::ceil(grown.x1))));
        for (std::size_t y = y0; y < y1; ++y)
            for (std::size_t x = x0; x < x1; ++x) {
                const Point p = pixel_centre(y, x);
                const bool in_word = contains(word.quad, p);
                if (in_word) {
                    masks.text(y, x) = 1;
                    masks.non_text(y, x) = 0;
                }
                if (in_word || grown.contains(p)) masks.text_with_context(y, x) = 1;
            }
    }
    return masks;
}

LossTerms evaluate_loss(const SoftPhocTensor& pred, const SoftPhocTensor& gt, const MaskTriple& masks,
                        const LossWeights& weights) {
    const std::size_t h = pred.height();
    const std::size_t w = pred.width();
    const auto same = [&](std::size_t hh, std::size_t ww) { return hh == h && ww == w; };
    if (!same(gt.height(), gt.width()) || !same(masks.non_text.height(), masks.non_text.width()) ||
        !same(masks.text.height(), masks.text.width()) ||
        !same(masks.text_with_context.height(), masks.text_with_context.width()))
        throw Error(ErrorCode::ShapeMismatch, "prediction, ground truth and masks must share dimensions");

    double sum_bg = 0.0, sum_text = 0.0, sum_cls = 0.0;
    std::size_t n_bg = 0, n_text = 0, n_cls = 0;
    for (std::size_t y = 0; y < h; ++y)
        for (std::size_t x = 0; x < w; ++x) {
            const auto p = pred.pixel(y, x);
            if (masks.non_text(y, x)) {
                sum_bg += neg_log(p[kBackground.index]);
                ++n_bg;
            }
            if (masks.text(y, x)) {
                // Character mass of a distribution, taken as the complement so a
                // pure-text pixel scores exactly 0 instead of a 37-term rounding residue.
                sum_text += neg_log(1.0 - p[kBackground.index]);
                ++n_text;
            }
            if (masks.text_with_context(y, x)) {
                const auto g = gt.pixel(y, x);
                // Cross-entropy minus the target's entropy, so a soft target scores 0 against itself.
                double divergence = 0.0;
                for (std::size_t c = 0; c < kNumClasses; ++c)
                    if (g[c] > 0.0) divergence += g[c] * (neg_log(p[c]) - neg_log(g[c]));
                sum_cls += std::max(divergence, 0.0);
                ++n_cls;
            }
        }

    LossTerms terms;
    terms.background = n_bg ? sum_bg / static_cast<double>(n_bg) : 0.0;
    terms.text = n_text ? sum_text / static_cast<double>(n_text) : 0.0;
    terms.classes = n_cls ? sum_cls / static_cast<double>(n_cls) : 0.0;
    terms.total = weights.background * terms.background + weights.text * terms.text +
                  weights.classes * terms.classes;
    return terms;
}

}  // namespace sphoc
