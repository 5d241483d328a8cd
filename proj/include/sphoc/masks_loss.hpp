#pragma once

#include "sphoc/annotation.hpp"
#include "sphoc/tensor.hpp"

namespace sphoc {

struct MaskTriple {
    Mask non_text;          // complement of `text`
    Mask text;              // pixel centres inside some word quad
    Mask text_with_context; // word rectangles grown by half their size on each side
};

struct LossWeights {
    double background = 0.1;
    double text = 1.0;
    double classes = 2.5;
};

struct LossTerms {
    double background = 0.0;
    double text = 0.0;
    double classes = 0.0;
    double total = 0.0;
};

MaskTriple build_masks(const SceneAnnotation& scene);

/// Weighted sum of three masked losses: background and text binary
/// cross-entropies, and the 38-class divergence KL(gt || pred), which equals
/// cross-entropy for one-hot targets. Each term is a mean over its
/// mask (0 for an empty mask); log arguments are clamped at 1e-12.
/// Throws Error{ShapeMismatch} if any dimension disagrees.
LossTerms evaluate_loss(const SoftPhocTensor& pred, const SoftPhocTensor& gt,
                        const MaskTriple& masks, const LossWeights& weights = {});

}  // namespace sphoc
